"""
fracsinc - Preparacao do lado direito

Dois caminhos para os coeficientes sinc de f:
- direto: f_k = f(x_k) em Omega_N
- mollificado: f_k = (eta_eps * f_rho)(x_k), com f_rho uma extensao de f
  para Omega_rho (default: ponto mais proximo de Omega)

Mollifier eta = psi * chi_cube:
- psi(x) = exp(-1 / (1 - |x/r|^2)) para |x| < r = sqrt(d)/4, zero fora
- chi_cube = indicadora de (-1/2, 1/2)^d
- tabulado pela regra do ponto medio com espacamento eps/q e normalizado
  para integral 1; suporte dentro de B_{sqrt(d) eps}
- o fator sinc do cubo zera a transformada em 2 pi k, k != 0
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.signal import convolve

from .errors import (
    ExtensionError,
    InvalidParameterError,
    MollifierError,
    NonFiniteValueError,
)
from .lattice import DomainMask, DomainShape, enlarge_shape
from .operator import CoefficientField

logger = logging.getLogger(__name__)

ScalarField = Callable[[np.ndarray], np.ndarray]

# ============ CONSTANTES ============

DEFAULT_Q = 8
MIN_Q = 4
MAX_EPSILON = 0.25
POINT_EVAL_WINDOW = 64
SAMPLE_CHUNK = 2048


# ============ FUNCOES EMBUTIDAS ============

def _one(x: np.ndarray) -> np.ndarray:
    return np.ones(x.shape[0])


def _linear_x1(x: np.ndarray) -> np.ndarray:
    return x[:, 0].astype(float)


def _holder_half(x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.abs(x[:, 0] - 0.5))


def _smooth(x: np.ndarray) -> np.ndarray:
    return np.prod(np.cos(np.pi * (x - 0.5)), axis=1)


BUILTIN_RHS: Dict[str, ScalarField] = {
    "one": _one,
    "linear-x1": _linear_x1,
    "holder-half": _holder_half,
    "smooth": _smooth,
}


def builtin_rhs(name: str) -> ScalarField:
    try:
        return BUILTIN_RHS[name]
    except KeyError:
        raise InvalidParameterError(f"lado direito desconhecido: {name!r} (opcoes: {sorted(BUILTIN_RHS)})") from None


def _evaluate(f: ScalarField, pts: np.ndarray) -> np.ndarray:
    values = np.asarray(f(pts), dtype=float).reshape(-1)
    if values.shape[0] != pts.shape[0]:
        raise InvalidParameterError(f"callback retornou {values.shape[0]} valores para {pts.shape[0]} pontos")
    return values


def _check_finite(values: np.ndarray, indices: np.ndarray):
    bad = np.flatnonzero(~np.isfinite(values))
    if len(bad):
        raise NonFiniteValueError(tuple(int(i) for i in indices[bad[0]]))


# ============ AMOSTRAGEM DIRETA ============

def sample_direct(f: ScalarField, mask: DomainMask) -> CoefficientField:
    """f_k = f(x_k) para k em Omega_N, zero fora."""
    indices = mask.indices()
    values = _evaluate(f, indices / mask.lattice.n)
    _check_finite(values, indices)
    out = np.zeros(mask.lattice.shape)
    out[tuple(indices.T)] = values
    return CoefficientField(mask.lattice, out)


# ============ MOLLIFIER ============

@dataclass(frozen=True)
class MollifierSpec:
    epsilon: float
    q: int = DEFAULT_Q

    def __post_init__(self):
        if not math.isfinite(self.epsilon) or self.epsilon <= 0:
            raise InvalidParameterError(f"epsilon deve ser > 0 (recebido {self.epsilon})")
        if self.epsilon > MAX_EPSILON:
            raise InvalidParameterError(f"epsilon deve ser <= {MAX_EPSILON} (recebido {self.epsilon})")
        if self.q < MIN_Q or self.q % 2:
            raise InvalidParameterError(f"q deve ser par e >= {MIN_Q} (recebido {self.q})")


@dataclass(frozen=True, eq=False)
class TabulatedMollifier:
    """eta_eps tabulado numa grade tensorial de espacamento eps/q."""

    d: int
    epsilon: float
    q: int
    axis: np.ndarray
    grid: np.ndarray
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def support_radius(self) -> float:
        return math.sqrt(self.d) * self.epsilon

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """eta_eps(x) por interpolacao multilinear; zero fora de B_{sqrt(d) eps}."""
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        interp = RegularGridInterpolator([self.axis] * self.d, self.grid, bounds_error=False, fill_value=0.0)
        values = np.maximum(interp(pts), 0.0)
        values[np.linalg.norm(pts, axis=1) > self.support_radius] = 0.0
        return values


def _bump(points: np.ndarray, radius: float) -> np.ndarray:
    r2 = np.sum(points ** 2, axis=-1) / radius ** 2
    out = np.zeros(r2.shape)
    inside = r2 < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - r2[inside]))
    return out


def build_mollifier(spec: MollifierSpec, d: int) -> TabulatedMollifier:
    """
    Tabula eta_eps = eps^-d eta(./eps).

    A convolucao psi * chi e feita na grade de referencia (espacamento 1/q)
    por soma direta, o que mantem eta >= 0 e zero exato fora do suporte.

    Raises:
        MollifierError: tabulacao sem massa (integral numerica nula)
    """
    step = 1.0 / spec.q
    radius = math.sqrt(d) / 4.0
    reach = 0.5 + radius
    half_count = math.ceil(reach * spec.q)
    ref_axis = np.arange(-half_count, half_count + 1) * step

    grids = np.meshgrid(*([ref_axis] * d), indexing="ij")
    psi = _bump(np.stack(grids, axis=-1), radius)

    # indicadora do cubo com peso 1/2 nos nos sobre as faces
    cube_axis = np.ones(spec.q + 1)
    cube_axis[0] = cube_axis[-1] = 0.5
    chi = cube_axis
    for _ in range(d - 1):
        chi = np.multiply.outer(chi, cube_axis)

    eta = convolve(psi, chi, mode="same", method="direct") * step ** d
    eta = np.maximum(eta, 0.0)
    mass = float(eta.sum() * step ** d)
    if not math.isfinite(mass) or mass <= 1e-14:
        raise MollifierError(f"mollifier sem massa (q={spec.q}, d={d})")
    eta /= mass

    weights_grid = eta * step ** d
    positive = weights_grid > 0
    offsets = np.stack(grids, axis=-1)[positive] * spec.epsilon
    return TabulatedMollifier(
        d=d,
        epsilon=spec.epsilon,
        q=spec.q,
        axis=ref_axis * spec.epsilon,
        grid=eta / spec.epsilon ** d,
        nodes=offsets,
        weights=weights_grid[positive],
    )


def mollifier_spectrum(mollifier: TabulatedMollifier, omegas: np.ndarray) -> np.ndarray:
    """Transformada discreta sum_p w_p exp(-i w.y_p) nas frequencias (K, d)."""
    omegas = np.atleast_2d(np.asarray(omegas, dtype=float))
    phases = omegas @ mollifier.nodes.T
    return np.exp(-1j * phases) @ mollifier.weights


def mollify_sample(
    f: ScalarField,
    shape: DomainShape,
    mask: DomainMask,
    epsilon: float,
    rho: float,
    q: int = DEFAULT_Q,
    extension: Optional[ScalarField] = None,
) -> CoefficientField:
    """
    f_k = sum_p w_p f_rho(x_k - y_p) para k em Omega_N.

    Args:
        f: funcao em Omega (usada pela extensao por ponto mais proximo)
        shape: dominio Omega
        mask: Omega_N
        epsilon: escala do mollifier
        rho: raio do dominio aumentado onde f_rho esta definida
        q: refinamento da tabulacao (par, >= 4)
        extension: f_rho explicita; None usa ponto mais proximo

    Raises:
        ExtensionError: algum no de quadratura sai de Omega_rho
        BoundingBoxError: Omega_rho sai da caixa unitaria
    """
    mollifier = build_mollifier(MollifierSpec(epsilon, q), mask.lattice.d)
    region = enlarge_shape(shape, rho)
    indices = mask.indices()
    points = indices / mask.lattice.n
    d = mask.lattice.d
    values = np.empty(len(points))

    for start in range(0, len(points), SAMPLE_CHUNK):
        block = points[start:start + SAMPLE_CHUNK]
        quad = (block[:, None, :] - mollifier.nodes[None, :, :]).reshape(-1, d)
        if not np.all(region.contains(quad)):
            raise ExtensionError()
        if extension is None:
            f_rho = _evaluate(f, shape.project(quad))
        else:
            f_rho = _evaluate(extension, quad)
        values[start:start + len(block)] = f_rho.reshape(len(block), -1) @ mollifier.weights

    _check_finite(values, indices)
    out = np.zeros(mask.lattice.shape)
    out[tuple(indices.T)] = values
    logger.debug(f"Amostragem mollificada: eps={epsilon:.4g} rho={rho:.4g} q={q} nos={len(mollifier.weights)}")
    return CoefficientField(mask.lattice, out)


# ============ ESPECIFICACAO DO LADO DIREITO ============

@dataclass(frozen=True)
class RhsSpec:
    """
    f com modo de amostragem.

    epsilon/rho None usam os defaults eps = h e rho = sqrt(d) h na resolucao
    em que o lado direito e preparado.
    """

    f: ScalarField
    mode: str = "direct"
    epsilon: Optional[float] = None
    rho: Optional[float] = None
    q: int = DEFAULT_Q
    extension: Optional[ScalarField] = None

    def __post_init__(self):
        if self.mode not in ("direct", "mollified"):
            raise InvalidParameterError(f"modo de amostragem desconhecido: {self.mode!r}")


def prepare_rhs(spec: RhsSpec, shape: DomainShape, mask: DomainMask) -> CoefficientField:
    if spec.mode == "direct":
        return sample_direct(spec.f, mask)
    h = mask.lattice.h
    epsilon = h if spec.epsilon is None else spec.epsilon
    rho = math.sqrt(mask.lattice.d) * h if spec.rho is None else spec.rho
    return mollify_sample(spec.f, shape, mask, epsilon, rho, spec.q, spec.extension)


# ============ INTERPOLACAO SINC ============

def sinc_interpolate(samples: CoefficientField) -> CoefficientField:
    """Coeficientes do interpolante sinc: os proprios valores nodais."""
    return CoefficientField(samples.lattice, samples.data.copy())


def point_eval(
    v: CoefficientField,
    x,
    window: int = POINT_EVAL_WINDOW,
    with_bound: bool = False,
) -> Union[float, Tuple[float, float]]:
    """
    Avalia sum_k v_k prod_i sinc(N x_i - k_i) truncando |N x_i - k_i| > window.

    with_bound=True devolve tambem a soma absoluta dos termos descartados.
    """
    lattice = v.lattice
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != lattice.d:
        raise InvalidParameterError(f"x deve ter {lattice.d} coordenadas")
    if window < 1:
        raise InvalidParameterError("window deve ser >= 1")

    k = np.arange(lattice.n)
    kept = v.data
    absolute = np.abs(v.data)
    kept_abs = np.abs(v.data)
    for xi in x:
        t = lattice.n * xi - k
        weights = np.sinc(t)
        inside = np.abs(t) <= window
        kept = np.tensordot(weights * inside, kept, axes=([0], [0]))
        absolute = np.tensordot(np.abs(weights), absolute, axes=([0], [0]))
        kept_abs = np.tensordot(np.abs(weights) * inside, kept_abs, axes=([0], [0]))
    value = float(kept)
    if with_bound:
        return value, max(float(absolute) - float(kept_abs), 0.0)
    return value
