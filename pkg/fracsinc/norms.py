"""
fracsinc - Normas e analise de erro

Formulas:
    ||v||_{L2}  = N^{-d/2} ||v||_2                 (exata em V_h)
    ||v||_H^s   = sqrt(N^{-d} v . Phi^N v)         (seminorma de energia em V_h)
    decay_ratio = max_{k na camada de fronteira} |u_h(x_k)| / h^s

Desigualdade inversa em V_h: ||v||_H^s <= (sqrt(d) N pi)^s ||v||_{L2}.

fit_rate ajusta log(erro) = log(C) + p log(h) por minimos quadrados, e tambem
a variante log(erro / |log h|), para taxas do tipo |log h| h^p.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from .errors import (
    InsufficientPointsError,
    InvalidErrorSequenceError,
    InvalidParameterError,
    KernelNotPSDError,
)
from .lattice import DomainMask
from .operator import CoefficientField, convolve
from .spectral import SpectralKernel, check_dimension, check_order, cosine_integral

logger = logging.getLogger(__name__)

# ============ CONSTANTES ============

PSD_CLAMP = 1e-12
MIN_FIT_POINTS = 3
GALERKIN_TOL = 1e-11

CSV_COLUMNS = ["N", "h", "l2", "linf", "energy", "decay_ratio"]


# ============ NORMAS ============

def discrete_l2(v: CoefficientField) -> float:
    lattice = v.lattice
    return float(lattice.n ** (-lattice.d / 2.0) * np.linalg.norm(v.data))


def energy_norm(kernel: SpectralKernel, v: CoefficientField) -> float:
    """
    sqrt(N^{-d} v . Phi^N v).

    Radicando em [-1e-12, 0) vira 0; abaixo disso o kernel nao e PSD.
    """
    if v.lattice != kernel.lattice:
        raise InvalidParameterError("campo e kernel em malhas diferentes")
    radicand = float(np.vdot(v.data, convolve(kernel, v.data))) / kernel.n ** kernel.d
    if radicand < -PSD_CLAMP:
        raise KernelNotPSDError(radicand)
    return math.sqrt(max(radicand, 0.0))


def inverse_estimate_constant(d: int, n: int, s: float) -> float:
    return (math.sqrt(d) * n * math.pi) ** s


# ============ RELATORIO DE ERRO ============

@dataclass
class ErrorReport:
    n: int
    h: float
    l2: float
    linf: float
    energy: float
    decay_ratio: float

    def to_row(self) -> List[str]:
        return [str(self.n)] + [f"{v:.17g}" for v in (self.h, self.l2, self.linf, self.energy, self.decay_ratio)]

    def to_dict(self) -> dict:
        return asdict(self)


Reference = Union[Callable[[np.ndarray], np.ndarray], CoefficientField]


def error_report(
    kernel: SpectralKernel,
    u_h: CoefficientField,
    u_exact: Reference,
    mask: DomainMask,
) -> ErrorReport:
    """
    Erros de u_h contra a referencia.

    u_exact pode ser um callback vetorizado (avaliado em Omega_N, zero fora)
    ou um CoefficientField na mesma malha (auto-convergencia).
    """
    lattice = kernel.lattice
    if u_h.lattice != lattice or mask.lattice != lattice:
        raise InvalidParameterError("campos, mascara e kernel em malhas diferentes")

    if isinstance(u_exact, CoefficientField):
        reference = u_exact.data
    else:
        indices = mask.indices()
        reference = np.zeros(lattice.shape)
        reference[tuple(indices.T)] = np.asarray(u_exact(indices / lattice.n), dtype=float).reshape(-1)
    err = CoefficientField(lattice, reference - u_h.data)

    layer = mask.boundary_layer()
    decay = float(np.max(np.abs(u_h.data[layer]))) / lattice.h ** kernel.s if layer.any() else 0.0
    return ErrorReport(
        n=lattice.n,
        h=lattice.h,
        l2=discrete_l2(err),
        linf=float(np.max(np.abs(err.data))),
        energy=energy_norm(kernel, err),
        decay_ratio=decay,
    )


# ============ TAXAS ============

@dataclass
class RateFit:
    """Ajuste log-log; log_rate/log_constant vem do ajuste com fator |log h|."""

    rate: float
    constant: float
    residual: float
    log_rate: float
    log_constant: float
    count: int

    def to_dict(self) -> dict:
        return asdict(self)


def fit_rate(points: Sequence[Tuple[float, float]]) -> RateFit:
    """
    Ajusta erro ~ C h^p.

    Args:
        points: pares (h, erro) com h estritamente decrescente

    Raises:
        InsufficientPointsError: menos de 3 pontos
        InvalidErrorSequenceError: erro nao positivo/finito ou h invalido
    """
    if len(points) < MIN_FIT_POINTS:
        raise InsufficientPointsError(len(points))
    h = np.array([p[0] for p in points], dtype=float)
    e = np.array([p[1] for p in points], dtype=float)
    if not (np.all(np.isfinite(h)) and np.all(np.isfinite(e))):
        raise InvalidErrorSequenceError()
    if np.any(e <= 0) or np.any(h <= 0) or np.any(h >= 1) or np.any(np.diff(h) >= 0):
        raise InvalidErrorSequenceError()

    log_h = np.log(h)
    slope, intercept = np.polyfit(log_h, np.log(e), 1)
    fitted = intercept + slope * log_h
    residual = float(np.sqrt(np.mean((np.log(e) - fitted) ** 2)))
    log_slope, log_intercept = np.polyfit(log_h, np.log(e / np.abs(log_h)), 1)
    return RateFit(
        rate=float(slope),
        constant=float(math.exp(intercept)),
        residual=residual,
        log_rate=float(log_slope),
        log_constant=float(math.exp(log_intercept)),
        count=len(points),
    )


# ============ FORMA BILINEAR DE GALERKIN ============

def galerkin_entry(
    d: int,
    n: int,
    s: float,
    k: Sequence[int],
    j: Sequence[int],
    tol: float = GALERKIN_TOL,
) -> float:
    """
    a(phi_k, phi_j) = (2 pi)^d int_{D_N} |w|^{2s} phi_k^(w) conj(phi_j^(w)) dw
    por quadratura direta no dominio de Fourier D_N = [-N pi, N pi]^d.

    Em V_h deve coincidir com N^{2s-d} Phi(k - j) (Galerkin = colocacao).
    """
    d = check_dimension(d)
    s = check_order(s)
    m = np.abs(np.asarray(k, dtype=int) - np.asarray(j, dtype=int))
    if m.shape != (d,):
        raise InvalidParameterError(f"k e j devem ter {d} componentes")
    half_width = n * math.pi
    integral, _ = cosine_integral(s, m / n, half_width, tol)
    return (2.0 * math.pi) ** d * (2.0 * n * math.pi) ** (-2 * d) * 2 ** d * integral
