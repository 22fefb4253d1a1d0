"""
fracsinc - Montagem do kernel via DFT

Calcula todas as entradas Phi(m), m em {0..N-1}^d, de uma vez:

1. Trapezio periodico do simbolo |w|^{2s} numa grade fina de M = oversample*2N
   pontos por eixo em [-pi, pi). Como o simbolo e par, o somatorio vira uma
   DCT-I sobre o octante [0, pi]^d (scipy.fft.dctn).
2. Correcao do no singular: o pico |w|^{2s} na origem gera o erro
   delta^{d+2s} Z_d(-2s) + delta^{d+2s+2} (-|m|^2 / 2d) Z_d(-2s-2),
   com Z_d a funcao zeta de Epstein da rede Z^d (continuacao analitica via
   separacao de Ewald com gamma incompleta).
3. Correcao de faces (Euler-Maclaurin): a extensao periodica do simbolo tem
   quina em w_i = +-pi; os termos delta^2 e delta^4 sao integrais de face em
   d-1 dimensoes, calculadas pelo mesmo trapezio.

Depois da montagem algumas entradas sao conferidas contra o oraculo; desvios
acima de 1e-6 Phi(0) viram avisos no metadata do kernel.
"""

import logging
import math
from functools import reduce
from typing import List, Optional, Sequence

import numpy as np
from scipy import fft as sp_fft
from scipy.special import gamma, gammaincc

from ..config import FFT_WORKERS, KERNEL_MEMORY_CAP
from ..errors import InvalidParameterError, KernelTooLargeError, OracleQuadratureError
from ..lattice import MIN_POINTS_PER_AXIS
from .base import SpectralKernel, canonical_octant, check_dimension, check_order
from .oracle import MAX_ABS_INDEX, kernel_entry_oracle

logger = logging.getLogger(__name__)

# ============ CONSTANTES ============

DEFAULT_OVERSAMPLE = 16
# em d=3 a grade fina com 16 passa de 2 GiB ja em N=32
DEFAULT_OVERSAMPLE_3D = 8
MIN_OVERSAMPLE = 4
EWALD_TERMS = 6
SPOT_CHECK_TOL = 1e-6
SPOT_CHECK_ORACLE_TOL = 1e-10
# arrays de float64 vivos ao mesmo tempo durante a DCT
WORKING_ARRAYS = 4


# ============ ZETA DE EPSTEIN ============

def _upper_gamma(a: float, x: np.ndarray) -> np.ndarray:
    """Gamma incompleta superior nao normalizada, tambem para a < 0 (a nao inteiro)."""
    if a > 0:
        return gammaincc(a, x) * gamma(a)
    return (_upper_gamma(a + 1.0, x) - x ** a * np.exp(-x)) / a


def lattice_zeta(d: int, sigma: float, terms: int = EWALD_TERMS) -> float:
    """
    Z_d(sigma) = sum_{k em Z^d, k != 0} |k|^{-sigma}, continuada analiticamente.

    Usa a separacao de Ewald na rede auto-dual Z^d:
        pi^{-sigma/2} Gamma(sigma/2) Z = -2/sigma + 2/(sigma-d)
            + sum' [Gamma(sigma/2, pi|k|^2)(pi|k|^2)^{-sigma/2}
                    + Gamma((d-sigma)/2, pi|k|^2)(pi|k|^2)^{-(d-sigma)/2}]
    """
    axis = np.arange(-terms, terms + 1, dtype=float)
    k2 = reduce(np.add.outer, [axis ** 2] * d).ravel()
    x = math.pi * k2[k2 > 0]
    a = sigma / 2.0
    b = (d - sigma) / 2.0
    series = np.sum(_upper_gamma(a, x) * x ** (-a) + _upper_gamma(b, x) * x ** (-b))
    total = -2.0 / sigma + 2.0 / (sigma - d) + series
    return float(total * math.pi ** a / gamma(a))


# ============ CORRECOES ============

def _octant_frequencies(m_grid: int, count: int) -> np.ndarray:
    return 2.0 * math.pi / m_grid * np.arange(count)


def _face_integral(samples: np.ndarray, m_grid: int, n: int) -> np.ndarray:
    """int_{[-pi,pi]^{d-1}} h(w') e^{i w'.m'} dw' para m' em {0..N-1}^{d-1} (h par)."""
    if samples.ndim == 0:
        return samples
    dims = samples.ndim
    trap = sp_fft.dctn(samples, type=1, workers=FFT_WORKERS) / m_grid ** dims
    return (2.0 * math.pi) ** dims * trap[(slice(0, n),) * dims]


def _face_correction(d: int, n: int, s: float, m_grid: int) -> np.ndarray:
    delta = 2.0 * math.pi / m_grid
    w = _octant_frequencies(m_grid, m_grid // 2 + 1)
    if d == 1:
        u = np.asarray(math.pi ** 2)
    else:
        u = math.pi ** 2 + reduce(np.add.outer, [w ** 2] * (d - 1))
    dg = 2.0 * s * math.pi * u ** (s - 1.0)
    d3g = 12.0 * s * (s - 1.0) * math.pi * u ** (s - 2.0) + 8.0 * s * (s - 1.0) * (s - 2.0) * math.pi ** 3 * u ** (s - 3.0)
    j1 = _face_integral(dg, m_grid, n)
    j3 = _face_integral(d3g, m_grid, n)

    m = np.arange(n, dtype=float)
    sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    correction = np.zeros((n,) * d)
    for axis in range(d):
        shape = [1] * d
        shape[axis] = n
        sign_i = sign.reshape(shape)
        m2_i = (m ** 2).reshape(shape)
        j1_i = np.expand_dims(j1, axis) if d > 1 else j1
        j3_i = np.expand_dims(j3, axis) if d > 1 else j3
        correction = correction + 2.0 * sign_i * (
            delta ** 2 / 12.0 * j1_i - delta ** 4 / 720.0 * (j3_i - 3.0 * m2_i * j1_i)
        )
    return correction


def _singular_correction(d: int, n: int, s: float, m_grid: int) -> np.ndarray:
    delta = 2.0 * math.pi / m_grid
    m = np.arange(n, dtype=float)
    m2 = reduce(np.add.outer, [m ** 2] * d)
    lead = delta ** (d + 2 * s) * lattice_zeta(d, -2.0 * s)
    second = delta ** (d + 2 * s + 2) * lattice_zeta(d, -2.0 * s - 2.0) / (2.0 * d)
    return lead - second * m2


# ============ MONTAGEM ============

def default_oversample(d: int) -> int:
    return DEFAULT_OVERSAMPLE_3D if d == 3 else DEFAULT_OVERSAMPLE


def estimate_assembly_bytes(d: int, n: int, oversample: int) -> int:
    half = oversample * n
    return WORKING_ARRAYS * 8 * (half + 1) ** d


def _spot_check(kernel_values: np.ndarray, d: int, n: int, s: float, oracle_cache=None) -> List[str]:
    indices: List[Sequence[int]] = [(0,) * d, (1,) + (0,) * (d - 1)]
    if d <= 2:
        indices.append((min(n - 1, MAX_ABS_INDEX),) + (0,) * (d - 1))
    warnings = []
    phi0 = abs(float(kernel_values[(0,) * d]))
    for m in indices:
        try:
            ref = kernel_entry_oracle(d, s, m, tol=SPOT_CHECK_ORACLE_TOL, cache=oracle_cache)
        except OracleQuadratureError as e:
            warnings.append(f"spot-check {tuple(m)}: oraculo falhou ({e})")
            continue
        dev = abs(float(kernel_values[tuple(m)]) - ref)
        if dev > SPOT_CHECK_TOL * max(abs(ref), phi0):
            warnings.append(f"spot-check {tuple(m)}: desvio {dev:.2e} acima do alvo; aumente oversample")
    return warnings


def assemble_kernel(
    d: int,
    n: int,
    s: float,
    oversample: Optional[int] = None,
    memory_cap: Optional[int] = None,
    spot_check: bool = True,
    oracle_cache=None,
) -> SpectralKernel:
    """
    Monta Phi(m) para todo m em {0..N-1}^d.

    Args:
        d: dimensao (1, 2 ou 3)
        n: pontos por eixo (>= 4)
        s: ordem fracionaria em (0, 1)
        oversample: fator da grade fina (potencia de 2, >= 4; None usa default_oversample(d))
        memory_cap: limite em bytes (default FRACSINC_KERNEL_MEMORY_CAP)
        spot_check: confere algumas entradas contra o oraculo
        oracle_cache: cache diskcache opcional para o spot-check

    Raises:
        InvalidOrderError, InvalidParameterError, KernelTooLargeError
    """
    d = check_dimension(d)
    s = check_order(s)
    if n < MIN_POINTS_PER_AXIS:
        raise InvalidParameterError(f"N deve ser >= {MIN_POINTS_PER_AXIS} (recebido {n})")
    if oversample is None:
        oversample = default_oversample(d)
    if oversample < MIN_OVERSAMPLE or oversample & (oversample - 1):
        raise InvalidParameterError(f"oversample deve ser potencia de 2 >= {MIN_OVERSAMPLE} (recebido {oversample})")

    cap = KERNEL_MEMORY_CAP if memory_cap is None else memory_cap
    required = estimate_assembly_bytes(d, n, oversample)
    if required > cap:
        raise KernelTooLargeError(required, cap)

    m_grid = oversample * 2 * n
    w = _octant_frequencies(m_grid, m_grid // 2 + 1)
    symbol = reduce(np.add.outer, [w ** 2] * d) ** s
    trap = sp_fft.dctn(symbol, type=1, workers=FFT_WORKERS)[(slice(0, n),) * d] / float(m_grid) ** d
    del symbol

    corrections = _singular_correction(d, n, s, m_grid) + _face_correction(d, n, s, m_grid)
    values = canonical_octant(trap - corrections / (2.0 * math.pi) ** d)

    warnings = _spot_check(values, d, n, s, oracle_cache) if spot_check else []
    for message in warnings:
        logger.warning(f"Kernel d={d} N={n} s={s}: {message}")

    logger.info(f"Kernel montado: d={d} N={n} s={s} grade={m_grid}^{d} Phi(0)={values[(0,) * d]:.12f}")
    return SpectralKernel(
        d=d,
        n=n,
        s=s,
        values=values,
        oversample=oversample,
        metadata={"grid": m_grid, "warnings": warnings, "spot_checked": spot_check},
    )
