"""
fracsinc - Operador discreto

(Phi^N v)_j = N^{2s} sum_k Phi(j-k) v_k   para j, k em {0..N-1}^d

Caminhos:
- apply_full: convolucao linear por FFT com zero padding em {2N}^d
- apply_masked: S Phi^N S^T (entradas fora de Omega_N zeradas antes e depois)
- apply_dense_oracle: matriz densa explicita, so para N^d <= 4096
- precond_apply / precond_forward: precondicionador periodico diagonal em Fourier
  com autovalores |2 pi kappa|^{2s} (frequencia zero trocada por (2 pi)^{2s})
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from scipy import fft as sp_fft

from .config import FFT_WORKERS
from .errors import (
    ConvolutionIntegrityError,
    InvalidParameterError,
    NonFiniteValueError,
    SizeGuardError,
)
from .lattice import DomainMask, Lattice
from .spectral import SpectralKernel, check_order

logger = logging.getLogger(__name__)

# ============ CONSTANTES ============

DENSE_APPLY_GUARD = 4096
INTEGRITY_TOL = 1e-10


# ============ CAMPOS ============

@dataclass(frozen=True, eq=False)
class CoefficientField:
    """Valores reais indexados pela malha (coeficientes sinc = valores nodais)."""

    lattice: Lattice
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.shape != self.lattice.shape:
            raise InvalidParameterError(f"campo com shape {data.shape}, esperado {self.lattice.shape}")
        bad = np.argwhere(~np.isfinite(data))
        if len(bad):
            raise NonFiniteValueError(tuple(int(i) for i in bad[0]))
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, lattice: Lattice) -> "CoefficientField":
        return cls(lattice, np.zeros(lattice.shape))


FieldLike = Union[CoefficientField, np.ndarray]


def _data(v: FieldLike, shape) -> np.ndarray:
    arr = v.data if isinstance(v, CoefficientField) else np.asarray(v, dtype=np.float64)
    if arr.shape != tuple(shape):
        raise InvalidParameterError(f"campo com shape {arr.shape}, esperado {tuple(shape)}")
    return arr


# ============ APLICACAO ============

def convolve(kernel: SpectralKernel, v: np.ndarray) -> np.ndarray:
    """Phi^N v sobre arrays crus (caminho interno do solver)."""
    n, d = kernel.n, kernel.d
    window = (slice(0, n),) * d
    padded = np.zeros((2 * n,) * d)
    padded[window] = v
    spectrum = sp_fft.fftn(padded, workers=FFT_WORKERS) * kernel.padded_dft
    w = sp_fft.ifftn(spectrum, workers=FFT_WORKERS)[window]
    residue = float(np.max(np.abs(w.imag))) if w.size else 0.0
    reference = max(float(np.max(np.abs(w.real))), float(np.max(np.abs(v))) * abs(kernel.values.flat[0]))
    if residue > INTEGRITY_TOL * reference:
        raise ConvolutionIntegrityError(residue)
    return kernel.scale * w.real


def apply_full(kernel: SpectralKernel, v: FieldLike) -> CoefficientField:
    """Phi^N v em toda a malha via FFT."""
    data = _data(v, kernel.lattice.shape)
    return CoefficientField(kernel.lattice, convolve(kernel, data))


def apply_masked(kernel: SpectralKernel, mask: DomainMask, v: FieldLike) -> CoefficientField:
    """S Phi^N S^T v: entradas fora de Omega_N sao ignoradas na entrada e zeradas na saida."""
    if mask.lattice != kernel.lattice:
        raise InvalidParameterError("mascara e kernel em malhas diferentes")
    data = _data(v, kernel.lattice.shape)
    inside = mask.inside
    return CoefficientField(kernel.lattice, inside * convolve(kernel, inside * data))


def dense_matrix(kernel: SpectralKernel, indices: np.ndarray) -> np.ndarray:
    """A[a, b] = N^{2s} Phi(k_a - k_b) para os multi-indices dados (P, d)."""
    indices = np.asarray(indices, dtype=int)
    offsets = tuple(np.abs(np.subtract.outer(indices[:, i], indices[:, i])) for i in range(kernel.d))
    return kernel.scale * kernel.values[offsets]


def apply_dense_oracle(
    kernel: SpectralKernel,
    v: FieldLike,
    mask: Optional[DomainMask] = None,
) -> CoefficientField:
    """Aplicacao por soma explicita; referencia para o caminho FFT."""
    lattice = kernel.lattice
    if lattice.size > DENSE_APPLY_GUARD:
        raise SizeGuardError(f"N^d = {lattice.size} acima do limite {DENSE_APPLY_GUARD} do caminho denso")
    data = _data(v, lattice.shape)
    if mask is None:
        indices = np.argwhere(np.ones(lattice.shape, dtype=bool))
    else:
        indices = mask.indices()
    picked = tuple(indices.T)
    out = np.zeros(lattice.shape)
    out[picked] = dense_matrix(kernel, indices) @ data[picked]
    return CoefficientField(lattice, out)


# ============ PRECONDICIONADOR ============

@lru_cache(maxsize=32)
def periodic_symbol(d: int, n: int, s: float) -> np.ndarray:
    """Autovalores |2 pi kappa|^{2s} do operador periodico; kappa = 0 recebe (2 pi)^{2s}."""
    kappa = sp_fft.fftfreq(n, d=1.0 / n)
    k2 = np.zeros((n,) * d)
    for axis in range(d):
        shape = [1] * d
        shape[axis] = n
        k2 = k2 + (kappa ** 2).reshape(shape)
    lam = (2.0 * math.pi) ** (2.0 * s) * k2 ** s
    lam[(0,) * d] = (2.0 * math.pi) ** (2.0 * s)
    lam.setflags(write=False)
    return lam


def precond_apply(lattice: Lattice, s: float, r: FieldLike) -> CoefficientField:
    """z = P^{-1} r."""
    s = check_order(s)
    data = _data(r, lattice.shape)
    lam = periodic_symbol(lattice.d, lattice.n, s)
    z = sp_fft.ifftn(sp_fft.fftn(data, workers=FFT_WORKERS) / lam, workers=FFT_WORKERS).real
    return CoefficientField(lattice, z)


def precond_forward(lattice: Lattice, s: float, z: FieldLike) -> CoefficientField:
    """r = P z (inverso de precond_apply)."""
    s = check_order(s)
    data = _data(z, lattice.shape)
    lam = periodic_symbol(lattice.d, lattice.n, s)
    r = sp_fft.ifftn(sp_fft.fftn(data, workers=FFT_WORKERS) * lam, workers=FFT_WORKERS).real
    return CoefficientField(lattice, r)


# ============ OPERADOR MASCARADO ============

@dataclass(frozen=True, eq=False)
class MaskedOperator:
    """Par (kernel, mascara) usado pelo solver."""

    kernel: SpectralKernel
    mask: DomainMask

    def __post_init__(self):
        if self.mask.lattice != self.kernel.lattice:
            raise InvalidParameterError("mascara e kernel em malhas diferentes")

    @property
    def lattice(self) -> Lattice:
        return self.kernel.lattice

    def apply(self, x: np.ndarray) -> np.ndarray:
        inside = self.mask.inside
        return inside * convolve(self.kernel, inside * x)

    def precondition(self, r: np.ndarray) -> np.ndarray:
        inside = self.mask.inside
        return inside * precond_apply(self.lattice, self.kernel.s, inside * r).data

    def dense(self) -> np.ndarray:
        return dense_matrix(self.kernel, self.mask.indices())
