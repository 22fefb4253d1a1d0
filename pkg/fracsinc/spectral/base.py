"""
fracsinc - Kernel espectral: tipos base

Phi(m) = (2 pi)^-d * int_{[-pi,pi]^d} |w|^{2s} exp(i w.m) dw, m em Z^d.

O operador discreto na resolucao N e (Phi^N v)_j = N^{2s} sum_k Phi(j-k) v_k.
Phi e real, par em cada coordenada e invariante por permutacao de eixos,
entao so o octante nao negativo {0..N-1}^d e guardado.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence

import numpy as np
from scipy import fft as sp_fft

from ..config import FFT_WORKERS
from ..errors import InvalidOrderError, InvalidParameterError
from ..lattice import SUPPORTED_DIMS, Lattice


@dataclass(frozen=True)
class FracOrder:
    """Ordem fracionaria s, estritamente em (0, 1)."""

    s: float

    def __post_init__(self):
        s = float(self.s)
        if not math.isfinite(s) or not 0.0 < s < 1.0:
            raise InvalidOrderError()
        object.__setattr__(self, "s", s)


def check_order(s: float) -> float:
    return FracOrder(s).s


def check_dimension(d: int) -> int:
    if d not in SUPPORTED_DIMS:
        raise InvalidParameterError(f"d deve ser 1, 2 ou 3 (recebido {d})")
    return int(d)


def canonical_octant(values: np.ndarray) -> np.ndarray:
    """Forca simetria exata por permutacao: cada entrada recebe o valor do indice ordenado."""
    d = values.ndim
    if d == 1:
        return values
    idx = np.indices(values.shape).reshape(d, -1)
    sorted_idx = np.sort(idx, axis=0)
    return values[tuple(sorted_idx)].reshape(values.shape)


@dataclass(frozen=True, eq=False)
class SpectralKernel:
    """
    Kernel montado para (d, N, s).

    values: octante Phi(m), m em {0..N-1}^d (somente leitura)
    padded_dft: DFT do mergulho circulante em {2N}^d, usado por apply_full
    metadata: oversample, avisos do spot-check contra o oraculo, etc.
    """

    d: int
    n: int
    s: float
    values: np.ndarray
    oversample: int
    metadata: Dict[str, Any] = field(default_factory=dict)
    padded_dft: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        check_dimension(self.d)
        check_order(self.s)
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.shape != (self.n,) * self.d:
            raise InvalidParameterError(f"octante com shape {values.shape}, esperado {(self.n,) * self.d}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        dft = sp_fft.fftn(self.circulant_embedding(), workers=FFT_WORKERS)
        dft.setflags(write=False)
        object.__setattr__(self, "padded_dft", dft)

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.d, self.n)

    @property
    def scale(self) -> float:
        """Fator N^{2s} do operador discreto."""
        return float(self.n) ** (2.0 * self.s)

    def entry(self, m: Sequence[int]) -> float:
        idx = tuple(abs(int(v)) for v in np.atleast_1d(m))
        if len(idx) != self.d or max(idx) >= self.n:
            raise InvalidParameterError(f"indice {tuple(m)} fora de |m_i| <= N-1")
        return float(self.values[idx])

    def _axis_map(self, length: int, offset: int) -> np.ndarray:
        j = np.arange(length) - offset
        return np.abs(j)

    def full_array(self) -> np.ndarray:
        """Phi(m) para m em [-(N-1), N-1]^d, shape (2N-1,)*d."""
        axis = self._axis_map(2 * self.n - 1, self.n - 1)
        return self.values[np.ix_(*([axis] * self.d))]

    def circulant_embedding(self) -> np.ndarray:
        """Vetor gerador circulante em {2N}^d: posicao j guarda Phi(j) com j = -N zerado."""
        size = 2 * self.n
        j = np.arange(size)
        axis = np.minimum(j, size - j)
        keep = axis < self.n
        axis = np.where(keep, axis, 0)
        embedded = self.values[np.ix_(*([axis] * self.d))].copy()
        for dim in range(self.d):
            shape = [1] * self.d
            shape[dim] = size
            embedded *= keep.reshape(shape)
        return embedded
