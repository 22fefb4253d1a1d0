"""
fracsinc - Oraculo de entradas do kernel

Avalia Phi(m) isoladamente por quadratura adaptativa, sem passar pela
montagem via DFT. Serve de referencia para validar a montagem.

Reducao por produto de cossenos (Phi e par em cada eixo):

    Phi(m) = pi^-d * int_{[0,pi]^d} |w|^{2s} prod_i cos(m_i w_i) dw

Quadratura:
- paineis tensoriais de Gauss-Legendre (GAUSS_ORDER pontos por eixo)
- grade inicial com >= 4 paineis por periodo de oscilacao em cada eixo
- refinamento por bisseccao: aceita o painel quando a regra nos 2^d filhos
  concorda com a regra no pai dentro da tolerancia do painel
- o pico de |w|^{2s} na origem e resolvido pelo refinamento geometrico
  do painel do canto

Cache opcional em diskcache (mesmo padrao de backend com fallback do
cache de queries), chaveado por (d, s, |m| ordenado, tol).
"""

import itertools
import logging
import math
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.special import roots_legendre

from ..config import ORACLE_CACHE_DIR, ORACLE_CACHE_SIZE_LIMIT
from ..errors import InvalidParameterError, OracleQuadratureError
from .base import check_dimension, check_order

logger = logging.getLogger(__name__)

# ============ CONSTANTES ============

GAUSS_ORDER = 8
PANELS_PER_PERIOD = 4
MIN_PANELS_PER_AXIS = 2
MAX_PANELS = 400_000
BATCH_PANELS = 4096
MAX_ABS_INDEX = 4096
TOL_RANGE = (1e-12, 1e-4)


# ============ REGRA TENSORIAL ============

@lru_cache(maxsize=16)
def _reference_rule(d: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nos (order^d, d) e pesos (order^d,) em [-1,1]^d."""
    x, w = roots_legendre(order)
    grids = np.meshgrid(*([x] * d), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    wgrids = np.meshgrid(*([w] * d), indexing="ij")
    weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=-1), axis=-1)
    return nodes, weights


def _symbol_times_cosines(s: float, k: np.ndarray):
    def integrand(w: np.ndarray) -> np.ndarray:
        r2 = np.sum(w * w, axis=-1)
        return r2 ** s * np.prod(np.cos(w * k), axis=-1)

    return integrand


def _apply_rule(f, lo: np.ndarray, hi: np.ndarray, order: int) -> np.ndarray:
    nodes, weights = _reference_rule(lo.shape[1], order)
    out = np.empty(len(lo))
    for start in range(0, len(lo), BATCH_PANELS):
        stop = start + BATCH_PANELS
        half = (hi[start:stop] - lo[start:stop]) / 2
        mid = (hi[start:stop] + lo[start:stop]) / 2
        pts = mid[:, None, :] + half[:, None, :] * nodes[None, :, :]
        out[start:stop] = np.prod(half, axis=1) * (f(pts) @ weights)
    return out


def _split(lo: np.ndarray, hi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    d = lo.shape[1]
    mid = (lo + hi) / 2
    corners = np.array(list(itertools.product((0, 1), repeat=d)))[None, :, :]
    child_lo = np.where(corners == 0, lo[:, None, :], mid[:, None, :])
    child_hi = np.where(corners == 0, mid[:, None, :], hi[:, None, :])
    return child_lo.reshape(-1, d), child_hi.reshape(-1, d)


def _initial_panels(k: np.ndarray, half_width: float) -> Tuple[np.ndarray, np.ndarray]:
    edges = []
    for ki in k:
        count = max(MIN_PANELS_PER_AXIS, math.ceil(PANELS_PER_PERIOD * half_width * abs(ki) / (2 * math.pi)))
        edges.append(np.linspace(0.0, half_width, count + 1))
    lo_axes = np.meshgrid(*[e[:-1] for e in edges], indexing="ij")
    hi_axes = np.meshgrid(*[e[1:] for e in edges], indexing="ij")
    lo = np.stack([g.ravel() for g in lo_axes], axis=-1)
    hi = np.stack([g.ravel() for g in hi_axes], axis=-1)
    return lo, hi


def cosine_integral(
    s: float,
    k: Sequence[float],
    half_width: float,
    tol: float,
    max_panels: int = MAX_PANELS,
) -> Tuple[float, float]:
    """
    int_{[0,a]^d} |w|^{2s} prod_i cos(k_i w_i) dw por paineis adaptativos.

    Args:
        s: ordem fracionaria
        k: numeros de onda por eixo (define d)
        half_width: a, lado do cubo de integracao
        tol: precisao relativa a escala int |w|^{2s}
        max_panels: orcamento de paineis avaliados

    Returns:
        (valor, estimativa de erro absoluto)

    Raises:
        OracleQuadratureError: orcamento esgotado antes da convergencia
    """
    k = np.abs(np.asarray(k, dtype=float))
    d = len(k)
    f = _symbol_times_cosines(s, k)

    whole_lo = np.zeros((1, d))
    whole_hi = np.full((1, d), half_width)
    scale = float(_apply_rule(_symbol_times_cosines(s, np.zeros(d)), whole_lo, whole_hi, 2 * GAUSS_ORDER)[0])
    volume = half_width ** d

    lo, hi = _initial_panels(k, half_width)
    initial = len(lo)
    coarse = _apply_rule(f, lo, hi, GAUSS_ORDER)
    level = np.zeros(len(lo), dtype=int)
    processed = initial
    accepted = []
    err_total = 0.0
    children = 2 ** d

    while len(lo):
        child_lo, child_hi = _split(lo, hi)
        child = _apply_rule(f, child_lo, child_hi, GAUSS_ORDER)
        processed += len(child_lo)
        fine = child.reshape(-1, children).sum(axis=1)
        err = np.abs(fine - coarse)
        share = np.prod(hi - lo, axis=1) / volume
        allowance = tol * scale * np.maximum(share, 0.5 ** (level + 1) / initial)
        ok = err <= allowance
        accepted.append(fine[ok])
        err_total += float(err[ok].sum())
        refine = ~ok
        if not refine.any():
            break
        if processed > max_panels:
            raise OracleQuadratureError(err_total + float(err[refine].sum()))
        keep = np.repeat(refine, children)
        lo, hi = child_lo[keep], child_hi[keep]
        coarse = child[keep]
        level = np.repeat(level[refine] + 1, children)

    value = math.fsum(np.concatenate(accepted).tolist())
    return value, err_total


# ============ CACHE ============

def open_oracle_cache(directory: Optional[Path] = None):
    """Abre cache diskcache para entradas do oraculo; None se indisponivel."""
    try:
        import diskcache
    except ImportError:
        logger.warning("diskcache nao disponivel; oraculo sem cache")
        return None
    path = Path(directory) if directory is not None else ORACLE_CACHE_DIR
    try:
        path.mkdir(parents=True, exist_ok=True)
        cache = diskcache.Cache(
            str(path),
            size_limit=ORACLE_CACHE_SIZE_LIMIT,
            eviction_policy="least-recently-used",
        )
    except Exception as e:
        logger.warning(f"Falha ao abrir cache do oraculo em {path}: {e}")
        return None
    logger.info(f"Cache do oraculo: diskcache em {path}")
    return cache


def _cache_key(d: int, s: float, m: Sequence[int], tol: float) -> str:
    canon = tuple(sorted(abs(int(v)) for v in m))
    return f"oracle:{d}:{s!r}:{canon}:{tol!r}"


# ============ ORACULO ============

def kernel_entry_oracle(
    d: int,
    s: float,
    m: Sequence[int],
    tol: float = 1e-10,
    cache=None,
    max_panels: int = MAX_PANELS,
) -> float:
    """
    Phi(m) por quadratura adaptativa independente.

    Args:
        d: dimensao (1, 2 ou 3)
        s: ordem fracionaria em (0, 1)
        m: multi-indice com |m_i| <= 4096
        tol: precisao relativa em [1e-12, 1e-4]
        cache: instancia diskcache opcional (open_oracle_cache)
        max_panels: orcamento de paineis

    Raises:
        InvalidOrderError, InvalidParameterError, OracleQuadratureError
    """
    d = check_dimension(d)
    s = check_order(s)
    m = [int(v) for v in np.atleast_1d(m)]
    if len(m) != d:
        raise InvalidParameterError(f"m deve ter {d} componentes (recebido {len(m)})")
    if max(abs(v) for v in m) > MAX_ABS_INDEX:
        raise InvalidParameterError(f"|m_i| deve ser <= {MAX_ABS_INDEX}")
    if not TOL_RANGE[0] <= tol <= TOL_RANGE[1]:
        raise InvalidParameterError(f"tol deve estar em {TOL_RANGE} (recebido {tol})")

    key = _cache_key(d, s, m, tol)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return float(hit)

    # simetria por permutacao: a ordem dos eixos nao muda o valor
    k = sorted(abs(v) for v in m)
    integral, err = cosine_integral(s, k, math.pi, tol, max_panels=max_panels)
    value = integral / math.pi ** d
    logger.debug(f"Oraculo Phi({tuple(m)}) d={d} s={s}: {value:.15e} (erro ~{err / math.pi ** d:.1e})")

    if cache is not None:
        cache.set(key, value)
    return value
