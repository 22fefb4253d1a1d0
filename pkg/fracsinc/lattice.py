"""
fracsinc - Malha e dominio

Malha uniforme {0..N-1}^d na caixa [0,1)^d com pontos x_k = k/N, e as
formas geometricas que fazem o papel do dominio Omega:

- Ball, Box, Polygon (d=2), SignedDistanceShape (callback)
- OffsetShape: Omega + B_rho para formas sem forma fechada
- build_mask: conjunto discreto Omega_N = {k : x_k em Omega}
- enlarge_shape: Omega_rho = Omega + B_rho
- strip_point_count: pontos da malha em (Omega + B_h) \\ Omega

Convencoes:
- distancia assinada negativa dentro, positiva fora
- pontos a menos de 1e-12 da fronteira contam como fora
- faces de Box que coincidem com a caixa unitaria nao sao fronteira
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BoundingBoxError,
    EmptyDomainError,
    InvalidParameterError,
    ShapeError,
)

logger = logging.getLogger(__name__)

# ============ CONSTANTES ============

BOUNDARY_TOL = 1e-12
SUPPORTED_DIMS = (1, 2, 3)
MIN_POINTS_PER_AXIS = 4

# Amostras por eixo nas faces da caixa unitaria para formas sem extensao conhecida
FACE_SAMPLES = 33

Extent = Tuple[np.ndarray, np.ndarray]


# ============ MALHA ============

@dataclass(frozen=True)
class Lattice:
    """Malha {0..n-1}^d com espacamento h = 1/n."""

    d: int
    n: int

    def __post_init__(self):
        if self.d not in SUPPORTED_DIMS:
            raise InvalidParameterError(f"d deve ser 1, 2 ou 3 (recebido {self.d})")
        if self.n < MIN_POINTS_PER_AXIS:
            raise InvalidParameterError(f"N deve ser >= {MIN_POINTS_PER_AXIS} (recebido {self.n})")

    @property
    def h(self) -> float:
        return 1.0 / self.n

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.n,) * self.d

    @property
    def size(self) -> int:
        return self.n ** self.d

    def coordinates(self) -> np.ndarray:
        """Coordenadas x_k = k/N com shape (N,)*d + (d,)."""
        idx = np.indices(self.shape, dtype=float)
        return np.moveaxis(idx, 0, -1) / self.n

    def points(self) -> np.ndarray:
        """Pontos da malha em ordem lexicografica, shape (N^d, d)."""
        return self.coordinates().reshape(-1, self.d)


def _as_points(x: Any, d: int) -> np.ndarray:
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 0 or pts.shape[-1] != d:
        raise InvalidParameterError(f"pontos devem ter ultima dimensao {d} (shape {pts.shape})")
    return pts


# ============ FORMAS ============

class DomainShape(ABC):
    """Forma aberta contida em [0,1]^d, descrita por distancia assinada."""

    d: int

    @abstractmethod
    def signed_distance(self, x: np.ndarray) -> np.ndarray:
        """Distancia assinada (negativa dentro) para pontos (..., d)."""

    @abstractmethod
    def project(self, y: np.ndarray) -> np.ndarray:
        """Ponto mais proximo do fecho da forma; pontos internos ficam inalterados."""

    @abstractmethod
    def extent(self) -> Optional[Extent]:
        """Caixa envolvente (lo, hi) ou None quando desconhecida."""

    def contains(self, x: np.ndarray) -> np.ndarray:
        return self.signed_distance(x) < -BOUNDARY_TOL


def _check_in_unit_box(lo: np.ndarray, hi: np.ndarray):
    if np.any(lo < -BOUNDARY_TOL) or np.any(hi > 1.0 + BOUNDARY_TOL):
        raise ShapeError("shape exceeds bounding box")


@dataclass(frozen=True)
class Ball(DomainShape):
    center: Tuple[float, ...]
    radius: float

    def __post_init__(self):
        center = tuple(float(v) for v in self.center)
        object.__setattr__(self, "center", center)
        if len(center) not in SUPPORTED_DIMS:
            raise InvalidParameterError(f"centro com dimensao invalida: {len(center)}")
        if not np.isfinite(self.radius) or self.radius <= 0 or not np.all(np.isfinite(center)):
            raise ShapeError()
        lo, hi = self.extent()
        _check_in_unit_box(lo, hi)

    @property
    def d(self) -> int:
        return len(self.center)

    def signed_distance(self, x):
        pts = _as_points(x, self.d)
        return np.linalg.norm(pts - np.asarray(self.center), axis=-1) - self.radius

    def project(self, y):
        pts = _as_points(y, self.d)
        c = np.asarray(self.center)
        diff = pts - c
        dist = np.linalg.norm(diff, axis=-1, keepdims=True)
        outside = dist > self.radius
        safe = np.where(dist > 0, dist, 1.0)
        return np.where(outside, c + self.radius * diff / safe, pts)

    def extent(self):
        c = np.asarray(self.center)
        return c - self.radius, c + self.radius


@dataclass(frozen=True)
class Box(DomainShape):
    lo: Tuple[float, ...]
    hi: Tuple[float, ...]

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if len(lo) != len(hi) or len(lo) not in SUPPORTED_DIMS:
            raise InvalidParameterError("lo/hi com dimensoes inconsistentes")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ShapeError()
        if np.any(np.asarray(hi) - np.asarray(lo) <= 0):
            raise ShapeError()
        _check_in_unit_box(np.asarray(lo), np.asarray(hi))

    @property
    def d(self) -> int:
        return len(self.lo)

    def signed_distance(self, x):
        pts = _as_points(x, self.d)
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        q = np.abs(pts - (lo + hi) / 2) - (hi - lo) / 2
        outside = np.linalg.norm(np.maximum(q, 0.0), axis=-1)
        inside = np.minimum(q.max(axis=-1), 0.0)
        return outside + inside

    def contains(self, x):
        pts = _as_points(x, self.d)
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        # faces sobre a caixa unitaria pertencem ao dominio
        lower = np.where(lo <= BOUNDARY_TOL, pts >= lo - BOUNDARY_TOL, pts > lo + BOUNDARY_TOL)
        upper = np.where(hi >= 1.0 - BOUNDARY_TOL, pts <= hi, pts < hi - BOUNDARY_TOL)
        return np.all(lower & upper, axis=-1)

    def project(self, y):
        pts = _as_points(y, self.d)
        return np.clip(pts, np.asarray(self.lo), np.asarray(self.hi))

    def extent(self):
        return np.asarray(self.lo), np.asarray(self.hi)


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    def on_segment(a, b, c):
        return (min(a[0], b[0]) - BOUNDARY_TOL <= c[0] <= max(a[0], b[0]) + BOUNDARY_TOL
                and min(a[1], b[1]) - BOUNDARY_TOL <= c[1] <= max(a[1], b[1]) + BOUNDARY_TOL)

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    for o, a, b, c in ((o1, p1, p2, q1), (o2, p1, p2, q2), (o3, q1, q2, p1), (o4, q1, q2, p2)):
        if abs(o) <= BOUNDARY_TOL and on_segment(a, b, c):
            return True
    return False


@dataclass(frozen=True)
class Polygon(DomainShape):
    """Poligono simples em 2D (regra par-impar para o interior)."""

    vertices: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        try:
            verts = np.asarray(self.vertices, dtype=float)
        except (TypeError, ValueError):
            raise ShapeError()
        if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
            raise ShapeError()
        if not np.all(np.isfinite(verts)):
            raise ShapeError()
        object.__setattr__(self, "vertices", tuple(map(tuple, verts.tolist())))
        nxt = np.roll(verts, -1, axis=0)
        if np.any(np.linalg.norm(nxt - verts, axis=1) <= BOUNDARY_TOL):
            raise ShapeError()
        area = 0.5 * np.sum(verts[:, 0] * nxt[:, 1] - nxt[:, 0] * verts[:, 1])
        if abs(area) <= 1e-14:
            raise ShapeError()
        n_edges = len(verts)
        for i in range(n_edges):
            for j in range(i + 2, n_edges):
                if i == 0 and j == n_edges - 1:
                    continue
                if _segments_cross(verts[i], nxt[i], verts[j], nxt[j]):
                    raise ShapeError()
        _check_in_unit_box(verts.min(axis=0), verts.max(axis=0))

    @property
    def d(self) -> int:
        return 2

    def _edges(self):
        a = np.asarray(self.vertices)
        return a, np.roll(a, -1, axis=0)

    def _closest_on_edges(self, pts: np.ndarray):
        a, b = self._edges()
        ab = b - a
        ap = pts[:, None, :] - a[None, :, :]
        t = np.clip(np.sum(ap * ab, axis=-1) / np.sum(ab * ab, axis=-1), 0.0, 1.0)
        closest = a[None] + t[..., None] * ab[None]
        dist = np.linalg.norm(pts[:, None, :] - closest, axis=-1)
        best = np.argmin(dist, axis=1)
        rows = np.arange(len(pts))
        return closest[rows, best], dist[rows, best]

    def _inside_even_odd(self, pts: np.ndarray) -> np.ndarray:
        a, b = self._edges()
        px, py = pts[:, None, 0], pts[:, None, 1]
        straddle = (a[None, :, 1] > py) != (b[None, :, 1] > py)
        dy = np.where(straddle, b[:, 1] - a[:, 1], 1.0)
        x_cross = (b[:, 0] - a[:, 0]) * (py - a[:, 1]) / dy + a[:, 0]
        crossings = np.sum(straddle & (px < x_cross), axis=1)
        return crossings % 2 == 1

    def signed_distance(self, x):
        pts = _as_points(x, 2)
        flat = pts.reshape(-1, 2)
        _, dist = self._closest_on_edges(flat)
        sign = np.where(self._inside_even_odd(flat), -1.0, 1.0)
        return (sign * dist).reshape(pts.shape[:-1])

    def project(self, y):
        pts = _as_points(y, 2)
        flat = pts.reshape(-1, 2)
        closest, _ = self._closest_on_edges(flat)
        inside = self._inside_even_odd(flat)
        return np.where(inside[:, None], flat, closest).reshape(pts.shape)

    def extent(self):
        verts = np.asarray(self.vertices)
        return verts.min(axis=0), verts.max(axis=0)


class SignedDistanceShape(DomainShape):
    """Forma dada por um callback de distancia assinada vetorizado (n, d) -> (n,)."""

    PROJECTION_STEPS = 4
    GRADIENT_STEP = 1e-6

    def __init__(
        self,
        fn: Callable[[np.ndarray], np.ndarray],
        d: int,
        bounds: Optional[Tuple[Sequence[float], Sequence[float]]] = None,
    ):
        if d not in SUPPORTED_DIMS:
            raise InvalidParameterError(f"d deve ser 1, 2 ou 3 (recebido {d})")
        self.fn = fn
        self.d = d
        self.bounds = None if bounds is None else (np.asarray(bounds[0], float), np.asarray(bounds[1], float))

    def signed_distance(self, x):
        pts = _as_points(x, self.d)
        flat = pts.reshape(-1, self.d)
        return np.asarray(self.fn(flat), dtype=float).reshape(pts.shape[:-1])

    def _gradient(self, pts: np.ndarray) -> np.ndarray:
        grad = np.empty_like(pts)
        for i in range(self.d):
            step = np.zeros(self.d)
            step[i] = self.GRADIENT_STEP
            grad[:, i] = (self.signed_distance(pts + step) - self.signed_distance(pts - step)) / (2 * self.GRADIENT_STEP)
        return grad

    def project(self, y):
        pts = _as_points(y, self.d)
        flat = pts.reshape(-1, self.d).copy()
        outside = self.signed_distance(flat) > 0
        moving = flat[outside]
        for _ in range(self.PROJECTION_STEPS):
            if len(moving) == 0:
                break
            sd = self.signed_distance(moving)
            grad = self._gradient(moving)
            norm = np.linalg.norm(grad, axis=1, keepdims=True)
            moving = moving - sd[:, None] * grad / np.where(norm > 0, norm, 1.0) ** 2
        flat[outside] = moving
        return flat.reshape(pts.shape)

    def extent(self):
        return self.bounds


class OffsetShape(DomainShape):
    """Soma de Minkowski base + B_rho."""

    def __init__(self, base: DomainShape, rho: float):
        self.base = base
        self.rho = float(rho)
        self.d = base.d

    def signed_distance(self, x):
        return self.base.signed_distance(x) - self.rho

    def project(self, y):
        pts = _as_points(y, self.d)
        foot = self.base.project(pts)
        diff = pts - foot
        dist = np.linalg.norm(diff, axis=-1, keepdims=True)
        far = dist > self.rho
        return np.where(far, foot + self.rho * diff / np.where(dist > 0, dist, 1.0), pts)

    def extent(self):
        ext = self.base.extent()
        if ext is None:
            return None
        return ext[0] - self.rho, ext[1] + self.rho


def shape_contains(shape: DomainShape, x: Any):
    """Pertinencia de ponto(s) em [0,1)^d. Pontos na fronteira contam como fora."""
    pts = _as_points(x, shape.d)
    if not np.all(np.isfinite(pts)) or np.any(pts < 0) or np.any(pts >= 1):
        raise InvalidParameterError("ponto fora de [0,1)^d")
    inside = shape.contains(pts)
    return bool(inside) if np.ndim(inside) == 0 else inside


def shape_project(shape: DomainShape, y: Any) -> np.ndarray:
    """Ponto mais proximo do fecho de Omega (extensao por ponto mais proximo)."""
    return shape.project(_as_points(y, shape.d))


def shape_from_config(spec: Dict[str, Any]) -> DomainShape:
    """Cria forma a partir de dict {"kind": "ball"|"box"|"polygon", ...}."""
    kind = spec.get("kind")
    if kind == "ball":
        return Ball(tuple(spec["center"]), float(spec["radius"]))
    if kind == "box":
        return Box(tuple(spec["lo"]), tuple(spec["hi"]))
    if kind == "polygon":
        return Polygon(tuple(tuple(v) for v in spec["vertices"]))
    raise InvalidParameterError(f"tipo de forma desconhecido: {kind!r}")


# ============ MASCARA DISCRETA ============

@dataclass(frozen=True)
class DomainMask:
    """Omega_N como array booleano somente leitura sobre a malha."""

    lattice: Lattice
    inside: np.ndarray
    count: int = field(init=False)

    def __post_init__(self):
        inside = np.array(self.inside, dtype=bool, copy=True)
        if inside.shape != self.lattice.shape:
            raise InvalidParameterError(f"mascara com shape {inside.shape}, esperado {self.lattice.shape}")
        inside.setflags(write=False)
        object.__setattr__(self, "inside", inside)
        object.__setattr__(self, "count", int(inside.sum()))

    def indices(self) -> np.ndarray:
        """Multi-indices dos pontos internos em ordem lexicografica, shape (count, d)."""
        return np.argwhere(self.inside)

    def points(self) -> np.ndarray:
        return self.indices() / self.lattice.n

    def boundary_layer(self) -> np.ndarray:
        """Pontos internos com algum vizinho de eixo fora de Omega_N (ou fora da malha)."""
        layer = np.zeros_like(self.inside)
        padded = np.pad(self.inside, 1, constant_values=False)
        core = tuple(slice(1, -1) for _ in range(self.lattice.d))
        for axis in range(self.lattice.d):
            for shift in (-1, 1):
                neighbour = np.roll(padded, shift, axis=axis)[core]
                layer |= self.inside & ~neighbour
        return layer


def build_mask(shape: DomainShape, lattice: Lattice) -> DomainMask:
    if shape.d != lattice.d:
        raise InvalidParameterError(f"forma em d={shape.d}, malha em d={lattice.d}")
    inside = np.asarray(shape.contains(lattice.points())).reshape(lattice.shape)
    mask = DomainMask(lattice, inside)
    if mask.count == 0:
        raise EmptyDomainError()
    logger.debug(f"Mascara construida: {mask.count}/{lattice.size} pontos (d={lattice.d}, N={lattice.n})")
    return mask


def _escapes_unit_box(shape: DomainShape, rho: float) -> bool:
    ext = shape.extent()
    if ext is not None:
        lo, hi = ext
        return bool(np.any(lo - rho < -BOUNDARY_TOL) or np.any(hi + rho > 1.0 + BOUNDARY_TOL))
    axis = np.linspace(0.0, 1.0, FACE_SAMPLES)
    for fixed_axis in range(shape.d):
        grids = np.meshgrid(*([axis] * (shape.d - 1)), indexing="ij") if shape.d > 1 else []
        free = [g.ravel() for g in grids]
        for value in (0.0, 1.0):
            cols = list(free)
            cols.insert(fixed_axis, np.full(len(free[0]) if free else 1, value))
            face = np.stack(cols, axis=-1)
            if np.any(shape.signed_distance(face) - rho <= 0):
                return True
    return False


def enlarge_shape(shape: DomainShape, rho: float) -> DomainShape:
    """Omega_rho = Omega + B_rho; erro se o resultado sai de [0,1]^d."""
    if not np.isfinite(rho) or rho < 0:
        raise InvalidParameterError(f"rho deve ser >= 0 (recebido {rho})")
    if rho == 0:
        return shape
    if _escapes_unit_box(shape, rho):
        raise BoundingBoxError()
    if isinstance(shape, Ball):
        return Ball(shape.center, shape.radius + rho)
    if isinstance(shape, Box):
        # face a face; superconjunto da soma de Minkowski
        return Box(tuple(np.asarray(shape.lo) - rho), tuple(np.asarray(shape.hi) + rho))
    return OffsetShape(shape, rho)


def strip_point_count(shape: DomainShape, lattice: Lattice) -> int:
    """Numero de pontos da malha em (Omega + B_h) \\ Omega."""
    pts = lattice.points()
    outside = ~np.asarray(shape.contains(pts))
    near = shape.signed_distance(pts) < lattice.h
    return int(np.sum(outside & near))
