#!/usr/bin/env python3
"""
Testes para malha, formas e máscaras (fracsinc.lattice)
"""

import numpy as np
import pytest

from fracsinc.errors import BoundingBoxError, EmptyDomainError, InvalidParameterError, ShapeError
from fracsinc.lattice import (
    Ball,
    Box,
    DomainMask,
    Lattice,
    OffsetShape,
    Polygon,
    SignedDistanceShape,
    build_mask,
    enlarge_shape,
    shape_contains,
    shape_from_config,
    shape_project,
    strip_point_count,
)


class TestLattice:
    """Testa a malha uniforme"""

    def test_spacing_and_shape(self):
        lattice = Lattice(2, 8)
        assert lattice.h * lattice.n == 1.0
        assert lattice.shape == (8, 8)
        assert lattice.size == 64

    def test_points_are_k_over_n(self):
        pts = Lattice(1, 4).points()
        np.testing.assert_array_equal(pts[:, 0], [0.0, 0.25, 0.5, 0.75])

    def test_points_lexicographic(self):
        pts = Lattice(2, 4).points()
        assert tuple(pts[1]) == (0.0, 0.25)
        assert tuple(pts[4]) == (0.25, 0.0)

    @pytest.mark.parametrize("d,n", [(0, 8), (4, 8), (1, 3)])
    def test_invalid(self, d, n):
        with pytest.raises(InvalidParameterError):
            Lattice(d, n)


class TestShapeContains:
    """Testa pertinência aberta com fronteira resolvida como fora"""

    def test_ball_center(self):
        assert shape_contains(Ball((0.5,), 0.45), [0.5]) is True

    def test_ball_boundary_is_outside(self):
        assert shape_contains(Ball((0.5,), 0.45), [0.95]) is False

    def test_box_2d(self):
        assert shape_contains(Box((0.25, 0.25), (0.75, 0.75)), [0.3, 0.7]) is True

    def test_box_face_is_outside(self):
        assert shape_contains(Box((0.25,), (0.75,)), [0.25]) is False

    def test_unit_box_faces_are_inside(self):
        box = Box((0.0, 0.0), (1.0, 1.0))
        assert shape_contains(box, [0.0, 0.0]) is True

    def test_vectorized(self):
        result = shape_contains(Ball((0.5,), 0.25), [[0.5], [0.1], [0.7]])
        np.testing.assert_array_equal(result, [True, False, True])

    def test_point_outside_unit_box_rejected(self):
        with pytest.raises(InvalidParameterError):
            shape_contains(Ball((0.5,), 0.25), [1.0])

    def test_polygon_triangle(self):
        tri = Polygon(((0.1, 0.1), (0.9, 0.1), (0.5, 0.8)))
        assert shape_contains(tri, [0.5, 0.3]) is True
        assert shape_contains(tri, [0.1, 0.7]) is False


class TestDegenerateShapes:
    """Testa rejeição de formas malformadas"""

    def test_self_intersecting_polygon(self):
        bowtie = ((0.1, 0.1), (0.9, 0.9), (0.9, 0.1), (0.1, 0.9))
        with pytest.raises(ShapeError, match="degenerate shape"):
            Polygon(bowtie)

    def test_collinear_polygon(self):
        with pytest.raises(ShapeError):
            Polygon(((0.1, 0.1), (0.5, 0.5), (0.9, 0.9)))

    def test_too_few_vertices(self):
        with pytest.raises(ShapeError):
            Polygon(((0.1, 0.1), (0.5, 0.5)))

    def test_zero_radius(self):
        with pytest.raises(ShapeError):
            Ball((0.5,), 0.0)

    def test_inverted_box(self):
        with pytest.raises(ShapeError):
            Box((0.6,), (0.4,))

    def test_ball_outside_unit_box(self):
        with pytest.raises(ShapeError):
            Ball((0.5,), 0.6)


class TestBuildMask:
    """Testa Omega_N = {k : k/N em Omega}"""

    def test_ball_1d(self):
        mask = build_mask(Ball((0.5,), 0.45), Lattice(1, 8))
        assert mask.count == 7
        np.testing.assert_array_equal(np.flatnonzero(mask.inside), np.arange(1, 8))

    def test_full_box_2d(self):
        mask = build_mask(Box((0.0, 0.0), (1.0, 1.0)), Lattice(2, 4))
        assert mask.count == 16

    def test_tiny_ball_is_empty(self):
        with pytest.raises(EmptyDomainError, match="empty discrete domain"):
            build_mask(Ball((0.53,), 0.01), Lattice(1, 8))

    def test_tiny_ball_on_lattice_point_keeps_center(self):
        mask = build_mask(Ball((0.5,), 0.01), Lattice(1, 8))
        assert mask.count == 1
        np.testing.assert_array_equal(mask.indices(), [[4]])

    def test_consistent_with_contains(self):
        shape = Ball((0.5, 0.5), 0.3)
        lattice = Lattice(2, 16)
        mask = build_mask(shape, lattice)
        expected = shape.contains(lattice.points()).reshape(lattice.shape)
        np.testing.assert_array_equal(mask.inside, expected)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidParameterError):
            build_mask(Ball((0.5,), 0.3), Lattice(2, 8))

    def test_mask_is_read_only(self):
        mask = build_mask(Ball((0.5,), 0.45), Lattice(1, 8))
        with pytest.raises(ValueError):
            mask.inside[0] = True

    def test_boundary_layer_1d(self):
        mask = build_mask(Ball((0.5,), 0.45), Lattice(1, 8))
        np.testing.assert_array_equal(np.flatnonzero(mask.boundary_layer()), [1, 7])

    def test_indices_and_points(self):
        mask = DomainMask(Lattice(1, 4), np.array([False, True, True, False]))
        np.testing.assert_array_equal(mask.indices()[:, 0], [1, 2])
        np.testing.assert_allclose(mask.points()[:, 0], [0.25, 0.5])


CONVEX_QUAD = ((0.2, 0.2), (0.8, 0.3), (0.7, 0.8), (0.25, 0.7))


class TestMaskProperties:
    """Testa monotonicidade e determinismo das máscaras"""

    @pytest.mark.parametrize("inner,outer", [
        (Ball((0.5, 0.5), 0.3), Ball((0.5, 0.5), 0.45)),
        (Box((0.4, 0.4), (0.6, 0.6)), Ball((0.5, 0.5), 0.3)),
        (Polygon(((0.4, 0.4), (0.6, 0.4), (0.5, 0.6))), Box((0.25, 0.25), (0.75, 0.75))),
    ])
    def test_monotone_under_inclusion(self, inner, outer):
        lattice = Lattice(2, 32)
        small = build_mask(inner, lattice).inside
        large = build_mask(outer, lattice).inside
        assert np.all(large[small])
        assert large.sum() > small.sum()

    @pytest.mark.parametrize("shape", [Ball((0.5, 0.5), 0.3), Box((0.3, 0.3), (0.7, 0.6)), Polygon(CONVEX_QUAD)])
    def test_monotone_under_enlargement(self, shape):
        lattice = Lattice(2, 32)
        masks = [build_mask(enlarge_shape(shape, rho), lattice).inside for rho in (0.0, 0.01, 0.05, 0.1)]
        for small, large in zip(masks, masks[1:]):
            assert np.all(large[small])
        assert masks[-1].sum() > masks[0].sum()

    @pytest.mark.parametrize("spec", [
        {"kind": "ball", "center": [0.5, 0.5], "radius": 0.45},
        {"kind": "polygon", "vertices": [list(v) for v in CONVEX_QUAD]},
    ])
    def test_bit_identical_rebuild(self, spec):
        first = build_mask(shape_from_config(spec), Lattice(2, 64))
        second = build_mask(shape_from_config(dict(spec)), Lattice(2, 64))
        assert first.inside.tobytes() == second.inside.tobytes()
        np.testing.assert_array_equal(first.indices(), second.indices())


class TestEnlargeShape:
    """Testa a soma de Minkowski Omega + B_rho"""

    def test_ball(self):
        enlarged = enlarge_shape(Ball((0.5,), 0.40), 0.05)
        assert isinstance(enlarged, Ball)
        assert enlarged.radius == pytest.approx(0.45)

    def test_box(self):
        enlarged = enlarge_shape(Box((0.25,), (0.75,)), 0.1)
        assert enlarged.lo[0] == pytest.approx(0.15)
        assert enlarged.hi[0] == pytest.approx(0.85)

    def test_escapes_unit_box(self):
        with pytest.raises(BoundingBoxError, match="enlarged domain exceeds bounding box"):
            enlarge_shape(Ball((0.5,), 0.49), 0.05)

    def test_zero_rho_is_identity(self):
        ball = Ball((0.5,), 0.3)
        assert enlarge_shape(ball, 0.0) is ball

    def test_negative_rho(self):
        with pytest.raises(InvalidParameterError):
            enlarge_shape(Ball((0.5,), 0.3), -0.1)

    def test_polygon_uses_offset(self):
        square = Polygon(((0.3, 0.3), (0.7, 0.3), (0.7, 0.7), (0.3, 0.7)))
        enlarged = enlarge_shape(square, 0.1)
        assert isinstance(enlarged, OffsetShape)
        assert enlarged.contains(np.array([[0.25, 0.5]]))[0]
        assert not enlarged.contains(np.array([[0.15, 0.5]]))[0]

    def test_signed_distance_shape_without_extent(self):
        ball_sdf = SignedDistanceShape(lambda x: np.linalg.norm(x - 0.5, axis=1) - 0.3, d=2)
        enlarged = enlarge_shape(ball_sdf, 0.1)
        assert enlarged.contains(np.array([[0.5, 0.85]]))[0]
        with pytest.raises(BoundingBoxError):
            enlarge_shape(ball_sdf, 0.25)


class TestProjection:
    """Testa ponto mais próximo do fecho (extensão por ponto mais próximo)"""

    def test_ball_projection(self):
        projected = shape_project(Ball((0.5, 0.5), 0.25), [[0.5, 0.95]])
        np.testing.assert_allclose(projected, [[0.5, 0.75]])

    def test_interior_unchanged(self):
        projected = shape_project(Box((0.25,), (0.75,)), [[0.5]])
        np.testing.assert_array_equal(projected, [[0.5]])

    def test_polygon_projection(self):
        square = Polygon(((0.3, 0.3), (0.7, 0.3), (0.7, 0.7), (0.3, 0.7)))
        projected = shape_project(square, [[0.5, 0.9]])
        np.testing.assert_allclose(projected, [[0.5, 0.7]])

    def test_signed_distance_projection(self):
        shape = SignedDistanceShape(lambda x: np.linalg.norm(x - 0.5, axis=1) - 0.2, d=2)
        projected = shape_project(shape, [[0.5, 0.9]])
        np.testing.assert_allclose(projected, [[0.5, 0.7]], atol=1e-6)


class TestStripPointCount:
    """Testa o diagnóstico de pontos na faixa exterior"""

    def test_unit_box_has_no_strip(self):
        assert strip_point_count(Box((0.0,), (1.0,)), Lattice(1, 32)) == 0

    def test_ball_1d_strip(self):
        # pontos k/N com 0.45 <= |k/N - 0.5| < 0.45 + h
        n = 32
        count = strip_point_count(Ball((0.5,), 0.45), Lattice(1, n))
        assert count == 2

    def test_scales_like_n_to_d_minus_1(self):
        ball = Ball((0.5, 0.5), 0.4)
        counts = [strip_point_count(ball, Lattice(2, n)) for n in (16, 32, 64, 128)]
        ratios = [c / n for c, n in zip(counts, (16, 32, 64, 128))]
        assert max(ratios) <= 2 * min(ratios)

    def test_convex_polygon_scales_like_n(self):
        quad = Polygon(CONVEX_QUAD)
        sizes = (16, 32, 64, 128, 256)
        ratios = [strip_point_count(quad, Lattice(2, n)) / n for n in sizes]
        assert ratios[0] > 0
        assert all(ratio <= 2 * ratios[0] for ratio in ratios)


class TestShapeFromConfig:
    """Testa a fábrica de formas a partir de dict"""

    def test_ball(self):
        shape = shape_from_config({"kind": "ball", "center": [0.5, 0.5], "radius": 0.3})
        assert isinstance(shape, Ball) and shape.d == 2

    def test_polygon(self):
        shape = shape_from_config({"kind": "polygon", "vertices": [[0.1, 0.1], [0.9, 0.1], [0.5, 0.9]]})
        assert isinstance(shape, Polygon)

    def test_unknown(self):
        with pytest.raises(InvalidParameterError):
            shape_from_config({"kind": "torus"})
