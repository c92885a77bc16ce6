import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import in_convex_hull, shoelace_area
from okounkov_lab import geometry as g


def fr(a, b=1):
    return F(a, b)


def square(side=1):
    return g.convex_hull([(0, 0), (side, 0), (0, side), (side, side)])


def simplex(n, d=1):
    pts = [tuple(0 for _ in range(n))]
    for i in range(n):
        e = [0] * n
        e[i] = d
        pts.append(tuple(e))
    return g.convex_hull(pts)


class TestConvexHull:
    def test_interior_point_removed(self):
        P = g.convex_hull([(0, 0), (1, 0), (0, 1), (F(1, 2), F(1, 4))])
        assert P.vertices == ((F(0), F(0)), (F(0), F(1)), (F(1), F(0)))

    def test_boundary_midpoint_removed(self):
        P = g.convex_hull([(0, 0), (2, 0), (0, 2), (1, 1)])
        assert P.vertices == ((F(0), F(0)), (F(0), F(2)), (F(2), F(0)))

    def test_idempotent(self):
        pts = [(0, 0), (3, 1), (1, 3), (2, 2), (1, 1)]
        P = g.convex_hull(pts)
        assert g.convex_hull(P.vertices) == P

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            g.convex_hull([])

    def test_mixed_dimension_rejected(self):
        with pytest.raises(ValueError):
            g.convex_hull([(0, 0), (1, 0, 0)])

    def test_random_3d_extremality_oracle(self):
        # hull vertices verified extreme by brute-force LP feasibility
        rng = random.Random(20240505)
        pts = [
            (F(rng.randint(0, 16), 16), F(rng.randint(0, 16), 16), F(rng.randint(0, 16), 16))
            for _ in range(50)
        ]
        P = g.convex_hull(pts)
        vs = set(P.vertices)
        for p in set(pts):
            others = [q for q in set(pts) if q != p]
            assert (p not in vs) == in_convex_hull(p, others)

    def test_degenerate_collinear(self):
        P = g.convex_hull([(0, 0), (1, 1), (2, 2), (3, 3)])
        assert P.affine_dim == 1
        assert P.vertices == ((F(0), F(0)), (F(3), F(3)))

    def test_large_3d_set_exercises_prefilter(self):
        # above the float-prefilter threshold; spot-check extremality
        rng = random.Random(314)
        pts = list(
            {(rng.randint(0, 9), rng.randint(0, 9), rng.randint(0, 9)) for _ in range(150)}
        )
        P = g.convex_hull(pts)
        vs = set(P.vertices)
        sample = rng.sample(pts, 40)
        for p in sample:
            pf = tuple(F(c) for c in p)
            others = [q for q in pts if q != p]
            assert (pf in vs) == (not in_convex_hull(p, others))

    def test_prefilter_disabled_gives_same_hull(self, monkeypatch):
        from okounkov_lab import _hull

        rng = random.Random(2718)
        pts = [
            (rng.randint(0, 6), rng.randint(0, 6), rng.randint(0, 6)) for _ in range(120)
        ]
        with_filter = g.convex_hull(pts)
        monkeypatch.setattr(_hull, "_HAVE_QHULL", False)
        without_filter = g.convex_hull(pts)
        assert with_filter == without_filter
        assert g.volume(with_filter) == g.volume(without_filter)

    def test_single_point(self):
        P = g.convex_hull([(F(1, 2), F(1, 3))])
        assert P.affine_dim == 0 and g.volume(P) == 0


class TestMinkowskiSum:
    def test_unit_square_from_segments(self):
        s1 = g.convex_hull([(0, 0), (1, 0)])
        s2 = g.convex_hull([(0, 0), (0, 1)])
        assert g.minkowski_sum(s1, s2) == square()

    def test_simplex_plus_diagonal_is_pentagon(self):
        seg = g.convex_hull([(0, 0), (1, 1)])
        P = g.minkowski_sum(simplex(2), seg)
        expected = g.convex_hull([(0, 0), (1, 0), (2, 1), (1, 2), (0, 1)])
        assert P == expected

    def test_single_point_translates(self):
        P = g.convex_hull([(0, 0), (2, 1), (1, 3)])
        t = g.convex_hull([(5, -2)])
        assert g.minkowski_sum(P, t) == g.translate(P, (5, -2))

    def test_commutative_associative(self):
        rng = random.Random(5)
        mk = lambda: g.convex_hull(
            [(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(4)]
        )
        for _ in range(10):
            A, B, C = mk(), mk(), mk()
            assert g.minkowski_sum(A, B) == g.minkowski_sum(B, A)
            assert g.minkowski_sum(g.minkowski_sum(A, B), C) == g.minkowski_sum(
                A, g.minkowski_sum(B, C)
            )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            g.minkowski_sum(square(), simplex(3))


class TestScaleVolume:
    def test_scale_square(self):
        assert g.scale(square(), 2) == square(2)

    def test_scale_zero_gives_origin(self):
        P = g.scale(square(), 0)
        assert P.vertices == ((F(0), F(0)),)

    def test_scale_fractional(self):
        P = g.scale(simplex(2), F(3, 2))
        assert P.vertices == ((F(0), F(0)), (F(0), F(3, 2)), (F(3, 2), F(0)))

    def test_negative_scale_rejected(self):
        with pytest.raises(ValueError):
            g.scale(square(), -1)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_unit_simplex_volume(self, n):
        import math

        assert g.volume(simplex(n)) == F(1, math.factorial(n))

    def test_pentagon_volume_vs_shoelace(self):
        assert g.volume(
            g.convex_hull([(0, 0), (1, 0), (2, 1), (1, 2), (0, 1)])
        ) == shoelace_area([(0, 0), (1, 0), (2, 1), (1, 2), (0, 1)])

    def test_shoelace_equivalence_500_random_polygons(self):
        from oracles import ring_sorted

        rng = random.Random(99)
        for _ in range(500):
            pts = {
                (rng.randint(0, 7), rng.randint(0, 7))
                for _ in range(rng.randint(3, 8))
            }
            P = g.convex_hull(pts)
            if P.affine_dim < 2:
                assert g.volume(P) == 0
                continue
            assert g.volume(P) == shoelace_area(ring_sorted(P.vertices))


class TestLatticePoints:
    def test_unit_square(self):
        assert set(g.lattice_points(square()).points) == {
            (0, 0), (1, 0), (0, 1), (1, 1)
        }

    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_scaled_square_count(self, k):
        assert len(g.lattice_points(g.scale(square(), k))) == (k + 1) ** 2

    def test_segment(self):
        P = g.convex_hull([(0,), (3,)])
        assert set(g.lattice_points(P).points) == {(0,), (1,), (2,), (3,)}

    def test_fractional_body_without_lattice_points(self):
        P = g.convex_hull([(F(1, 3), F(1, 3)), (F(2, 3), F(1, 3)), (F(1, 2), F(2, 3))])
        assert len(g.lattice_points(P)) == 0

    def test_monotone_under_sum_with_zero(self):
        rng = random.Random(12)
        for _ in range(25):
            P = g.convex_hull([(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(4)])
            Q = g.convex_hull([(0, 0), (rng.randint(0, 2), rng.randint(0, 2))])
            assert set(g.lattice_points(P).points) <= set(
                g.lattice_points(g.minkowski_sum(P, Q)).points
            )


class TestHausdorff:
    def test_self_distance_zero(self):
        assert g.hausdorff_distance(square(), square()) == 0.0

    def test_square_vs_double(self):
        d = g.hausdorff_distance(square(), square(2))
        assert abs(d - 2 ** 0.5) < 1e-9

    def test_symmetry_on_random_pairs(self):
        rng = random.Random(3)
        for _ in range(20):
            P = g.convex_hull([(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(5)])
            Q = g.convex_hull([(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(5)])
            assert g.hausdorff_distance(P, Q) == g.hausdorff_distance(Q, P)


coord = st.integers(min_value=-6, max_value=6)
point2 = st.tuples(coord, coord)


class TestProperties:
    @given(st.lists(point2, min_size=1, max_size=9))
    @settings(max_examples=60, deadline=None)
    def test_hull_idempotence(self, pts):
        P = g.convex_hull(pts)
        assert g.convex_hull(P.vertices) == P

    @given(st.lists(point2, min_size=1, max_size=7), point2)
    @settings(max_examples=60, deadline=None)
    def test_volume_translation_invariance(self, pts, t):
        P = g.convex_hull(pts)
        assert g.volume(g.translate(P, t)) == g.volume(P)

    @given(
        st.lists(point2, min_size=1, max_size=7),
        st.fractions(min_value=0, max_value=4),
    )
    @settings(max_examples=60, deadline=None)
    def test_volume_homogeneity(self, pts, lam):
        P = g.convex_hull(pts)
        assert g.volume(g.scale(P, lam)) == lam ** P.ambient_dim * g.volume(P)
