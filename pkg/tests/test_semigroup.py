import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_kfold_sums, brute_sumset_power
from okounkov_lab import geometry as g
from okounkov_lab import semigroup as sg


def S(dim, pts):
    return g.support_set(dim, pts)


A013 = S(1, [(0,), (1,), (3,)])
SIMPLEX_PTS = S(2, [(0, 0), (1, 0), (0, 1)])
A02 = S(1, [(0,), (2,)])


def random_support(rng, dim, span=4, size=4):
    pts = {tuple(rng.randint(0, span) for _ in range(dim)) for _ in range(size)}
    return S(dim, pts)


class TestSumsetPower:
    def test_examples(self):
        assert set(sg.sumset_power(A013, 2).points) == {(0,), (1,), (2,), (3,), (4,), (6,)}
        assert len(sg.sumset_power(SIMPLEX_PTS, 3)) == 10
        assert set(sg.sumset_power(A02, 5).points) == {(0,), (2,), (4,), (6,), (8,), (10,)}

    def test_identity_at_one(self):
        assert sg.sumset_power(A013, 1).points == A013.points

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            sg.sumset_power(A013, 0)

    def test_against_brute_force(self):
        rng = random.Random(31)
        for _ in range(25):
            a = random_support(rng, 2, span=3, size=3)
            k = rng.randint(1, 4)
            got = set(sg.sumset_power(a, k).points)
            assert got == brute_sumset_power(a.points, k)
            assert got == brute_kfold_sums(a.points, k)

    def test_superadditive(self):
        rng = random.Random(17)
        for _ in range(15):
            a = random_support(rng, 2, span=3, size=3)
            j, k = rng.randint(1, 3), rng.randint(1, 3)
            left = {
                tuple(x + y for x, y in zip(p, q))
                for p in sg.sumset_power(a, j).points
                for q in sg.sumset_power(a, k).points
            }
            assert left <= set(sg.sumset_power(a, j + k).points)

    def test_containment_in_dilated_hull(self):
        rng = random.Random(23)
        for _ in range(15):
            a = random_support(rng, 2, span=3, size=4)
            k = rng.randint(1, 4)
            dilated = g.scale(g.polytope_of_support(a), k)
            allowed = set(g.lattice_points(dilated).points)
            assert set(sg.sumset_power(a, k).points) <= allowed


class TestCompletion:
    def test_examples(self):
        assert set(sg.completion(A013).points) == {(0,), (1,), (2,), (3,)}
        assert set(sg.completion(A02).points) == {(0,), (1,), (2,)}
        two_simplex = S(2, [(0, 0), (2, 0), (0, 2)])
        assert len(sg.completion(two_simplex)) == 6

    def test_idempotent(self):
        rng = random.Random(5)
        for _ in range(20):
            a = random_support(rng, 2)
            c = sg.completion(a)
            assert sg.completion(c).points == c.points

    def test_absorbs_sumsets(self):
        rng = random.Random(6)
        for _ in range(20):
            a, b = random_support(rng, 2, 3, 3), random_support(rng, 2, 3, 3)
            lhs = sg.completion(sg.sumset(a, b))
            rhs = sg.completion(sg.sumset(sg.completion(a), sg.completion(b)))
            assert lhs.points == rhs.points


class TestCancelation:
    def test_trivial_equal_inputs(self):
        c = S(1, [(0,), (1,)])
        assert sg.check_cancelation(A013, A013, c)

    def test_worked_example(self):
        b = S(1, [(0,), (2,), (3,)])
        c = S(1, [(0,), (1,)])
        assert sg.completion(A013).points == sg.completion(b).points
        assert sg.check_cancelation(A013, b, c)

    def test_random_triples(self):
        rng = random.Random(300)
        for _ in range(300):
            a = random_support(rng, 2, 3, 3)
            b = random_support(rng, 2, 3, 3)
            c = random_support(rng, 2, 2, 2)
            assert sg.check_cancelation(a, b, c)


class TestDifferenceLatticeIndex:
    def test_standard_basis(self):
        assert sg.difference_lattice_index([SIMPLEX_PTS]) == 1

    def test_even_segment(self):
        assert sg.difference_lattice_index([A02]) == 2

    def test_snf_example(self):
        assert sg.difference_lattice_index([S(2, [(0, 0), (2, 0), (0, 3)])]) == 6

    def test_rank_deficient_is_infinite(self):
        assert sg.difference_lattice_index([S(2, [(0, 0), (1, 0)])]) == sg.INFINITE

    def test_union_of_sets_can_generate(self):
        sets = [S(2, [(0, 0), (1, 0)]), S(2, [(5, 5), (5, 6)])]
        assert sg.difference_lattice_index(sets) == 1

    def test_invariant_under_sumset_power(self):
        rng = random.Random(41)
        for _ in range(15):
            a = random_support(rng, 2, 3, 3)
            base = sg.difference_lattice_index([a])
            for k in (2, 3):
                assert sg.difference_lattice_index([sg.sumset_power(a, k)]) == base

    def test_smith_normal_form_divisibility(self):
        divs = sg.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
        assert divs == [2, 2, 156]
        for a, b in zip(divs, divs[1:]):
            if b != 0:
                assert b % a == 0


class TestNewtonBody:
    def test_simplex_slice(self):
        for kmax in (1, 2, 4):
            body = sg.newton_body(sg.slice_of_support(SIMPLEX_PTS, kmax))
            assert body.polytope == g.polytope_of_support(SIMPLEX_PTS)

    def test_one_dim_example(self):
        body = sg.newton_body(sg.slice_of_support(A013, 1))
        assert body.polytope == g.convex_hull([(0,), (3,)])

    def test_single_ray(self):
        ray = sg.GradedSemigroupSlice(2, {k: S(2, [(k, 0)]) for k in range(1, 5)})
        body = sg.newton_body(ray)
        assert body.polytope.affine_dim == 0
        assert body.polytope.vertices == ((F(1), F(0)),)

    def test_monotone_in_kmax(self):
        rng = random.Random(53)
        for _ in range(10):
            a = random_support(rng, 2, 3, 3)
            prev = None
            for kmax in (1, 2, 3, 4):
                body = sg.newton_body(sg.slice_of_support(a, kmax)).polytope
                if prev is not None:
                    assert all(g.contains_point(body, v) for v in prev.vertices)
                prev = body


class TestDensity:
    def test_simplex_closed_form(self):
        rep = sg.density_sequence(sg.slice_of_support(SIMPLEX_PTS, 12))
        for row in rep.rows:
            k = row.k
            assert row.ratio == F((k + 1) * (k + 2), 2 * k**2)
        assert rep.ample and rep.final_volume == F(1, 2)

    def test_non_ample_flagged(self):
        rep = sg.density_sequence(sg.slice_of_support(A02, 12))
        assert not rep.ample and rep.index == 2
        assert rep.final_ratio == F(13, 12)
        assert rep.final_volume == 2

    def test_one_dim_converges(self):
        rep = sg.density_sequence(sg.slice_of_support(A013, 25))
        assert rep.ample
        assert abs(rep.final_ratio - 3) < F(2, 10)


class TestInteriorMargin:
    def test_simplex_saturates_at_zero(self):
        rows = sg.interior_margin(sg.slice_of_support(SIMPLEX_PTS, 10), 0)
        assert all(r.deep_missing == 0 for r in rows)

    def test_a013_needs_margin_one(self):
        rows0 = sg.interior_margin(sg.slice_of_support(A013, 10), 0)
        assert any(r.deep_missing > 0 for r in rows0)
        rows1 = sg.interior_margin(sg.slice_of_support(A013, 10), 1)
        assert all(r.deep_missing == 0 for r in rows1 if r.k >= 2)

    def test_two_simplex_small_margin(self):
        # the vertex set of the doubled simplex has difference lattice 2Z^2,
        # so the deep-interior theorem needs its (ample) lattice-point set
        verts = S(2, [(0, 0), (2, 0), (0, 2)])
        assert sg.difference_lattice_index([verts]) == 4
        a = sg.completion(verts)
        c, rows = sg.search_margin_constant(sg.slice_of_support(a, 12))
        assert c is not None and c <= 2

    def test_normalized_depth_trend(self):
        rows = sg.interior_margin(sg.slice_of_support(A013, 16), 1)
        normalized = [r.max_missing_depth / r.k for r in rows]
        assert normalized[-1] <= normalized[1] + 1e-12
        assert normalized[-1] < 0.2

    def test_rejects_non_ample(self):
        with pytest.raises(ValueError):
            sg.interior_margin(sg.slice_of_support(A02, 5), 0)

    def test_rejects_non_sumset_levels(self):
        levels = {1: SIMPLEX_PTS, 2: S(2, [(0, 0)])}
        with pytest.raises(ValueError):
            sg.interior_margin(sg.GradedSemigroupSlice(2, levels), 0)


class TestSliceType:
    def test_contiguity_enforced(self):
        with pytest.raises(ValueError):
            sg.GradedSemigroupSlice(1, {2: A013})

    def test_superadditivity_checker(self):
        assert sg.slice_of_support(SIMPLEX_PTS, 5).check_superadditive()
        bad = sg.GradedSemigroupSlice(
            1, {1: S(1, [(0,), (1,)]), 2: S(1, [(5,)])}
        )
        assert not bad.check_superadditive()

    @given(st.sets(st.integers(0, 5), min_size=1, max_size=4), st.integers(1, 4))
    @settings(max_examples=40, deadline=None)
    def test_power_size_grows(self, pts, k):
        a = S(1, [(p,) for p in pts])
        assert len(sg.sumset_power(a, k)) >= len(a) if k >= 1 else True
