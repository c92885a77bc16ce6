import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from okounkov_lab import algebra as alg
from okounkov_lab import geometry as g
from okounkov_lab import semigroup as sg

L = alg.laurent
ONE2 = L(2, {(0, 0): 1})
X = L(2, {(1, 0): 1})
Y = L(2, {(0, 1): 1})
XPY = L(2, {(1, 0): 1, (0, 1): 1})


def random_poly(rng, dim=2, terms=3, span=2):
    d = {}
    for _ in range(terms):
        e = tuple(rng.randint(-span, span) for _ in range(dim))
        d[e] = rng.randint(-4, 4)
    d[tuple(rng.randint(-span, span) for _ in range(dim))] = rng.randint(1, 4)
    return L(dim, d)


class TestPolynomials:
    def test_zero_is_distinct(self):
        z = L(2, {})
        assert z.is_zero
        with pytest.raises(ValueError):
            alg.valuation(z)

    def test_arithmetic(self):
        assert (X + Y).terms == XPY.terms
        assert (XPY * XPY).coefficient((1, 1)) == 2
        assert (XPY - XPY).is_zero

    def test_no_zero_coefficients_stored(self):
        f = L(2, {(0, 0): F(1, 2), (1, 0): 0})
        assert len(f.terms) == 1


class TestMonomialOrder:
    def test_lex_examples(self):
        f = L(2, {(0, 0): 3, (1, 0): 1})
        assert alg.valuation(f) == (0, 0)
        f2 = L(2, {(1, -1): 1, (2, 0): 1})
        assert alg.valuation(f2) == (1, -1)

    def test_grlex_orders_by_weight_first(self):
        o = alg.MonomialOrder("grlex", (1, 3))
        f = L(2, {(2, 0): 1, (0, 1): 1})
        assert alg.valuation(f, o) == (2, 0)  # weight 2 beats weight 3

    def test_grlex_requires_grading(self):
        with pytest.raises(ValueError):
            alg.MonomialOrder("grlex")
        with pytest.raises(ValueError):
            alg.MonomialOrder("lex", (1, 1))

    @given(
        st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
        st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
        st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
    )
    @settings(max_examples=80, deadline=None)
    def test_additivity(self, a, b, c):
        for order in (alg.LEX, alg.MonomialOrder("grlex", (2, 1))):
            if order.key(a) < order.key(b):
                ac = tuple(x + y for x, y in zip(a, c))
                bc = tuple(x + y for x, y in zip(b, c))
                assert order.key(ac) < order.key(bc)


class TestValuationAxioms:
    def test_multiplicative_on_random_pairs(self):
        rng = random.Random(2024)
        for _ in range(500):
            a, b = random_poly(rng), random_poly(rng)
            va, vb = alg.valuation(a), alg.valuation(b)
            assert alg.valuation(a * b) == tuple(x + y for x, y in zip(va, vb))

    def test_scalar_invariance(self):
        rng = random.Random(3)
        for _ in range(50):
            f = random_poly(rng)
            assert alg.valuation(3 * f) == alg.valuation(f)

    def test_ultrametric_sum(self):
        rng = random.Random(4)
        for _ in range(200):
            a, b = random_poly(rng), random_poly(rng)
            s = a + b
            if s.is_zero:
                continue
            low = min(alg.valuation(a), alg.valuation(b))
            assert alg.valuation(s) >= low

    def test_equal_values_admit_cancellation(self):
        rng = random.Random(5)
        found = 0
        for _ in range(400):
            a, b = random_poly(rng), random_poly(rng)
            va, vb = alg.valuation(a), alg.valuation(b)
            if va != vb:
                continue
            found += 1
            lam = b.coefficient(vb) / a.coefficient(va)
            c = b - lam * a
            if not c.is_zero:
                assert alg.valuation(c) > va
        assert found > 10


class TestSubspaces:
    def test_monomial_examples(self):
        A = g.support_set(2, [(0, 0), (1, 0), (0, 1)])
        assert alg.monomial_subspace(A).dim == 3
        A1 = g.support_set(1, [(0,), (2,)])
        assert alg.monomial_subspace(A1).dim == 2

    def test_dependent_basis_rejected(self):
        with pytest.raises(ValueError):
            alg.subspace(2, [X, Y, XPY])

    def test_product_examples(self):
        l1 = alg.span(2, [ONE2, X])
        l2 = alg.span(2, [ONE2, Y])
        assert alg.product(l1, l2).dim == 4
        lxy = alg.span(2, [ONE2, XPY])
        assert alg.product(lxy, lxy).dim == 3

    def test_product_is_monomial_sumset(self):
        rng = random.Random(6)
        for _ in range(20):
            A = g.support_set(2, {(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(3)})
            B = g.support_set(2, {(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(3)})
            got = alg.product(alg.monomial_subspace(A), alg.monomial_subspace(B))
            assert alg.subspaces_equal(got, alg.monomial_subspace(sg.sumset(A, B)))

    def test_shift_by_monomial_preserves_dim(self):
        lxy = alg.span(2, [ONE2, XPY, X * Y])
        shift = alg.span(2, [L(2, {(2, -1): F(3, 7)})])
        assert alg.product(lxy, shift).dim == lxy.dim

    def test_power_examples(self):
        px = alg.span(1, [L(1, {(0,): 1}), L(1, {(1,): 1})])
        p3 = alg.power(px, 3)
        assert p3.dim == 4
        A = g.support_set(2, [(0, 0), (1, 0), (0, 1)])
        LA = alg.monomial_subspace(A)
        assert alg.subspaces_equal(
            alg.power(LA, 3), alg.monomial_subspace(sg.sumset_power(A, 3))
        )

    def test_power_rank_against_brute_product(self):
        lq = alg.span(2, [ONE2, XPY, X * Y])
        direct = alg.product(lq, lq)
        assert alg.power(lq, 2).dim == direct.dim
        brute = alg.span(2, [f * h for f in lq.basis for h in lq.basis])
        assert brute.dim == direct.dim

    def test_power_rejects_zero(self):
        with pytest.raises(ValueError):
            alg.power(alg.span(2, [ONE2]), 0)


class TestValuationImage:
    def test_already_triangular(self):
        l = alg.subspace(2, [ONE2, X, Y])
        assert set(alg.valuation_image(l).exponents.points) == {(0, 0), (1, 0), (0, 1)}

    def test_reduction_finds_hidden_pivots(self):
        l = alg.span(1, [L(1, {(0,): 1, (1,): 1}), L(1, {(0,): 1, (1,): -1})])
        assert set(alg.valuation_image(l).exponents.points) == {(0,), (1,)}

    def test_three_dims_three_exponents(self):
        l = alg.span(2, [XPY, X - Y if False else L(2, {(1, 0): 1, (0, 1): -1}), ONE2])
        assert len(alg.valuation_image(l)) == 3

    def test_cardinality_matches_dimension(self):
        rng = random.Random(7)
        for _ in range(40):
            polys = [random_poly(rng, terms=2, span=1) for _ in range(3)]
            try:
                l = alg.span(2, polys)
            except ValueError:
                continue
            assert len(alg.valuation_image(l)) == l.dim

    def test_pivot_sets_of_coordinate_subspaces(self):
        # valuation image of a k-dim subspace of span{z^e1..z^em} is a
        # k-element index set, the combinatorial shadow of a pivot cell
        rng = random.Random(8)
        m = 4
        coords = [alg.monomial(m, tuple(int(i == j) for j in range(m))) for i in range(m)]
        for _ in range(30):
            k = rng.randint(1, m)
            vecs = []
            for _ in range(k):
                vecs.append(sum((rng.randint(-3, 3) * c for c in coords), L(m, {})))
            try:
                sub = alg.span(m, vecs)
            except ValueError:
                continue
            img = alg.valuation_image(sub)
            assert len(img) == sub.dim
            units = {tuple(int(i == j) for j in range(m)) for i in range(m)}
            assert set(img.exponents.points) <= units


class TestSemigroupOfSubspace:
    def test_monomial_levels_are_sumsets(self):
        A = g.support_set(2, [(0, 0), (1, 0), (0, 1)])
        sl = alg.semigroup_of_subspace(alg.monomial_subspace(A), k_max=4)
        for k in range(1, 5):
            assert sl.levels[k].points == sg.sumset_power(A, k).points

    def test_segment_subspace_levels(self):
        l = alg.span(2, [ONE2, XPY])
        sl = alg.semigroup_of_subspace(l, k_max=6)
        for k in range(1, 7):
            assert len(sl.levels[k]) == k + 1
        assert sl.check_superadditive()

    def test_superadditive_on_random_subspaces(self):
        rng = random.Random(9)
        done = 0
        while done < 10:
            polys = [random_poly(rng, terms=2, span=1) for _ in range(2)]
            try:
                l = alg.span(2, polys)
            except ValueError:
                continue
            sl = alg.semigroup_of_subspace(l, k_max=4)
            assert sl.check_superadditive()
            done += 1


class TestHilbert:
    def test_simplex_dimension_formula(self):
        A = g.support_set(2, [(0, 0), (1, 0), (0, 1)])
        hs = alg.hilbert_function(alg.monomial_subspace(A), 6)
        assert all(d == (k + 1) * (k + 2) // 2 for k, d in hs)

    def test_square_dimension_formula(self):
        A = g.support_set(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
        hs = alg.hilbert_function(alg.monomial_subspace(A), 5)
        assert all(d == (k + 1) ** 2 for k, d in hs)

    def test_segment_subspace_linear_growth(self):
        hs = alg.hilbert_function(alg.span(2, [ONE2, XPY]), 6)
        assert all(d == k + 1 for k, d in hs)


class TestOkounkovBody:
    def test_simplex_subspace(self):
        A = g.support_set(2, [(0, 0), (1, 0), (0, 1)])
        nb = alg.newton_okounkov_body(alg.monomial_subspace(A), k_max=3)
        assert nb.polytope == g.polytope_of_support(A)

    def test_monomial_bodies_exact_at_every_level(self):
        A = g.support_set(2, [(0, 0), (2, 0), (0, 3)])
        for k in (1, 2, 4):
            nb = alg.newton_okounkov_body(alg.monomial_subspace(A), k_max=k)
            assert nb.polytope == g.polytope_of_support(A)

    def test_segment_body_is_one_dimensional(self):
        nb = alg.newton_okounkov_body(alg.span(2, [ONE2, XPY]), k_max=6)
        assert nb.polytope.affine_dim == 1
        hs = alg.hilbert_function(alg.span(2, [ONE2, XPY]), 6)
        # tail degree of the Hilbert data matches the body dimension
        diffs = [b - a for (_, a), (_, b) in zip(hs, hs[1:])]
        assert all(d == diffs[0] for d in diffs)


class TestSuperadditivity:
    def test_monomial_equality(self):
        A = g.support_set(2, [(0, 0), (1, 0), (0, 1)])
        B = g.support_set(2, [(0, 0), (1, 1)])
        r = alg.superadditivity_check(
            alg.monomial_subspace(A), alg.monomial_subspace(B), k_max=4
        )
        assert r.holds

    def test_mixed_example(self):
        r = alg.superadditivity_check(
            alg.span(2, [ONE2, XPY]), alg.span(2, [ONE2, X]), k_max=5
        )
        assert r.holds

    def test_random_small_pairs(self):
        rng = random.Random(10)
        done = 0
        while done < 15:
            try:
                l1 = alg.span(2, [random_poly(rng, terms=2, span=1) for _ in range(2)])
                l2 = alg.span(2, [random_poly(rng, terms=2, span=1)])
            except ValueError:
                continue
            assert alg.superadditivity_check(l1, l2, k_max=4).holds
            done += 1
