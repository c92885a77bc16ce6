"""Mixed volumes of rational polytopes and the convex-geometric inequality
suite: Alexandrov-Fenchel, generalized Brunn-Minkowski and the planar
isoperimetric inequality.

The production algorithm is inclusion-exclusion over subset Minkowski sums;
an independent oracle recovers the same coefficient by exact polynomial
interpolation of the volume polynomial.  Equal bodies inside a tuple are
grouped, so a body repeated k times costs one dilation instead of 2**k
Minkowski sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from . import geometry
from .geometry import LatticePolytope
from .radicals import compare_root_sums

MAX_INTERP_DIM = 3


@dataclass(frozen=True)
class BodyTuple:
    """An n-tuple of bodies in R^n, the argument of the mixed volume."""

    bodies: tuple[LatticePolytope, ...]

    def __post_init__(self):
        _check_tuple(self.bodies)


@dataclass(frozen=True)
class MultiplicityTuple:
    """Bodies with repetition counts plus fixed bodies, filling n slots."""

    multiplicities: tuple[int, ...]
    repeated: tuple[LatticePolytope, ...]
    fixed: tuple[LatticePolytope, ...]

    def __post_init__(self):
        if len(self.multiplicities) != len(self.repeated):
            raise ValueError("one multiplicity per repeated body")
        if any(k < 1 for k in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        bodies = self.expand()
        _check_tuple(bodies)

    def expand(self) -> tuple[LatticePolytope, ...]:
        out = []
        for k, body in zip(self.multiplicities, self.repeated):
            out.extend([body] * k)
        out.extend(self.fixed)
        return tuple(out)


@dataclass(frozen=True)
class InequalityReport:
    """Both sides of a checked inequality plus the verdict.

    For exact-rational checks lhs and rhs are Fractions; root-sum checks
    carry 17-significant-digit decimal strings with the exact ingredients
    in the witness.
    """

    lhs: object
    rhs: object
    holds: bool
    witness: dict


def _check_tuple(bodies):
    if not bodies:
        raise ValueError("empty body tuple")
    n = bodies[0].ambient_dim
    if any(b.ambient_dim != n for b in bodies):
        raise ValueError("bodies of mixed ambient dimensions")
    if len(bodies) != n:
        raise ValueError(f"a mixed volume in R^{n} takes exactly {n} bodies")
    if n > geometry.MAX_DIM:
        raise ValueError(f"ambient dimension must be at most {geometry.MAX_DIM}")


def _as_bodies(t) -> tuple[LatticePolytope, ...]:
    if isinstance(t, BodyTuple):
        return t.bodies
    if isinstance(t, MultiplicityTuple):
        return t.expand()
    bodies = tuple(t)
    _check_tuple(bodies)
    return bodies


class _SumVolumeCache:
    """Exact volumes of nonnegative integer combinations of distinct bodies."""

    def __init__(self, bodies: tuple[LatticePolytope, ...]):
        self.bodies = bodies
        self._polytopes: dict[tuple[int, ...], LatticePolytope] = {}
        self._volumes: dict[tuple[int, ...], Fraction] = {}

    def polytope(self, counts: tuple[int, ...]) -> LatticePolytope:
        got = self._polytopes.get(counts)
        if got is not None:
            return got
        active = [i for i, c in enumerate(counts) if c]
        if not active:
            raise ValueError("empty combination")
        i = active[0]
        piece = geometry.scale(self.bodies[i], counts[i])
        if len(active) > 1:
            rest = list(counts)
            rest[i] = 0
            piece = geometry.minkowski_sum(piece, self.polytope(tuple(rest)))
        self._polytopes[counts] = piece
        return piece

    def volume(self, counts: tuple[int, ...]) -> Fraction:
        got = self._volumes.get(counts)
        if got is None:
            got = geometry.volume(self.polytope(counts))
            self._volumes[counts] = got
        return got


def _grouped(bodies):
    """Distinct bodies with multiplicities, preserving first-seen order."""
    distinct: list[LatticePolytope] = []
    mult: list[int] = []
    for b in bodies:
        for i, d in enumerate(distinct):
            if d == b:
                mult[i] += 1
                break
        else:
            distinct.append(b)
            mult.append(1)
    return tuple(distinct), tuple(mult)


def _mixed_volume_grouped(distinct, mult, cache: _SumVolumeCache) -> Fraction:
    """Inclusion-exclusion over count vectors c with 0 <= c_i <= mult_i.

    Choosing c_i of the mult_i copies of body i contributes a binomial
    weight, and the summand volume only depends on the counts.
    """
    n = sum(mult)
    total = Fraction(0)
    for counts in iproduct(*(range(m + 1) for m in mult)):
        size = sum(counts)
        if size == 0:
            continue
        weight = 1
        for c, m in zip(counts, mult):
            weight *= math.comb(m, c)
        term = weight * cache.volume(counts)
        total += term if (n - size) % 2 == 0 else -term
    return total / math.factorial(n)


def mixed_volume(t) -> Fraction:
    """V(D_1, ..., D_n) by inclusion-exclusion; exact and symmetric."""
    bodies = _as_bodies(t)
    distinct, mult = _grouped(bodies)
    return _mixed_volume_grouped(distinct, mult, _SumVolumeCache(distinct))


def mixed_volume_repeated(t: MultiplicityTuple) -> Fraction:
    """Expand repetition counts and delegate to :func:`mixed_volume`."""
    return mixed_volume(t.expand())


def _monomials(n: int, degree: int):
    """Exponent vectors of total degree `degree` in n variables."""
    if n == 1:
        return [(degree,)]
    out = []
    for first in range(degree + 1):
        for rest in _monomials(n - 1, degree - first):
            out.append((first,) + rest)
    return out


def _solve_exact(rows, rhs):
    """Solve a consistent (possibly overdetermined) rational linear system."""
    m, k = len(rows), len(rows[0])
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    pivots = []
    rank = 0
    for col in range(k):
        piv = next((i for i in range(rank, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        pr = aug[rank]
        inv = Fraction(1) / pr[col]
        aug[rank] = [x * inv for x in pr]
        for i in range(m):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    if rank < k:
        raise ValueError("interpolation system is rank deficient")
    for i in range(rank, m):
        if aug[i][k] != 0:
            raise ValueError("volume samples are not a degree-n polynomial")
    sol = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        sol[col] = aug[r][k]
    return sol


def mixed_volume_interp(t) -> Fraction:
    """Interpolation oracle for the mixed volume (dimensions 1 to 3).

    Samples Vol(l_1 D_1 + ... + l_n D_n) on the grid {0..n}^n, solves for
    the homogeneous degree-n volume polynomial exactly, and reads off the
    coefficient of l_1 * ... * l_n divided by n!.
    """
    bodies = _as_bodies(t)
    n = bodies[0].ambient_dim
    if n > MAX_INTERP_DIM:
        raise ValueError("interpolation oracle supports dimensions 1..3")
    monos = _monomials(n, n)
    rows, rhs = [], []
    for lams in iproduct(range(n + 1), repeat=n):
        rows.append(
            [Fraction(math.prod(l**e for l, e in zip(lams, mono))) for mono in monos]
        )
        pieces = [geometry.scale(b, l) for b, l in zip(bodies, lams)]
        body = pieces[0]
        for piece in pieces[1:]:
            body = geometry.minkowski_sum(body, piece)
        rhs.append(geometry.volume(body))
    coeffs = _solve_exact(rows, rhs)
    target = tuple([1] * n)
    return coeffs[monos.index(target)] / math.factorial(n)


def _witness_bodies(**named) -> dict:
    return {
        name: [[str(c) for c in v] for v in body.vertices]
        for name, body in named.items()
    }


def check_alexandrov_fenchel(t) -> InequalityReport:
    """Check V(D1,D2,rest)^2 >= V(D1,D1,rest) * V(D2,D2,rest) exactly."""
    bodies = _as_bodies(t)
    d1, d2, rest = bodies[0], bodies[1], bodies[2:]
    distinct, _ = _grouped(bodies)
    cache = _SumVolumeCache(distinct)

    def mv(tup):
        dis, mul = _grouped(tup)
        # reuse the shared cache by expressing counts in the master list
        counts_map = {}
        for d, m in zip(dis, mul):
            idx = next(i for i, b in enumerate(distinct) if b == d)
            counts_map[idx] = m
        master_mult = tuple(counts_map.get(i, 0) for i in range(len(distinct)))
        live = [i for i, m in enumerate(master_mult) if m]
        sub_distinct = tuple(distinct[i] for i in live)
        sub_mult = tuple(master_mult[i] for i in live)
        sub_cache = _SubCache(cache, live)
        return _mixed_volume_grouped(sub_distinct, sub_mult, sub_cache)

    v12 = mv((d1, d2) + rest)
    v11 = mv((d1, d1) + rest)
    v22 = mv((d2, d2) + rest)
    lhs, rhs = v12 * v12, v11 * v22
    return InequalityReport(
        lhs=lhs,
        rhs=rhs,
        holds=lhs >= rhs,
        witness={
            "mixed_volumes": {"v12": str(v12), "v11": str(v11), "v22": str(v22)},
            **_witness_bodies(
                **{f"body{i + 1}": b for i, b in enumerate(bodies)}
            ),
        },
    )


class _SubCache:
    """View of a master sum-volume cache restricted to some body indices."""

    def __init__(self, master: _SumVolumeCache, live: list[int]):
        self.master = master
        self.live = live

    def volume(self, counts):
        master_counts = [0] * len(self.master.bodies)
        for i, c in zip(self.live, counts):
            master_counts[i] = c
        return self.master.volume(tuple(master_counts))


def check_generalized_bm(m: int, d1: LatticePolytope, d2: LatticePolytope, fixed) -> InequalityReport:
    """Check F(D1) + F(D2) <= F(D1 + D2) for F(D) = V(m*D, fixed)^(1/m)."""
    fixed = tuple(fixed)
    n = d1.ambient_dim
    if not 0 < m <= n:
        raise ValueError("repetition count m must satisfy 0 < m <= n")
    if len(fixed) != n - m:
        raise ValueError(f"expected {n - m} fixed bodies, got {len(fixed)}")
    dsum = geometry.minkowski_sum(d1, d2)
    a = mixed_volume_repeated(MultiplicityTuple((m,), (d1,), fixed))
    b = mixed_volume_repeated(MultiplicityTuple((m,), (d2,), fixed))
    c = mixed_volume_repeated(MultiplicityTuple((m,), (dsum,), fixed))
    holds = compare_root_sums([a, b], [c], m) <= 0
    lhs = float(a) ** (1 / m) + float(b) ** (1 / m)
    rhs = float(c) ** (1 / m)
    return InequalityReport(
        lhs=f"{lhs:.17g}",
        rhs=f"{rhs:.17g}",
        holds=holds,
        witness={
            "m": m,
            "mixed_volume_powers": {"F1^m": str(a), "F2^m": str(b), "Fsum^m": str(c)},
            **_witness_bodies(body1=d1, body2=d2, body_sum=dsum),
        },
    )


def check_isoperimetric(d1: LatticePolytope, d2: LatticePolytope) -> InequalityReport:
    """Planar inequality Area(D1) Area(D2) <= A(D1, D2)^2, all exact.

    Also verifies the expansion Area(D1+D2) = Area(D1) + 2A + Area(D2) with
    the mixed area recomputed by the interpolation oracle, so the identity
    is not a restatement of the inclusion-exclusion formula.
    """
    if d1.ambient_dim != 2 or d2.ambient_dim != 2:
        raise ValueError("isoperimetric check is planar only")
    area1, area2 = geometry.volume(d1), geometry.volume(d2)
    mixed = mixed_volume((d1, d2))
    mixed_oracle = mixed_volume_interp((d1, d2))
    total = geometry.volume(geometry.minkowski_sum(d1, d2))
    identity = total == area1 + 2 * mixed_oracle + area2
    lhs, rhs = area1 * area2, mixed * mixed
    return InequalityReport(
        lhs=lhs,
        rhs=rhs,
        holds=bool(lhs <= rhs and identity and mixed == mixed_oracle),
        witness={
            "mixed_area": str(mixed),
            "mixed_area_interp": str(mixed_oracle),
            "expansion_identity": identity,
            **_witness_bodies(body1=d1, body2=d2),
        },
    )
