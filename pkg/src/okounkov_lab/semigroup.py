"""Sumset powers, graded semigroup slices in N + Z^n, their Newton bodies,
difference-lattice indices via Smith normal form, and the density and
deep-interior asymptotics checked by the acceptance harness.

A graded semigroup is represented by its finite sections S_1..S_kmax; all
asymptotic statements are exercised at finite scale with trend assertions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import geometry
from .geometry import LatticePolytope, SupportSet

INFINITE = math.inf


@dataclass(eq=False)
class GradedSemigroupSlice:
    """Levelwise sections S_1..S_kmax of a graded semigroup in N + Z^n."""

    ambient_dim: int
    levels: dict[int, SupportSet]

    def __post_init__(self):
        if not self.levels:
            raise ValueError("slice needs at least level 1")
        ks = sorted(self.levels)
        if ks != list(range(1, len(ks) + 1)):
            raise ValueError("levels must be contiguous from 1")
        for k, s in self.levels.items():
            if s.ambient_dim != self.ambient_dim:
                raise ValueError("level dimension mismatch")
            if not s.points:
                raise ValueError(f"level {k} is empty; the semigroup is not graded")

    @property
    def k_max(self) -> int:
        return max(self.levels)

    def check_superadditive(self) -> bool:
        """S_j + S_k inside S_{j+k} for all levels that fit; exhaustive."""
        for j in range(1, self.k_max + 1):
            for k in range(j, self.k_max - j + 1):
                target = self.levels[j + k].points
                for p in self.levels[j].points:
                    for q in self.levels[k].points:
                        if tuple(a + b for a, b in zip(p, q)) not in target:
                            return False
        return True


@dataclass(frozen=True)
class ConeSection:
    """Height-one section of the cone spanned by a semigroup slice."""

    polytope: LatticePolytope
    level_used: int


def sumset(a: SupportSet, b: SupportSet) -> SupportSet:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("sumset needs equal dimensions")
    pts = {tuple(x + y for x, y in zip(p, q)) for p in a.points for q in b.points}
    return SupportSet(a.ambient_dim, frozenset(pts))


def sumset_power(a: SupportSet, k: int) -> SupportSet:
    """k-fold sumset by iterated pairwise sums with deduplication."""
    if k < 1:
        raise ValueError("sumset power needs k >= 1")
    out = a
    for _ in range(k - 1):
        out = sumset(out, a)
    return out


def completion(a: SupportSet) -> SupportSet:
    """All lattice points of the convex hull; idempotent."""
    return geometry.lattice_points(geometry.polytope_of_support(a))


def check_cancelation(a: SupportSet, b: SupportSet, c: SupportSet) -> bool:
    """Truth of: compl(compl(A)+compl(C)) = compl(compl(B)+compl(C)) implies
    compl(A) = compl(B)."""
    if not (a.ambient_dim == b.ambient_dim == c.ambient_dim):
        raise ValueError("cancelation check needs equal dimensions")
    ca, cb, cc = completion(a), completion(b), completion(c)
    lhs = completion(sumset(ca, cc))
    rhs = completion(sumset(cb, cc))
    if lhs.points != rhs.points:
        return True  # antecedent fails, implication holds
    return ca.points == cb.points


def smith_normal_form(rows: list[list[int]]) -> list[int]:
    """Nonnegative diagonal of the Smith normal form of an integer matrix.

    Elementary row/column operations over Z; the returned divisors satisfy
    d_1 | d_2 | ... and their product over the nonzero entries is the index
    of the row lattice when the rank is full.
    """
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    divisors = []
    top = 0
    while top < min(nr, nc):
        # locate the smallest nonzero entry in the remaining block
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        pivot = m[top][top]
        dirty = False
        for i in range(top + 1, nr):
            q = m[i][top] // pivot
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[top])]
            if m[i][top] != 0:
                dirty = True
        for j in range(top + 1, nc):
            q = m[top][j] // pivot
            if q:
                for row in m:
                    row[j] -= q * row[top]
            if m[top][j] != 0:
                dirty = True
        if dirty:
            continue  # remainders became new smaller entries; repeat
        # enforce divisibility of the rest of the block by the pivot
        offender = None
        for i in range(top + 1, nr):
            for j in range(top + 1, nc):
                if m[i][j] % pivot != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            m[top] = [x + y for x, y in zip(m[top], m[offender])]
            continue
        divisors.append(abs(pivot))
        top += 1
    divisors += [0] * (min(nr, nc) - len(divisors))
    return divisors


def difference_lattice_index(sets: list[SupportSet]):
    """Index in Z^n of the lattice generated by within-set differences.

    Returns the integer index when the differences span a finite-index
    subgroup, else :data:`INFINITE`.  Index 1 means ample at these levels.
    """
    if not sets:
        raise ValueError("need at least one support set")
    n = sets[0].ambient_dim
    rows = []
    for s in sets:
        if s.ambient_dim != n:
            raise ValueError("support sets of mixed dimensions")
        pts = s.sorted_points()
        if not pts:
            raise ValueError("support sets must be nonempty")
        base = pts[0]
        rows.extend([list(x - y for x, y in zip(p, base)) for p in pts[1:]])
    if not rows:
        return INFINITE if n > 0 else 1
    divisors = smith_normal_form(rows)
    nonzero = [d for d in divisors if d != 0]
    if len(nonzero) < n:
        return INFINITE
    return math.prod(nonzero)


def slice_of_support(a: SupportSet, k_max: int) -> GradedSemigroupSlice:
    """The slice generated by a support set: level k is the k-fold sumset."""
    levels = {}
    cur = a
    for k in range(1, k_max + 1):
        levels[k] = cur
        cur = sumset(cur, a)
    return GradedSemigroupSlice(a.ambient_dim, levels)


def newton_body(s: GradedSemigroupSlice) -> ConeSection:
    """Inner approximation of the Newton body: hull of all S_j / j."""
    pts = []
    for j, level in s.levels.items():
        for p in level.points:
            pts.append(tuple(Fraction(c, j) for c in p))
    return ConeSection(geometry.convex_hull(pts), s.k_max)


@dataclass(frozen=True)
class DensityRow:
    k: int
    ratio: Fraction  # #(S_k) / k^n
    volume: Fraction  # exact volume of the Newton-body approximation at k


@dataclass(frozen=True)
class DensityReport:
    rows: tuple[DensityRow, ...]
    ample: bool
    index: object  # int, or INFINITE when the difference lattice is degenerate

    @property
    def final_ratio(self) -> Fraction:
        return self.rows[-1].ratio

    @property
    def final_volume(self) -> Fraction:
        return self.rows[-1].volume


def density_sequence(s: GradedSemigroupSlice) -> DensityReport:
    """Ratios #(S_k)/k^n against the Newton-body volume, non-ample flagged."""
    n = s.ambient_dim
    index = difference_lattice_index(list(s.levels.values()))
    rows = []
    accumulated: list[tuple[Fraction, ...]] = []
    hull = None
    for k in range(1, s.k_max + 1):
        for p in s.levels[k].points:
            accumulated.append(tuple(Fraction(c, k) for c in p))
        if hull is None:
            hull = geometry.convex_hull(accumulated)
        else:
            hull = geometry.convex_hull(list(hull.vertices) + accumulated)
        accumulated = list(hull.vertices)
        rows.append(
            DensityRow(k, Fraction(len(s.levels[k]), k**n), geometry.volume(hull))
        )
    return DensityReport(tuple(rows), index == 1, index)


@dataclass(frozen=True)
class MarginRow:
    k: int
    deep_missing: int  # lattice points deeper than C absent from S_k
    max_missing_depth: float  # depth d(k) of the deepest absent lattice point


def _depth_to_boundary(point, facets) -> float:
    """Euclidean distance from an interior lattice point to the boundary."""
    best = math.inf
    for a, b in facets:
        norm = math.sqrt(sum(x * x for x in a))
        gap = float(b - sum(x * c for x, c in zip(a, point)))
        best = min(best, gap / norm)
    return best


def interior_margin(s: GradedSemigroupSlice, c) -> list[MarginRow]:
    """Deep-interior deficit of each level against the dilated hull.

    For each k, counts lattice points of k*conv(S_1) lying at Euclidean
    depth greater than C that are missing from S_k.  The deep-interior
    region is shrunk by 1e-9 (depth must exceed C + 1e-9) so float rounding
    can only under-count, never fabricate a deficit.
    """
    c = float(c)
    n = s.ambient_dim
    a1 = s.levels[1]
    index = difference_lattice_index(list(s.levels.values()))
    if index != 1:
        raise ValueError("interior margin requires an ample semigroup")
    for k, level in s.levels.items():
        if level.points != sumset_power(a1, k).points:
            raise ValueError("slice levels must be sumset powers of level 1")
    base = geometry.polytope_of_support(a1)
    rows = []
    for k in range(1, s.k_max + 1):
        dilated = geometry.scale(base, k)
        facets = geometry._core(dilated).facet_inequalities()
        have = s.levels[k].points
        deep_missing = 0
        max_depth = 0.0
        for p in geometry.lattice_points(dilated).points:
            if p in have:
                continue
            depth = _depth_to_boundary(p, facets)
            max_depth = max(max_depth, depth)
            if depth > c + 1e-9:
                deep_missing += 1
        rows.append(MarginRow(k, deep_missing, max_depth))
    return rows


def search_margin_constant(s: GradedSemigroupSlice, candidates=(0, 1, 2, 4, 8)):
    """Smallest candidate C whose deep-interior deficit vanishes from some
    early level on; returns (C, rows) or (None, last rows)."""
    k_floor = max(2, s.k_max // 2)
    rows = None
    for c in candidates:
        rows = interior_margin(s, c)
        if all(r.deep_missing == 0 for r in rows if r.k >= k_floor):
            return c, rows
    return None, rows
