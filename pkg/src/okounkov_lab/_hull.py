"""Exact convex hull engine for rational points in dimensions 1 through 4.

Everything runs on integer-lifted coordinates: the caller clears the common
denominator once, so all predicates below are exact integer arithmetic.  The
engine returns a triangulated boundary (used for fan-volume computation), the
deduplicated set of supporting facet planes (used for membership tests), and
the extreme points, recovered by an active-constraint rank test.

Dimension dispatch:

* d = 1: trivial min/max.
* d = 2: Andrew monotone chain.
* d = 3, 4: incremental beneath-beyond insertion with strict visibility.
  Coplanar degeneracies are legal; the boundary triangulation may contain
  coplanar adjacent simplices and non-extreme corners, neither of which
  affects volumes, membership tests, or the extreme-point recovery.

An optional floating-point prefilter (Qhull) culls clearly interior
candidates before the exact pass; every culled point is re-checked against
the exact facet planes, and the cull is abandoned on any violation, so the
result never depends on floating-point rounding.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import gcd

try:  # optional fast path; exactness never depends on it
    import numpy as _np
    from scipy.spatial import ConvexHull as _QHull
    from scipy.spatial import QhullError as _QhullError

    _HAVE_QHULL = True
except Exception:  # pragma: no cover
    _HAVE_QHULL = False

_PREFILTER_MIN_POINTS = 80


@dataclass
class HullResult:
    """Boundary description of a full-dimensional lifted hull."""

    dim: int
    planes: list[tuple[tuple[int, ...], int]]  # hull == {x : a.x <= b} for all (a, b)
    simplices: list[tuple[int, ...]]  # index tuples into the input points, d each
    vertex_indices: list[int]  # extreme points, sorted


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _det(rows):
    """Determinant of a small square integer matrix (Laplace expansion)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _det(minor)
        total += term if j % 2 == 0 else -term
    return total


def _gcd_reduce_plane(a, b):
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    g = gcd(g, abs(b))
    if g > 1:
        a = tuple(x // g for x in a)
        b = b // g
    return a, b


def _plane_through(points, idxs):
    """Hyperplane through ``d`` affinely independent points, as (normal, offset).

    The normal is the vector of signed maximal minors of the difference
    matrix; it is zero iff the points are affinely dependent.
    """
    base = points[idxs[0]]
    rows = [_sub(points[i], base) for i in idxs[1:]]
    d = len(base)
    normal = []
    for c in range(d):
        minor = [row[:c] + row[c + 1:] for row in rows]
        m = _det(minor) if minor else 1
        normal.append(m if c % 2 == 0 else -m)
    a = tuple(normal)
    if all(x == 0 for x in a):
        return None
    return a, _dot(a, base)


def _int_rank(rows):
    """Rank of an integer matrix via fraction-free Gaussian elimination."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col] != 0:
                f1, f2 = pr[col], rows[i][col]
                rows[i] = [f1 * x - f2 * y for x, y in zip(rows[i], pr)]
        rank += 1
        col += 1
    return rank


def _initial_simplex(points, d):
    """Indices of d+1 affinely independent points (input has affine rank d)."""
    chosen = [0]
    echelon: list[list[int]] = []
    base = points[0]
    for i in range(1, len(points)):
        row = list(_sub(points[i], base))
        for er in echelon:
            c = next(j for j in range(d) if er[j] != 0)
            if row[c] != 0:
                f1, f2 = er[c], row[c]
                row = [f1 * x - f2 * y for x, y in zip(row, er)]
        if any(x != 0 for x in row):
            echelon.append(row)
            chosen.append(i)
            if len(chosen) == d + 1:
                return chosen
    raise ValueError("points do not span the expected dimension")


def _hull_1d(points):
    lo = min(range(len(points)), key=lambda i: points[i][0])
    hi = max(range(len(points)), key=lambda i: points[i][0])
    planes = [((1,), points[hi][0]), ((-1,), -points[lo][0])]
    verts = sorted({lo, hi})
    simplices = [(lo,), (hi,)]
    return HullResult(1, planes, simplices, verts)


def _hull_2d(points):
    """Monotone chain; points are deduplicated and lexicographically sorted."""
    idx = list(range(len(points)))

    def cross(o, a, b):
        return (points[a][0] - points[o][0]) * (points[b][1] - points[o][1]) - (
            points[a][1] - points[o][1]
        ) * (points[b][0] - points[o][0])

    lower: list[int] = []
    for i in idx:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(idx):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    ring = lower[:-1] + upper[:-1]  # counterclockwise
    planes = []
    simplices = []
    for k in range(len(ring)):
        i, j = ring[k], ring[(k + 1) % len(ring)]
        e = _sub(points[j], points[i])
        a = (e[1], -e[0])  # outward normal of a CCW ring
        planes.append(_gcd_reduce_plane(a, _dot(a, points[i])))
        simplices.append((i, j))
    return HullResult(2, planes, simplices, sorted(ring))


def _facet_key(vs):
    return tuple(sorted(vs))


def _hull_incremental(points, d):
    """Beneath-beyond insertion for d in {3, 4}."""
    start = _initial_simplex(points, d)
    centre = tuple(sum(points[i][c] for i in start) for c in range(d))
    weight = d + 1

    def oriented(idxs):
        pl = _plane_through(points, idxs)
        if pl is None:
            raise AssertionError("degenerate facet candidate")
        a, b = pl
        s = _dot(a, centre) - weight * b
        if s > 0:
            a, b = _neg(a), -b
        elif s == 0:
            raise AssertionError("interior reference on a facet plane")
        return a, b

    facets: dict[tuple[int, ...], tuple[tuple[int, ...], int]] = {}
    for omit in range(d + 1):
        vs = _facet_key(start[:omit] + start[omit + 1:])
        facets[vs] = oriented(vs)

    in_start = set(start)
    for i in range(len(points)):
        if i in in_start:
            continue
        p = points[i]
        visible = [vs for vs, (a, b) in facets.items() if _dot(a, p) > b]
        if not visible:
            continue
        ridge_count: Counter = Counter()
        for vs in visible:
            for r in combinations(vs, d - 1):
                ridge_count[r] += 1
        for vs in visible:
            del facets[vs]
        for r, cnt in ridge_count.items():
            if cnt != 1:
                continue
            vs_new = _facet_key(r + (i,))
            facets[vs_new] = oriented(vs_new)

    plane_set = {_gcd_reduce_plane(a, b) for a, b in facets.values()}
    planes = sorted(plane_set)
    simplices = sorted(facets.keys())
    corner_candidates = sorted({i for vs in simplices for i in vs})
    verts = []
    for i in corner_candidates:
        active = [a for a, b in planes if _dot(a, points[i]) == b]
        if len(active) >= d and _int_rank(active) == d:
            verts.append(i)
    return HullResult(d, planes, simplices, verts)


def _prefilter(points, d):
    """Float cull of clearly interior points; returns kept indices or None."""
    if not _HAVE_QHULL or d < 2 or len(points) < _PREFILTER_MIN_POINTS:
        return None
    arr = _np.array(points, dtype=float)
    try:
        qh = _QHull(arr)
    except (_QhullError, ValueError):  # pragma: no cover - degenerate input
        return None
    normals = qh.equations[:, :-1]
    offsets = qh.equations[:, -1]
    margins = arr @ normals.T + offsets  # <= 0 means inside that facet
    scale = max(1.0, float(_np.abs(arr).max()))
    keep = margins.max(axis=1) > -1e-7 * scale
    keep[qh.vertices] = True
    kept = [i for i in range(len(points)) if keep[i]]
    if len(kept) == len(points):
        return None
    return kept


def hull_of_lifted(points, d):
    """Hull of deduplicated, lex-sorted integer points of affine rank d >= 1.

    Returns a :class:`HullResult` whose indices refer to ``points``.
    """
    if d == 1:
        return _hull_1d(points)
    if d == 2:
        return _hull_2d(points)
    kept = _prefilter(points, d)
    if kept is None:
        return _hull_incremental(points, d)
    sub = [points[i] for i in kept]
    try:
        res = _hull_incremental(sub, d)
    except (AssertionError, ValueError):
        return _hull_incremental(points, d)
    dropped = sorted(set(range(len(points))) - set(kept))
    for i in dropped:
        p = points[i]
        if any(_dot(a, p) > b for a, b in res.planes):
            return _hull_incremental(points, d)  # unsound cull, redo exactly
    remap = {local: kept[local] for local in range(len(sub))}
    return HullResult(
        d,
        res.planes,
        [tuple(remap[j] for j in vs) for vs in res.simplices],
        sorted(remap[j] for j in res.vertex_indices),
    )


def hull_volume_lifted(points, result):
    """n! times the lifted volume: sum of |det| over the boundary fan."""
    base = points[result.vertex_indices[0]]
    total = 0
    for vs in result.simplices:
        rows = [_sub(points[j], base) for j in vs]
        total += abs(_det(rows))
    return total
