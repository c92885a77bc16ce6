"""Wire formats: JSON parsing and canonical serialization.

Rationals travel as strings "p/q" (or "p"), floats as fixed
17-significant-digit strings, so serialized reports are byte-stable across
runs.  Parse errors raise :class:`SchemaError`, which the CLI maps to its
input-error exit code.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import algebra, bkk, geometry, semigroup, steiner


class SchemaError(ValueError):
    """Input does not match the documented schema."""


def frac_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def str_to_frac(s) -> Fraction:
    if isinstance(s, bool):
        raise SchemaError(f"expected a rational, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise SchemaError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


def float_to_str(x: float) -> str:
    return f"{x:.17g}"


def _expect(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"field {key!r} has the wrong type")
    return val


def polytope_to_json(p: geometry.LatticePolytope) -> dict:
    return {
        "dim": p.ambient_dim,
        "vertices": [[frac_to_str(c) for c in v] for v in p.vertices],
    }


def polytope_from_json(obj) -> geometry.LatticePolytope:
    dim = _expect(obj, "dim", int)
    verts = _expect(obj, "vertices", list)
    if not verts:
        raise SchemaError("polytope needs at least one vertex")
    pts = []
    for v in verts:
        if not isinstance(v, list) or len(v) != dim:
            raise SchemaError("vertex arity does not match dim")
        pts.append(tuple(str_to_frac(c) for c in v))
    try:
        return geometry.convex_hull(pts)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def support_to_json(a: geometry.SupportSet) -> dict:
    return {"dim": a.ambient_dim, "points": [list(p) for p in a.sorted_points()]}


def support_from_json(obj) -> geometry.SupportSet:
    dim = _expect(obj, "dim", int)
    points = _expect(obj, "points", list)
    out = []
    for p in points:
        if not isinstance(p, list) or len(p) != dim or not all(isinstance(c, int) for c in p):
            raise SchemaError("support points must be integer vectors of length dim")
        out.append(tuple(p))
    if not out:
        raise SchemaError("support set must be nonempty")
    try:
        return geometry.support_set(dim, out)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def slice_to_json(s: semigroup.GradedSemigroupSlice) -> dict:
    return {
        "dim": s.ambient_dim,
        "levels": {
            str(k): [list(p) for p in s.levels[k].sorted_points()]
            for k in sorted(s.levels)
        },
    }


def slice_from_json(obj) -> semigroup.GradedSemigroupSlice:
    dim = _expect(obj, "dim", int)
    levels_raw = _expect(obj, "levels", dict)
    levels = {}
    for key, pts in levels_raw.items():
        try:
            k = int(key)
        except ValueError as exc:
            raise SchemaError(f"bad level key {key!r}") from exc
        levels[k] = support_from_json({"dim": dim, "points": pts})
    try:
        return semigroup.GradedSemigroupSlice(dim, levels)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def laurent_to_json(f: algebra.LaurentPolynomial) -> dict:
    return {
        "dim": f.ambient_dim,
        "terms": [
            {"exp": list(e), "coef": frac_to_str(c)} for e, c in f.terms
        ],
    }


def laurent_from_json(obj) -> algebra.LaurentPolynomial:
    dim = _expect(obj, "dim", int)
    terms_raw = _expect(obj, "terms", list)
    terms = {}
    for t in terms_raw:
        exp = _expect(t, "exp", list)
        if len(exp) != dim or not all(isinstance(c, int) for c in exp):
            raise SchemaError("exponents must be integer vectors of length dim")
        terms[tuple(exp)] = str_to_frac(_expect(t, "coef"))
    return algebra.laurent(dim, terms)


def subspace_to_json(l: algebra.LaurentSubspace) -> dict:
    return {"dim": l.ambient_dim, "basis": [laurent_to_json(f) for f in l.basis]}


def subspace_from_json(obj) -> algebra.LaurentSubspace:
    dim = _expect(obj, "dim", int)
    basis = [laurent_from_json(b) for b in _expect(obj, "basis", list)]
    try:
        return algebra.LaurentSubspace(dim, tuple(basis))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def order_from_json(obj) -> algebra.MonomialOrder:
    if obj is None:
        return algebra.LEX
    kind = _expect(obj, "kind", str)
    if kind == "lex":
        return algebra.LEX
    if kind == "grlex":
        grading = _expect(obj, "grading", list)
        if not all(isinstance(w, int) for w in grading):
            raise SchemaError("grading must be a list of integers")
        try:
            return algebra.MonomialOrder("grlex", tuple(grading))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    raise SchemaError(f"unknown order kind {kind!r}")


def polygon_to_json(p: steiner.ConvexPolygon) -> dict:
    return {
        "dim": 2,
        "vertices": [[frac_to_str(c) for c in v] for v in p.vertices],
    }


def polygon_from_json(obj) -> steiner.ConvexPolygon:
    dim = _expect(obj, "dim", int)
    if dim != 2:
        raise SchemaError("polygons are two-dimensional")
    verts = _expect(obj, "vertices", list)
    pts = []
    for v in verts:
        if not isinstance(v, list) or len(v) != 2:
            raise SchemaError("polygon vertices must be pairs")
        pts.append(tuple(str_to_frac(c) for c in v))
    try:
        return steiner.polygon(pts)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def inequality_report_to_json(r) -> dict:
    def side(v):
        return frac_to_str(v) if isinstance(v, Fraction) else str(v)

    return {
        "lhs": side(r.lhs),
        "rhs": side(r.rhs),
        "holds": bool(r.holds),
        "witness": r.witness,
    }


def count_report_to_json(r: bkk.CountReport) -> dict:
    diagnostics = {}
    for key, val in r.diagnostics.items():
        if isinstance(val, float):
            diagnostics[key] = float_to_str(val)
        elif isinstance(val, (list, tuple)):
            diagnostics[key] = list(val)
        else:
            diagnostics[key] = val
    return {
        "predicted": r.predicted,
        "trials": list(r.trials),
        "modal": r.modal,
        "agreed": bool(r.agreed),
        "degenerate_trials": r.degenerate_trials,
        "diagnostics": diagnostics,
    }


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
