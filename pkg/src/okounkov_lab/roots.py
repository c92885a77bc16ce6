"""Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

Works on dense complex coefficient lists in ascending order.  Initial
guesses sit on a slightly spiraled circle at the Cauchy radius; updates are
Newton corrections damped by the pairwise repulsion term.  Residuals are
validated against a backward-error scale, and non-convergence raises
instead of returning unvalidated roots.
"""

from __future__ import annotations

import cmath


class RootFindingError(RuntimeError):
    """The iteration failed to converge or residuals failed validation."""


def _trim(coeffs, rel=1e-13):
    biggest = max(abs(c) for c in coeffs)
    if biggest == 0:
        raise ValueError("zero polynomial")
    out = list(coeffs)
    while out and abs(out[-1]) <= rel * biggest:
        out.pop()
    if not out:
        raise ValueError("zero polynomial")
    return out


def polyval(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def polyval_with_derivative(coeffs, z):
    p, dp = 0j, 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def residual_scale(coeffs, z):
    """Backward-error scale: sum of |c_i| |z|^i."""
    acc, zp = 0.0, 1.0
    az = abs(z)
    for c in coeffs:
        acc += abs(c) * zp
        zp *= az
    return max(acc, 1e-300)


def aberth_roots(coeffs, tol=1e-12, max_iter=300):
    """All roots of a dense complex polynomial, residual-validated.

    Raises :class:`RootFindingError` when the iteration fails to converge
    or a computed root has a relative residual above 1e-8.
    """
    coeffs = _trim([complex(c) for c in coeffs])
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-coeffs[0] / coeffs[1]]
    lead = coeffs[-1]
    cauchy = 1.0 + max(abs(c / lead) for c in coeffs[:-1])
    radius = cauchy
    if coeffs[0] != 0:
        # geometric mean of the root moduli, a far better cluster estimate
        radius = min(cauchy, abs(coeffs[0] / lead) ** (1.0 / deg))
    zs = [
        radius
        * (1.0 + 0.08 * (k % 7))
        * cmath.exp(2j * cmath.pi * (k + 0.35) / deg + 0.41j)
        for k in range(deg)
    ]
    settled = [False] * deg
    for _ in range(max_iter):
        for i in range(deg):
            if settled[i]:
                continue
            p, dp = polyval_with_derivative(coeffs, zs[i])
            if abs(p) <= 1e-14 * residual_scale(coeffs, zs[i]):
                settled[i] = True
                continue
            if dp == 0:
                zs[i] += 1e-6 * (1 + abs(zs[i]))
                continue
            newton = p / dp
            repulse = sum(1.0 / (zs[i] - zs[j]) for j in range(deg) if j != i)
            denom = 1.0 - newton * repulse
            step = newton if denom == 0 else newton / denom
            zs[i] -= step
            if abs(step) < tol * (1.0 + abs(zs[i])):
                settled[i] = True
        if all(settled):
            break
    else:
        raise RootFindingError("Aberth iteration did not converge")
    for z in zs:
        if abs(polyval(coeffs, z)) > 1e-8 * residual_scale(coeffs, z):
            raise RootFindingError("root failed residual validation")
    return zs
