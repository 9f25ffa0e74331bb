"""Exact rational linear feasibility via Fourier-Motzkin elimination.

Inequalities are (coeffs, rhs) pairs meaning sum(coeffs[i] * x[i]) >= rhs,
with Fraction arithmetic throughout.  Problem sizes in this package are tiny
(a handful of lattice coordinates), so elimination with deduplication is
plenty fast and gives exact witnesses and exact unboundedness certificates.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _normalize(coeffs, rhs):
    """Scale to coprime integers for dedup; orientation preserved."""
    denoms = [c.denominator for c in coeffs] + [rhs.denominator]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(c * lcm) for c in coeffs] + [int(rhs * lcm)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


class Infeasible(Exception):
    pass


def _as_fractions(ineqs):
    out = []
    for coeffs, rhs in ineqs:
        out.append(([Fraction(c) for c in coeffs], Fraction(rhs)))
    return out


def _eliminate(ineqs, var):
    """Fourier-Motzkin step removing variable ``var``."""
    pos, neg, zero = [], [], []
    for coeffs, rhs in ineqs:
        c = coeffs[var]
        if c > 0:
            pos.append((coeffs, rhs))
        elif c < 0:
            neg.append((coeffs, rhs))
        else:
            zero.append((coeffs, rhs))
    out = list(zero)
    seen = {_normalize(c, r) for c, r in zero}
    for cp, rp in pos:
        for cn, rn in neg:
            a, b = cp[var], -cn[var]
            coeffs = [b * x + a * y for x, y in zip(cp, cn)]
            rhs = b * rp + a * rn
            coeffs[var] = Fraction(0)
            if all(c == 0 for c in coeffs):
                if rhs > 0:
                    raise Infeasible
                continue
            key = _normalize(coeffs, rhs)
            if key not in seen:
                seen.add(key)
                out.append((coeffs, rhs))
    return out


def feasible_point(ineqs, nvars):
    """A rational point satisfying all inequalities, or None.

    ``ineqs`` is a list of (coeffs, rhs) with len(coeffs) == nvars, meaning
    coeffs . x >= rhs.
    """
    systems = [_as_fractions(ineqs)]
    try:
        for var in range(nvars - 1, -1, -1):
            systems.append(_eliminate(systems[-1], var))
    except Infeasible:
        return None
    for coeffs, rhs in systems[-1]:
        if rhs > 0:
            return None
    point = [Fraction(0)] * nvars
    # systems[n-1-k] still contains variables 0..k; assign k = 0, 1, ... using
    # the already-fixed lower coordinates
    for var in range(0, nvars):
        system = systems[nvars - 1 - var]
        lo, hi = None, None
        for coeffs, rhs in system:
            c = coeffs[var]
            if c == 0:
                continue
            bound = (rhs - sum(coeffs[j] * point[j] for j in range(0, var))) / c
            if c > 0:
                if lo is None or bound > lo:
                    lo = bound
            else:
                if hi is None or bound < hi:
                    hi = bound
        if lo is not None and hi is not None and lo > hi:
            return None
        if lo is not None:
            point[var] = lo
        elif hi is not None:
            point[var] = hi
        else:
            point[var] = Fraction(0)
    return point


def linear_range(ineqs, nvars, objective):
    """Exact range of objective . x over the polyhedron.

    Returns (lo, hi) where either end is a Fraction or None (unbounded), or
    None if the polyhedron is empty.
    """
    # introduce t = objective . x as variable index nvars, then eliminate x
    ext = []
    for coeffs, rhs in _as_fractions(ineqs):
        ext.append((coeffs + [Fraction(0)], rhs))
    obj = [Fraction(c) for c in objective]
    ext.append((obj + [Fraction(-1)], Fraction(0)))
    ext.append(([-c for c in obj] + [Fraction(1)], Fraction(0)))
    try:
        for var in range(nvars - 1, -1, -1):
            ext = _eliminate(ext, var)
    except Infeasible:
        return None
    lo, hi = None, None
    for coeffs, rhs in ext:
        c = coeffs[nvars]
        if c == 0:
            if rhs > 0:
                return None
            continue
        bound = rhs / c
        if c > 0:
            if lo is None or bound > lo:
                lo = bound
        else:
            if hi is None or bound < hi:
                hi = bound
    if lo is not None and hi is not None and lo > hi:
        return None
    return (lo, hi)


def integer_scale(point):
    """Clear denominators of a rational vector, returning an integer vector."""
    lcm = 1
    for c in point:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    return [int(c * lcm) for c in point]
