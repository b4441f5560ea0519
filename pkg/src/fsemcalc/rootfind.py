"""Real roots of univariate real polynomials, refined by bisection.

Seeds come from the companion-matrix eigenvalues; every near-real seed is
polished to ~1e-12 x-accuracy, by bisection when a sign-change bracket can be
found around it (certified), by Newton steps otherwise (even-multiplicity
roots have no bracket, but they are still returned as candidates).

Coefficient lists are ascending: p(x) = c[0] + c[1] x + ... + c[d] x^d.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["real_roots", "poly_eval", "poly_diff", "ternary_max"]

_XTOL = 1e-13


def poly_eval(coeffs, x: float) -> float:
    """Horner evaluation of an ascending coefficient list."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_diff(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _strip(coeffs):
    c = [float(v) for v in coeffs]
    top = max((abs(v) for v in c), default=0.0)
    if top == 0.0:
        return []
    while c and abs(c[-1]) <= 1e-300:
        c.pop()
    return c


def _bisect(coeffs, lo: float, hi: float) -> float:
    flo = poly_eval(coeffs, lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= _XTOL * (1.0 + abs(mid)):
            return mid
        fmid = poly_eval(coeffs, mid)
        if fmid == 0.0:
            return mid
        if (flo < 0.0) != (fmid < 0.0):
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def _newton_polish(coeffs, x: float) -> float:
    dcoeffs = poly_diff(coeffs)
    for _ in range(60):
        fx = poly_eval(coeffs, x)
        dfx = poly_eval(dcoeffs, x)
        if dfx == 0.0:
            break
        step = fx / dfx
        x -= step
        if abs(step) <= _XTOL * (1.0 + abs(x)):
            break
    return x


def _refine(coeffs, seed: float, scale: float) -> float:
    # Try to certify with a sign-change bracket around the seed, widening
    # geometrically; fall back to Newton polish (even-multiplicity roots).
    h = 1e-9 * (1.0 + abs(seed))
    for _ in range(40):
        lo, hi = seed - h, seed + h
        flo, fhi = poly_eval(coeffs, lo), poly_eval(coeffs, hi)
        if (flo < 0.0) != (fhi < 0.0):
            return _bisect(coeffs, lo, hi)
        h *= 4.0
        if h > 0.5 * scale:
            break
    return _newton_polish(coeffs, seed)


def real_roots(coeffs, imag_tol: float = 1e-7):
    """Real roots (refined, deduped, sorted) of an ascending-coefficient poly.

    Near-real companion eigenvalues within ``imag_tol`` (relative) are kept as
    candidates; callers that evaluate a target function at the returned points
    lose nothing from a spurious candidate.
    """
    c = _strip(coeffs)
    if len(c) <= 1:
        return []
    if len(c) == 2:
        return [-c[0] / c[1]]
    if len(c) == 3:
        a2, a1, a0 = c[2], c[1], c[0]
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < 0.0:
            return []
        s = math.sqrt(disc)
        # numerically stable quadratic formula
        q = -0.5 * (a1 + math.copysign(s, a1))
        roots = {q / a2}
        if q != 0.0:
            roots.add(a0 / q)
        elif disc == 0.0:
            roots = {-a1 / (2.0 * a2)}
        return sorted(roots)

    seeds = np.roots(list(reversed(c)))
    scale = 1.0 + max(abs(s) for s in seeds)
    out = []
    for z in seeds:
        if abs(z.imag) <= imag_tol * (1.0 + abs(z.real)):
            out.append(_refine(c, float(z.real), scale))
    out.sort()
    dedup = []
    for r in out:
        if not dedup or abs(r - dedup[-1]) > 1e-11 * (1.0 + abs(r)):
            dedup.append(r)
    return dedup


def ternary_max(fn, lo: float, hi: float, xtol: float = 1e-12) -> float:
    """Argmax of a unimodal fn on [lo, hi] by golden-section search."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > xtol * (1.0 + abs(a) + abs(b)):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)
