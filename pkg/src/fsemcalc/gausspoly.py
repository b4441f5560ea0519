"""Exact calculus on finite sums of (polynomial x anisotropic Gaussian) terms.

Functions of the form  sum_k q_k(x) * exp(-sum_i a_{k,i} x_i^2)  with every
decay rate a_{k,i} > 0 are rapidly decreasing, and the class is closed under
addition, scaling, multiplication, powers, monomial multiplication, partial
differentiation and (for n = 1) the Fourier transform.  That closure is what
makes exact seminorm evaluation possible downstream.

Coefficients are kept as exact rationals (Fraction/int) as long as every
input is rational; irrational constants (sqrt(pi), Fourier phases) switch the
affected coefficients to float/complex.  Suprema are computed in float from
certified critical points; see :meth:`GaussPolyFn.sup_abs`.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import multiindex as mi
from .rootfind import real_roots, ternary_max

__all__ = ["SparsePoly", "GaussPolyTerm", "GaussPolyFn", "leibniz_expand", "leibniz_summands"]

# Tolerance for merging float decay vectors and for approx-equality queries.
MERGE_TOL = 1e-12

# Shared candidate-point cache for 1-d suprema, keyed on normalized data.
_CANDIDATE_CACHE: dict = {}


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


def _inexact(c):
    return float(c) if isinstance(c, Fraction) else c


def _cadd(a, b):
    if _is_exact(a) and _is_exact(b):
        return Fraction(a) + Fraction(b)
    return _inexact(a) + _inexact(b)


def _cmul(a, b):
    if _is_exact(a) and _is_exact(b):
        return Fraction(a) * Fraction(b)
    return _inexact(a) * _inexact(b)


def _cneg(a):
    return -a


def _is_zero_coeff(c) -> bool:
    return c == 0


def _creal(c):
    return c.real if isinstance(c, complex) else c


def _cimag(c):
    return c.imag if isinstance(c, complex) else 0


class SparsePoly:
    """Sparse multivariate polynomial: exponent tuple -> coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for exp, c in terms.items():
                if not _is_zero_coeff(c):
                    if len(exp) != n:
                        raise ValueError(f"exponent {exp} has wrong dimension for n={n}")
                    self.terms[tuple(exp)] = c

    @classmethod
    def const(cls, n: int, c):
        return cls(n, {mi.zero(n): c})

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "SparsePoly") -> "SparsePoly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = _cadd(out.get(exp, 0), c)
            if _is_zero_coeff(s):
                out.pop(exp, None)
            else:
                out[exp] = s
        return SparsePoly(self.n, out)

    def neg(self) -> "SparsePoly":
        return SparsePoly(self.n, {e: _cneg(c) for e, c in self.terms.items()})

    def scale(self, a) -> "SparsePoly":
        if _is_zero_coeff(a):
            return SparsePoly(self.n)
        return SparsePoly(self.n, {e: _cmul(a, c) for e, c in self.terms.items()})

    def mul(self, other: "SparsePoly") -> "SparsePoly":
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mi.add(e1, e2)
                s = _cadd(out.get(e, 0), _cmul(c1, c2))
                if _is_zero_coeff(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return SparsePoly(self.n, out)

    def monomial_mul(self, lam) -> "SparsePoly":
        return SparsePoly(self.n, {mi.add(e, lam): c for e, c in self.terms.items()})

    def diff(self, i: int) -> "SparsePoly":
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = _cmul(e[i], c)
        return SparsePoly(self.n, out)

    def eval(self, x):
        acc = 0
        for e, c in self.terms.items():
            v = _inexact(c)
            for xi, ei in zip(x, e):
                if ei:
                    v = v * xi**ei
            acc = acc + v
        return acc

    def degree(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def max_abs_coeff(self) -> float:
        return max((abs(complex(_inexact(c))) for c in self.terms.values()), default=0.0)

    def coeff_lists_1d(self):
        """Ascending real/imag float coefficient lists (n = 1 only)."""
        d = self.degree(0)
        re = [0.0] * (d + 1)
        im = [0.0] * (d + 1)
        for e, c in self.terms.items():
            v = _inexact(c)
            re[e[0]] = float(_creal(v))
            im[e[0]] = float(_cimag(v))
        return re, im

    def __repr__(self):
        return f"SparsePoly(n={self.n}, {self.terms!r})"


class GaussPolyTerm:
    """One summand q(x) * exp(-sum_i a_i x_i^2) with every a_i > 0."""

    __slots__ = ("poly", "decay", "_flat")

    def __init__(self, poly: SparsePoly, decay):
        decay = tuple(decay)
        if len(decay) != poly.n:
            raise ValueError("decay vector dimension mismatch")
        for a in decay:
            if not (a > 0):
                raise ValueError(f"decay rates must be > 0, got {decay}")
        self.poly = poly
        self.decay = decay
        self._flat = None

    def flat1(self):
        """(a, re_desc, im_desc) float Horner data, cached (n = 1 only)."""
        if self._flat is None:
            re, im = self.poly.coeff_lists_1d()
            self._flat = (float(self.decay[0]), re[::-1], im[::-1])
        return self._flat

    def __repr__(self):
        return f"GaussPolyTerm({self.poly!r}, decay={self.decay!r})"


def _decay_close(a, b) -> bool:
    return all(
        (x == y) if (_is_exact(x) and _is_exact(y)) else abs(float(x) - float(y)) <= MERGE_TOL * (1.0 + abs(float(x)))
        for x, y in zip(a, b)
    )


def _decay_add(a, b):
    return tuple(Fraction(x) + Fraction(y) if (_is_exact(x) and _is_exact(y)) else float(x) + float(y) for x, y in zip(a, b))


class GaussPolyFn:
    """Finite sum of GaussPolyTerm, canonicalized by merging equal decays.

    The empty sum is the origin of the function space.  Instances are
    immutable by convention; every operation returns a new function.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=()):
        self.n = n
        merged: list[GaussPolyTerm] = []
        for t in terms:
            if t.poly.n != n:
                raise ValueError("term dimension mismatch")
            if t.poly.is_zero():
                continue
            for i, m in enumerate(merged):
                if _decay_close(m.decay, t.decay):
                    s = m.poly.add(t.poly)
                    if s.is_zero():
                        merged.pop(i)
                    else:
                        merged[i] = GaussPolyTerm(s, m.decay)
                    break
            else:
                merged.append(t)
        self.terms = tuple(merged)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int = 1) -> "GaussPolyFn":
        return cls(n, ())

    @classmethod
    def from_term(cls, poly_terms: dict, decay) -> "GaussPolyFn":
        decay = tuple(decay)
        n = len(decay)
        return cls(n, (GaussPolyTerm(SparsePoly(n, poly_terms), decay),))

    @classmethod
    def gaussian(cls, decay=(1,)) -> "GaussPolyFn":
        """exp(-sum a_i x_i^2)."""
        n = len(tuple(decay))
        return cls.from_term({mi.zero(n): Fraction(1)}, decay)

    # -- algebra ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "GaussPolyFn") -> "GaussPolyFn":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return GaussPolyFn(self.n, self.terms + other.terms)

    def sub(self, other: "GaussPolyFn") -> "GaussPolyFn":
        return self.add(other.scale(-1))

    def scale(self, a) -> "GaussPolyFn":
        if _is_zero_coeff(a):
            return GaussPolyFn.zero(self.n)
        return GaussPolyFn(self.n, tuple(GaussPolyTerm(t.poly.scale(a), t.decay) for t in self.terms))

    def mul(self, other: "GaussPolyFn") -> "GaussPolyFn":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out = []
        for t1 in self.terms:
            for t2 in other.terms:
                out.append(GaussPolyTerm(t1.poly.mul(t2.poly), _decay_add(t1.decay, t2.decay)))
        return GaussPolyFn(self.n, out)

    def pow(self, m: int) -> "GaussPolyFn":
        if m < 1:
            raise ValueError("power must be >= 1 (constants are not rapidly decreasing)")
        out = self
        for _ in range(m - 1):
            out = out.mul(self)
        return out

    def monomial_mul(self, lam) -> "GaussPolyFn":
        lam = mi.check(lam)
        if len(lam) != self.n:
            raise ValueError("dimension mismatch")
        return GaussPolyFn(self.n, tuple(GaussPolyTerm(t.poly.monomial_mul(lam), t.decay) for t in self.terms))

    def diff1(self, i: int) -> "GaussPolyFn":
        """Single partial derivative d/dx_i; stays in class."""
        out = []
        for t in self.terms:
            # d/dx_i [q e^{-a x_i^2 - ...}] = (dq/dx_i - 2 a_i x_i q) e^{...}
            ai = t.decay[i]
            lam = [0] * self.n
            lam[i] = 1
            p = t.poly.diff(i).add(t.poly.monomial_mul(tuple(lam)).scale(_cmul(-2, ai)))
            out.append(GaussPolyTerm(p, t.decay))
        return GaussPolyFn(self.n, out)

    def diff(self, beta) -> "GaussPolyFn":
        beta = mi.check(beta)
        if len(beta) != self.n:
            raise ValueError("dimension mismatch")
        out = self
        for i, b in enumerate(beta):
            for _ in range(b):
                out = out.diff1(i)
        return out

    def reflect(self) -> "GaussPolyFn":
        """x -> -x (flips sign of odd-total-degree monomials)."""
        out = []
        for t in self.terms:
            p = SparsePoly(self.n, {e: c if mi.order(e) % 2 == 0 else _cneg(c) for e, c in t.poly.terms.items()})
            out.append(GaussPolyTerm(p, t.decay))
        return GaussPolyFn(self.n, out)

    def conjugate(self) -> "GaussPolyFn":
        def conj(c):
            return c.conjugate() if isinstance(c, complex) else c

        return GaussPolyFn(
            self.n,
            tuple(GaussPolyTerm(SparsePoly(self.n, {e: conj(c) for e, c in t.poly.terms.items()}), t.decay) for t in self.terms),
        )

    # -- analysis -----------------------------------------------------------

    def eval(self, x) -> complex:
        if len(x) != self.n:
            raise ValueError("dimension mismatch")
        if self.n == 1:
            return self._eval1(float(x[0]))
        acc = 0j
        for t in self.terms:
            expo = -sum(float(a) * xi * xi for a, xi in zip(t.decay, x))
            acc += complex(t.poly.eval(x)) * math.exp(expo)
        return acc

    def _eval1(self, x: float) -> complex:
        out_re = 0.0
        out_im = 0.0
        for t in self.terms:
            a, re_desc, im_desc = t.flat1()
            vr = 0.0
            vi = 0.0
            for c in re_desc:
                vr = vr * x + c
            for c in im_desc:
                vi = vi * x + c
            e = math.exp(-a * x * x)
            out_re += vr * e
            out_im += vi * e
        return complex(out_re, out_im)

    def has_real_coeffs(self, tol: float = 0.0) -> bool:
        return all(abs(_cimag(_inexact(c))) <= tol for t in self.terms for c in t.poly.terms.values())

    def term_count(self) -> int:
        return len(self.terms)

    def _envelope(self, x: float) -> float:
        out = 0.0
        for t in self.terms:
            a = float(t.decay[0])
            s = sum(abs(complex(_inexact(c))) * abs(x) ** e[0] for e, c in t.poly.terms.items())
            out += s * math.exp(-a * x * x)
        return out

    def _tail_radius(self) -> float:
        # Radius beyond which every term's envelope is decreasing and the
        # total envelope has dropped 1e18 below its value at the threshold.
        amin = min(float(t.decay[0]) for t in self.terms)
        dmax = max(t.poly.degree(0) for t in self.terms)
        r0 = max(1.0, math.sqrt((dmax + 2.0) / (2.0 * amin)))
        e0 = self._envelope(r0)
        if e0 == 0.0:
            return r0
        r = r0
        for _ in range(200):
            r *= 1.25
            if self._envelope(r) <= 1e-18 * e0:
                return r
        return r

    def _critical_candidates_1d(self):
        """Certified critical points of |f| restricted to each decay group."""

        def pad_add(a, b):
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, v in enumerate(b):
                out[i] += v
            return out

        def ascending_diff(a):
            return [i * v for i, v in enumerate(a)][1:] or [0.0]

        cands = [0.0]
        for t in self.terms:
            a = float(t.decay[0])
            re, im = t.poly.coeff_lists_1d()
            # d/dx |q e^{-a x^2}|^2 has polynomial factor
            #   re*re' + im*im' - 2 a x (re^2 + im^2)
            s = list(np.convolve(re, ascending_diff(re)))
            if any(im):
                s = pad_add(s, np.convolve(im, ascending_diff(im)))
            sq = pad_add(np.convolve(re, re), np.convolve(im, im))
            shifted = [0.0] + [-2.0 * a * v for v in sq]
            tot = pad_add(s, shifted)
            cands.extend(real_roots(tot))
        return cands

    def _norm_key(self):
        """Scale-invariant structural key: coefficients divided by the
        largest magnitude.  Critical points of |c f| equal those of |f|, so
        candidate sets can be shared across scalar multiples; scaling by a
        power of two leaves the normalized mantissas bitwise identical."""
        top = max(t.poly.max_abs_coeff() for t in self.terms)
        if top == 0.0:
            return None
        parts = []
        for t in sorted(self.terms, key=lambda t: tuple(float(a) for a in t.decay)):
            items = []
            for e, c in sorted(t.poly.terms.items()):
                v = complex(_inexact(c)) / top
                items.append((e, v.real, v.imag))
            parts.append((tuple(float(a) for a in t.decay), tuple(items)))
        return (self.n, tuple(parts))

    def _sup_candidates_1d(self):
        key = self._norm_key()
        hit = _CANDIDATE_CACHE.get(key)
        if hit is not None:
            return hit
        cands = self._critical_candidates_1d()
        if len(self.terms) > 1:
            # cross-decay interference can move the maximum off every
            # per-group critical point: guard with a grid over the region
            # where the envelope is non-negligible, refining local maxima
            r = self._tail_radius()
            grid = np.linspace(-r, r, 513)
            vals = [abs(self._eval1(float(x))) for x in grid]
            for i in range(1, len(grid) - 1):
                if vals[i] >= vals[i - 1] and vals[i] >= vals[i + 1] and vals[i] > 0.0:
                    cands.append(ternary_max(lambda x: abs(self._eval1(x)), float(grid[i - 1]), float(grid[i + 1])))
        seen = set()
        uniq = []
        for c in cands:
            bucket = round(c, 13)
            if bucket not in seen:
                seen.add(bucket)
                uniq.append(c)
        cands = tuple(uniq)
        if key is not None:
            if len(_CANDIDATE_CACHE) > 8192:
                _CANDIDATE_CACHE.clear()
            _CANDIDATE_CACHE[key] = cands
        return cands

    def sup_abs(self) -> float:
        """sup over R^n of |f|.

        n = 1: exact mode, per-decay-group critical points from certified
        real-root isolation, plus (for several groups, where cross terms can
        move the maximum) a guarded grid with golden-section refinement.
        n >= 2: adaptive tensor grid; see :meth:`sup_abs_report`.
        """
        return self.sup_abs_report()[0]

    def sup_abs_report(self):
        """(value, reported absolute tolerance estimate)."""
        if self.is_zero():
            return 0.0, 0.0
        if self.n == 1:
            best = max(abs(self._eval1(x)) for x in self._sup_candidates_1d())
            return best, 1e-12 * best
        return self._sup_abs_grid()

    def _sup_abs_grid(self):
        amin = min(min(float(a) for a in t.decay) for t in self.terms)
        dmax = max(max((mi.order(e) for e in t.poly.terms), default=0) for t in self.terms)
        r = max(2.0, math.sqrt((dmax + 4.0) / (2.0 * amin))) * 2.5
        lo = [-r] * self.n
        hi = [r] * self.n
        best, bx = 0.0, [0.0] * self.n
        pts_per_axis = 17 if self.n == 2 else 9
        last_improve = 0.0
        for _ in range(8):
            axes = [np.linspace(lo[i], hi[i], pts_per_axis) for i in range(self.n)]
            grids = np.meshgrid(*axes, indexing="ij")
            flat = np.stack([g.ravel() for g in grids], axis=-1)
            vals = [abs(self.eval(tuple(p))) for p in flat]
            k = int(np.argmax(vals))
            if vals[k] > best:
                last_improve = vals[k] - best
                best, bx = vals[k], list(flat[k])
            span = [(hi[i] - lo[i]) / (pts_per_axis - 1) for i in range(self.n)]
            lo = [bx[i] - 2 * span[i] for i in range(self.n)]
            hi = [bx[i] + 2 * span[i] for i in range(self.n)]
        return best, max(last_improve, 1e-9 * best)

    def signed_range(self):
        """(inf, sup) of the real part over R (n = 1, real coefficients).

        0 is always in the closure of the range (the function vanishes at
        infinity), so the returned interval contains 0.
        """
        if self.n != 1:
            raise NotImplementedError("signed_range: exact mode is n = 1 only")
        if self.is_zero():
            return 0.0, 0.0
        cands = list(self._sup_candidates_1d())
        if len(self.terms) > 1:
            r = self._tail_radius()
            cands.extend(float(x) for x in np.linspace(-r, r, 513))
        vals = [self._eval1(x).real for x in cands]
        return min(0.0, min(vals)), max(0.0, max(vals))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        def num(v):
            if _is_exact(v):
                return str(Fraction(v))
            return float(v)

        terms = []
        for t in sorted(self.terms, key=lambda t: tuple(float(a) for a in t.decay)):
            poly = []
            for e, c in sorted(t.poly.terms.items()):
                v = _inexact(c)
                if _is_exact(c):
                    poly.append({"exp": list(e), "re": str(Fraction(c)), "im": "0"})
                else:
                    poly.append({"exp": list(e), "re": float(_creal(v)), "im": float(_cimag(v))})
            terms.append({"decay": [num(a) for a in t.decay], "poly": poly})
        return {"n": self.n, "terms": terms}

    @classmethod
    def from_json(cls, doc: dict) -> "GaussPolyFn":
        def num(v):
            return Fraction(v) if isinstance(v, str) else float(v)

        n = int(doc["n"])
        terms = []
        for t in doc["terms"]:
            decay = tuple(num(a) for a in t["decay"])
            poly = {}
            for m in t["poly"]:
                re = num(m["re"])
                im = num(m["im"])
                if im == 0:
                    c = re
                else:
                    c = complex(float(re), float(im))
                poly[tuple(int(e) for e in m["exp"])] = c
            terms.append(GaussPolyTerm(SparsePoly(n, poly), decay))
        return cls(n, terms)

    def approx_eq(self, other: "GaussPolyFn", tol: float = 1e-12) -> bool:
        d = self.sub(other)
        return all(abs(complex(_inexact(c))) <= tol for t in d.terms for c in t.poly.terms.values())

    def __eq__(self, other):
        if not isinstance(other, GaussPolyFn):
            return NotImplemented
        return self.n == other.n and self.sub(other).is_zero()

    def __hash__(self):
        return hash((self.n, len(self.terms)))

    # -- Fourier transform (n = 1) -----------------------------------------

    def fourier(self) -> "GaussPolyFn":
        """F[f](xi) = integral f(t) exp(-2 pi i t xi) dt, within the class.

        Built from F[exp(-a t^2)](xi) = sqrt(pi/a) exp(-pi^2 xi^2 / a) and
        F[t^k f] = (i / 2 pi)^k d^k/dxi^k F[f].  Coefficients go complex.
        """
        if self.n != 1:
            raise NotImplementedError("fourier: n >= 2 not supported in v1")
        out = GaussPolyFn.zero(1)
        for t in self.terms:
            a = float(t.decay[0])
            base = GaussPolyFn.from_term({(0,): math.sqrt(math.pi / a)}, (math.pi**2 / a,))
            for e, c in t.poly.terms.items():
                k = e[0]
                g = base.diff((k,))
                factor = _cmul(_inexact(c), (1j / (2 * math.pi)) ** k if k else 1.0)
                out = out.add(g.scale(factor))
        return out

    def inv_fourier(self) -> "GaussPolyFn":
        """Inverse transform via Finv[g](t) = F[g](-t)."""
        return self.fourier().reflect()

    def __repr__(self):
        return f"GaussPolyFn(n={self.n}, terms={len(self.terms)})"


def leibniz_summands(g: GaussPolyFn, f: GaussPolyFn, beta):
    """Summands binom(beta,k) * D^{beta-k}g * D^k f over all k <= beta."""
    beta = mi.check(beta)
    out = []
    for k in mi.downward_closure(beta):
        coeff = mi.binom(beta, k)
        out.append(g.diff(mi.sub(beta, k)).mul(f.diff(k)).scale(coeff))
    return out


def leibniz_expand(g: GaussPolyFn, f: GaussPolyFn, beta) -> GaussPolyFn:
    """Product-rule expansion of D^beta(g f); equals (g f).diff(beta) exactly."""
    if g.n != f.n:
        raise ValueError("dimension mismatch")
    out = GaussPolyFn.zero(g.n)
    for s in leibniz_summands(g, f, beta):
        out = out.add(s)
    return out
