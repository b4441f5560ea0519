"""Operator catalogue with closed-form derivative providers and bounds.

Every operator knows how to apply itself and, where the theory supplies one,
how to produce its derivative at a base point as a LinearMap in closed form:
linear operators are their own derivative; power/polynomial operators have
multiply-by-function derivatives on Schwartz space and diagonal derivatives
on the sequence spaces.  The module also evaluates the explicit seminorm
bounds for products, monomial multiples and powers, and exhibits (family, C)
continuity certificates for the linear catalogue entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import multiindex as mi
from .gausspoly import GaussPolyFn
from .seminorms import CheckReport, IndexSet, index_set
from .spaces import SchwartzSpace, SeqElement, SigmaRhoSpace, SSpace, space_from_json

__all__ = [
    "Operator",
    "LinearMap",
    "ZeroMap",
    "IdentityScaled",
    "Diagonal",
    "MultiplyBy",
    "OperatorMap",
    "SumMap",
    "ComposeMap",
    "analytic_frechet",
    "analytic_gateaux",
    "linmap_add",
    "linmap_scale",
    "linmap_compose",
    "bound_product",
    "bound_monomial",
    "bound_power",
    "linear_bound_check",
    "seminorm_bound",
]

LINEAR_KINDS = {"identity", "scale", "diff", "mult", "monomial", "fourier", "inv_fourier"}
SCHWARTZ_ONLY = {"diff", "mult", "monomial", "fourier", "inv_fourier"}


@dataclass(frozen=True)
class Operator:
    kind: str
    params: dict = field(default_factory=dict)
    domain: object = None
    codomain: object = None

    def __post_init__(self):
        k = self.kind
        dom, cod = self.domain, self.codomain
        if k in SCHWARTZ_ONLY and not (isinstance(dom, SchwartzSpace) and isinstance(cod, SchwartzSpace)):
            raise ValueError(f"{k} is a Schwartz-space operator")
        if k == "cross_power":
            if not (isinstance(dom, SigmaRhoSpace) and isinstance(cod, SSpace)):
                raise ValueError("cross_power maps sigma_rho into S")
        elif dom is not None and cod is not None and dom.tag != cod.tag:
            raise ValueError(f"{k} maps a space to itself")
        if k in ("power", "cross_power") and int(self.params.get("m", 0)) < 1:
            raise ValueError("power requires m >= 1")
        if k == "poly" and not self.params.get("coeffs"):
            raise ValueError("poly requires a nonempty coefficient list (a_1..a_m)")

    @property
    def is_linear(self) -> bool:
        if self.kind in LINEAR_KINDS:
            return True
        if self.kind in ("power", "cross_power"):
            return int(self.params["m"]) == 1
        if self.kind == "poly":
            return len(self.params["coeffs"]) == 1
        return False

    def apply(self, x):
        k = self.kind
        if k == "identity":
            return x
        if k == "scale":
            return self.domain.scale(self.params["a"], x)
        if k in ("power", "cross_power"):
            m = int(self.params["m"])
            if isinstance(x, GaussPolyFn):
                return x.pow(m) if not x.is_zero() else x
            self.domain.validate(x)
            return x.power(m)
        if k == "poly":
            coeffs = self.params["coeffs"]
            if isinstance(x, GaussPolyFn):
                out = GaussPolyFn.zero(x.n)
                if not x.is_zero():
                    for i, a in enumerate(coeffs, start=1):
                        if a:
                            out = out.add(x.pow(i).scale(a))
                return out
            self.domain.validate(x)
            return x.poly_apply(coeffs)
        if k == "diff":
            return x.diff(self.params["gamma"])
        if k == "mult":
            return self.params["g"].mul(x)
        if k == "monomial":
            return x.monomial_mul(self.params["lam"])
        if k == "fourier":
            return x.fourier()
        if k == "inv_fourier":
            return x.inv_fourier()
        raise ValueError(f"unknown operator kind {k!r}")

    def describe(self) -> str:
        k = self.kind
        if k in ("power", "cross_power"):
            return f"{k}^{self.params['m']}@{self.domain.tag}"
        if k == "poly":
            return f"poly{tuple(self.params['coeffs'])}@{self.domain.tag}"
        return f"{k}@{self.domain.tag}"

    def to_json(self) -> dict:
        params = dict(self.params)
        if "g" in params:
            params["g"] = params["g"].to_json()
        if "gamma" in params:
            params["gamma"] = list(params["gamma"])
        if "lam" in params:
            params["lam"] = list(params["lam"])
        return {
            "kind": self.kind,
            "params": params,
            "domain": self.domain.describe(),
            "codomain": self.codomain.describe(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Operator":
        dom = space_from_json(doc["domain"])
        cod = space_from_json(doc.get("codomain", doc["domain"]))
        params = dict(doc.get("params", {}))
        if "g" in params:
            params["g"] = GaussPolyFn.from_json(params["g"])
        if "gamma" in params:
            params["gamma"] = tuple(params["gamma"])
        if "lam" in params:
            params["lam"] = tuple(params["lam"])
        return cls(doc["kind"], params, dom, cod)


# ---------------------------------------------------------------------------
# linear maps (closed derivative forms)


class LinearMap:
    codomain = None

    def apply(self, u):
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class ZeroMap(LinearMap):
    codomain: object

    def apply(self, u):
        return self.codomain.zero()

    def describe(self):
        return "zero"


@dataclass(frozen=True)
class IdentityScaled(LinearMap):
    c: object
    codomain: object = None

    def apply(self, u):
        if self.c == 1:
            return u
        return u.scale(self.c)

    def describe(self):
        return f"identity_scaled({self.c})"


@dataclass(frozen=True)
class Diagonal(LinearMap):
    """Entrywise multiplication by (d_1, ..., d_N, tail, tail, ...)."""

    prefix: tuple
    tail: object = 0
    codomain: object = None

    def apply(self, u: SeqElement) -> SeqElement:
        n = max(len(self.prefix), u.support_len())
        vals = []
        for i in range(1, n + 1):
            d = self.prefix[i - 1] if i <= len(self.prefix) else self.tail
            v = u.entry(i)
            vals.append(d * v if (d != 0 and v != 0) else 0)
        return SeqElement(vals, self.tail * u.tail if (self.tail != 0 and u.tail != 0) else 0)

    def entry(self, k: int):
        return self.prefix[k - 1] if k <= len(self.prefix) else self.tail

    def describe(self):
        return f"diagonal({list(self.prefix)}, tail={self.tail})"


@dataclass(frozen=True)
class MultiplyBy(LinearMap):
    g: GaussPolyFn
    codomain: object = None

    def apply(self, u: GaussPolyFn) -> GaussPolyFn:
        return self.g.mul(u)

    def describe(self):
        return "multiply_by(...)"


@dataclass(frozen=True)
class OperatorMap(LinearMap):
    """A linear catalogue operator used directly as a map."""

    op: Operator

    def __post_init__(self):
        if not self.op.is_linear:
            raise ValueError(f"{self.op.kind} is not a linear kind")

    @property
    def codomain(self):
        return self.op.codomain

    def apply(self, u):
        return self.op.apply(u)

    def describe(self):
        return f"op({self.op.describe()})"


@dataclass(frozen=True)
class SumMap(LinearMap):
    parts: tuple

    @property
    def codomain(self):
        return self.parts[0].codomain

    def apply(self, u):
        vals = [p.apply(u) for p in self.parts]
        out = vals[0]
        for v in vals[1:]:
            out = out.add(v)
        return out

    def describe(self):
        return " + ".join(p.describe() for p in self.parts)


@dataclass(frozen=True)
class ComposeMap(LinearMap):
    outer: LinearMap
    inner: LinearMap

    @property
    def codomain(self):
        return self.outer.codomain

    def apply(self, u):
        return self.outer.apply(self.inner.apply(u))

    def describe(self):
        return f"({self.outer.describe()}) o ({self.inner.describe()})"


def linmap_add(a: LinearMap, b: LinearMap) -> LinearMap:
    if isinstance(a, ZeroMap):
        return b
    if isinstance(b, ZeroMap):
        return a
    if isinstance(a, Diagonal) and isinstance(b, Diagonal):
        n = max(len(a.prefix), len(b.prefix))
        pref = tuple(a.entry(i) + b.entry(i) for i in range(1, n + 1))
        return Diagonal(pref, a.tail + b.tail, a.codomain or b.codomain)
    if isinstance(a, MultiplyBy) and isinstance(b, MultiplyBy):
        return MultiplyBy(a.g.add(b.g), a.codomain or b.codomain)
    if isinstance(a, IdentityScaled) and isinstance(b, IdentityScaled):
        return IdentityScaled(a.c + b.c, a.codomain or b.codomain)
    parts = (a.parts if isinstance(a, SumMap) else (a,)) + (b.parts if isinstance(b, SumMap) else (b,))
    return SumMap(parts)


def linmap_scale(c, m: LinearMap) -> LinearMap:
    if c == 0:
        return ZeroMap(m.codomain)
    if isinstance(m, ZeroMap):
        return m
    if isinstance(m, Diagonal):
        return Diagonal(tuple(c * d for d in m.prefix), c * m.tail, m.codomain)
    if isinstance(m, MultiplyBy):
        return MultiplyBy(m.g.scale(c), m.codomain)
    if isinstance(m, IdentityScaled):
        return IdentityScaled(c * m.c, m.codomain)
    if isinstance(m, SumMap):
        return SumMap(tuple(linmap_scale(c, p) for p in m.parts))
    return ComposeMap(IdentityScaled(c, m.codomain), m)


def linmap_compose(outer: LinearMap, inner: LinearMap) -> LinearMap:
    if isinstance(outer, ZeroMap) or isinstance(inner, ZeroMap):
        return ZeroMap(outer.codomain)
    if isinstance(outer, IdentityScaled):
        return linmap_scale(outer.c, inner) if outer.c != 1 else inner
    if isinstance(inner, IdentityScaled):
        return linmap_scale(inner.c, outer) if inner.c != 1 else outer
    if isinstance(outer, Diagonal) and isinstance(inner, Diagonal):
        n = max(len(outer.prefix), len(inner.prefix))
        pref = tuple(outer.entry(i) * inner.entry(i) for i in range(1, n + 1))
        return Diagonal(pref, outer.tail * inner.tail, outer.codomain)
    if isinstance(outer, MultiplyBy) and isinstance(inner, MultiplyBy):
        return MultiplyBy(outer.g.mul(inner.g), outer.codomain)
    return ComposeMap(outer, inner)


# ---------------------------------------------------------------------------
# analytic derivatives


def analytic_frechet(op: Operator, xbar) -> LinearMap:
    """Closed-form derivative of a catalogue operator at a base point."""
    k = op.kind
    if op.is_linear:
        if k == "identity":
            return IdentityScaled(1, op.codomain)
        if k == "scale":
            return IdentityScaled(op.params["a"], op.codomain)
        if k in ("power", "cross_power"):
            return IdentityScaled(1, op.codomain)
        if k == "poly":
            return IdentityScaled(op.params["coeffs"][0], op.codomain)
        return OperatorMap(op)
    if k in ("power", "cross_power"):
        m = int(op.params["m"])
        if isinstance(xbar, GaussPolyFn):
            if xbar.is_zero():
                return ZeroMap(op.codomain)
            return MultiplyBy(xbar.pow(m - 1).scale(m), op.codomain)
        op.domain.validate(xbar)
        pref = tuple(m * xbar.entry(i) ** (m - 1) for i in range(1, xbar.support_len() + 1))
        return Diagonal(pref, m * xbar.tail ** (m - 1), op.codomain)
    if k == "poly":
        coeffs = op.params["coeffs"]
        if isinstance(xbar, GaussPolyFn):
            out: LinearMap = IdentityScaled(coeffs[0], op.codomain) if coeffs[0] else ZeroMap(op.codomain)
            if not xbar.is_zero():
                g = GaussPolyFn.zero(xbar.n)
                for i, a in enumerate(coeffs[1:], start=2):
                    if a:
                        g = g.add(xbar.pow(i - 1).scale(i * a))
                if not g.is_zero():
                    out = linmap_add(out, MultiplyBy(g, op.codomain))
            return out

        def dcoef(t):
            return sum(i * a * t ** (i - 1) for i, a in enumerate(coeffs, start=1))

        pref = tuple(dcoef(xbar.entry(i)) for i in range(1, xbar.support_len() + 1))
        return Diagonal(pref, dcoef(xbar.tail), op.codomain)
    raise ValueError(f"no derivative formula for kind {k!r}")


def analytic_gateaux(op: Operator, xbar, v):
    """Directional derivative along v != 0; coincides with the linear form."""
    if op.domain.is_zero(v):
        raise ValueError("direction must be nonzero")
    return analytic_frechet(op, xbar).apply(v)


# ---------------------------------------------------------------------------
# explicit seminorm bounds


def _snorm(f: GaussPolyFn, alpha, beta) -> float:
    return f.diff(beta).monomial_mul(alpha).sup_abs()


def _as_mi(v, n):
    return mi.check(v if not isinstance(v, int) else (v,) * n)


def bound_product(g: GaussPolyFn, f: GaussPolyFn, alpha, beta):
    """(lhs, rhs) with lhs = |g f|_{alpha,beta} and rhs the product-rule
    binomial bound sum_k binom(beta,k) |g|_{0,beta-k} |f|_{alpha,k}."""
    n = g.n
    alpha, beta = _as_mi(alpha, n), _as_mi(beta, n)
    lhs = _snorm(g.mul(f), alpha, beta)
    rhs = 0.0
    for k in mi.downward_closure(beta):
        rhs += mi.binom(beta, k) * _snorm(g, mi.zero(n), mi.sub(beta, k)) * _snorm(f, alpha, k)
    return lhs, rhs


def _falling(lam: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= lam - i
    return out


def _monomial_coef(lam, beta, k) -> int:
    """Derivative coefficient prod_i lam_i (lam_i - 1) ... down (beta_i - k_i)
    factors; vanishes exactly when some beta_i - k_i exceeds lam_i."""
    out = 1
    for li, bi, ki in zip(lam, beta, k):
        out *= _falling(li, bi - ki)
    return out


def bound_monomial(f: GaussPolyFn, lam, alpha, beta):
    """(lhs, rhs) for |x^lam f|_{alpha,beta} against the shifted-seminorm
    bound with falling-factorial coefficients."""
    n = f.n
    lam, alpha, beta = _as_mi(lam, n), _as_mi(alpha, n), _as_mi(beta, n)
    lhs = _snorm(f.monomial_mul(lam), alpha, beta)
    rhs = 0.0
    lo = tuple(max(0, b - l) for b, l in zip(beta, lam))
    for k in mi.box_range(lo, beta):
        a_k = _monomial_coef(lam, beta, k)
        if a_k == 0:
            continue
        shift = tuple(a + l - b + kk for a, l, b, kk in zip(alpha, lam, beta, k))
        rhs += mi.binom(beta, k) * a_k * _snorm(f, shift, k)
    return lhs, rhs


def bound_power(u: GaussPolyFn, m: int, alpha, beta):
    """(lhs, rhs) for |u^m|_{alpha,beta} <= 2^{m|beta|} M_alpha M_0^{m-1}
    where M_alpha / M_0 are maxima of |u|_{alpha,gamma} / |u|_{0,gamma}
    over gamma <= beta."""
    if m < 1:
        raise ValueError("m >= 1 required")
    n = u.n
    alpha, beta = _as_mi(alpha, n), _as_mi(beta, n)
    if u.is_zero():
        return 0.0, 0.0
    lhs = _snorm(u.pow(m), alpha, beta)
    m_alpha = max(_snorm(u, alpha, g) for g in mi.downward_closure(beta))
    m_zero = max(_snorm(u, mi.zero(n), g) for g in mi.downward_closure(beta))
    rhs = 2.0 ** (m * mi.order(beta)) * m_alpha * m_zero ** (m - 1)
    return lhs, rhs


# ---------------------------------------------------------------------------
# linear continuity certificates


def seminorm_bound(op: Operator, q_sid):
    """(ids, C) with q(T x) <= C * sum_{p in ids} p(x) for a linear kind.

    The families and constants come from the closed-form seminorm identities
    of the catalogue (derivative shift, product rule, monomial rule, the
    Fourier integral estimate); the differential operator is exact with
    C = 1.
    """
    if not op.is_linear:
        raise ValueError(f"{op.kind} is not linear")
    k = op.kind
    dom = op.domain
    if isinstance(dom, SchwartzSpace):
        n = dom.n
        alpha, beta = dom.normalize_sid(q_sid)
        if k in ("identity",) or (k in ("power", "cross_power")):
            return [(alpha, beta)], 1.0
        if k == "poly":
            return [(alpha, beta)], abs(float(op.params["coeffs"][0]))
        if k == "scale":
            return [(alpha, beta)], abs(float(op.params["a"]))
        if k == "diff":
            gamma = mi.check(op.params["gamma"])
            return [(alpha, mi.add(beta, gamma))], 1.0
        if k == "mult":
            g = op.params["g"]
            ids, c = [], 0.0
            for kk in mi.downward_closure(beta):
                ids.append((alpha, kk))
                c = max(c, mi.binom(beta, kk) * _snorm(g, mi.zero(n), mi.sub(beta, kk)))
            return ids, c
        if k == "monomial":
            lam = mi.check(op.params["lam"])
            lo = tuple(max(0, b - l) for b, l in zip(beta, lam))
            ids, c = [], 0.0
            for kk in mi.box_range(lo, beta):
                a_k = _monomial_coef(lam, beta, kk)
                if a_k == 0:
                    continue
                shift = tuple(a + l - b + k2 for a, l, b, k2 in zip(alpha, lam, beta, kk))
                ids.append((shift, kk))
                c = max(c, mi.binom(beta, kk) * a_k)
            return ids, c
        if k in ("fourier", "inv_fourier"):
            if n != 1:
                raise NotImplementedError("fourier bound: n = 1 only")
            a, b = alpha[0], beta[0]
            # |xi^a D^b Ff| <= (2 pi)^{b-a} int |D^a(t^b f)| dt and the
            # integral is <= pi (|h|_{0,0} + |h|_{2,0}) for h = D^a(t^b f);
            # expand h by the monomial rule into seminorms of f.
            ids, cmax = [], 0.0
            lo = max(0, a - b)
            for kk in range(lo, a + 1):
                a_k = _falling(b, a - kk)
                if a_k == 0:
                    continue
                for j in (0, 2):
                    ids.append(((j + b - a + kk,), (kk,)))
                cmax = max(cmax, math.comb(a, kk) * a_k)
            c = (2 * math.pi) ** (b - a) * math.pi * cmax
            return ids, c
        raise ValueError(f"no bound recipe for {k} on schwartz")
    kq = dom.normalize_sid(q_sid)
    if isinstance(dom, SigmaRhoSpace):
        if k == "identity" or k in ("power", "cross_power"):
            factor = 1.0
        elif k == "scale":
            factor = abs(float(op.params["a"])) ** dom.rho
        elif k == "poly":
            factor = abs(float(op.params["coeffs"][0])) ** dom.rho
        else:
            raise ValueError(f"no bound recipe for {k} on sigma_rho")
        return [kq], factor
    if isinstance(dom, SSpace) or isinstance(op.codomain, SSpace):
        if k == "identity" or k in ("power", "cross_power"):
            factor = 1.0
        elif k == "scale":
            factor = max(1.0, abs(float(op.params["a"])))
        elif k == "poly":
            factor = max(1.0, abs(float(op.params["coeffs"][0])))
        else:
            raise ValueError(f"no bound recipe for {k} on S")
        return [kq], factor
    raise ValueError("unsupported space")


def linear_bound_check(op: Operator, J, *, rng, n_samples: int = 200) -> CheckReport:
    """Verify q(T x) <= C_q sum_{p in fam_q} p(x) on samples, with the
    (fam_q, C_q) exhibits produced by :func:`seminorm_bound`."""
    J = J if isinstance(J, IndexSet) else index_set(op.codomain, J)
    exhibits = {}
    for q in J:
        ids, c = seminorm_bound(op, q)
        exhibits[q] = (ids, c)
    for i in range(n_samples):
        x = op.domain.random_element(rng)
        tx = op.apply(x)
        for q, (ids, c) in exhibits.items():
            lhs = op.codomain.seminorm(q, tx)
            rhs = c * sum(op.domain.seminorm(p, x) for p in ids)
            if lhs > rhs * (1 + 1e-9) + 1e-12:
                return CheckReport(
                    "linear_bound",
                    False,
                    {"q": str(q), "lhs": lhs, "rhs": rhs, "element": op.domain.element_to_json(x)},
                    i,
                    1e-9,
                )
    details = {str(q): {"family_size": len(ids), "C": c} for q, (ids, c) in exhibits.items()}
    return CheckReport("linear_bound", True, None, n_samples, 1e-9, details=details)
