"""The three concrete spaces and their seminorm families.

* Schwartz space (n = 1 exact): elements are GaussPolyFn, seminorms
  ``|f|_{alpha,beta} = sup |x^alpha D^beta f|`` (a genuine seminorm family,
  homogeneous).
* sigma_rho (0 < rho < 1): finitely supported real sequences, F-seminorms
  ``|x|_{rho,k} = |t_k|^rho`` (not homogeneous).
* S: all real sequences, modelled as eventually constant; F-seminorms
  ``|x|_k = |t_k| / (1 + |t_k|)``.

Sequence elements carry a finite prefix plus a constant tail, which is the
smallest representation that admits every example in scope (sigma_rho needs
tail 0; S admits w = (1, 1, ...)).  Entries stay exact (int/Fraction) under
arithmetic whenever the inputs are exact.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import multiindex as mi
from .gausspoly import GaussPolyFn, SparsePoly, GaussPolyTerm

__all__ = [
    "SeqElement",
    "SigmaRhoSpace",
    "SSpace",
    "SchwartzSpace",
    "space_from_json",
    "sigma_inclusion_check",
    "scaling_property_check",
]


def _exact(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def _num_add(a, b):
    if _exact(a) and _exact(b):
        return Fraction(a) + Fraction(b)
    return float(a) + float(b)


def _num_mul(a, b):
    if _exact(a) and _exact(b):
        return Fraction(a) * Fraction(b)
    return float(a) * float(b)


class SeqElement:
    """Real sequence with a finite prefix and a constant tail.

    ``entry(n)`` is 1-based; entries beyond the prefix equal ``tail``.
    Trailing prefix entries equal to the tail are trimmed on construction,
    so equality is representation independent.
    """

    __slots__ = ("prefix", "tail")

    def __init__(self, prefix=(), tail=0):
        prefix = list(prefix)
        while prefix and prefix[-1] == tail:
            prefix.pop()
        self.prefix = tuple(prefix)
        self.tail = tail

    @classmethod
    def zero(cls) -> "SeqElement":
        return cls((), 0)

    def entry(self, n: int):
        if n < 1:
            raise ValueError("sequence indices are 1-based")
        return self.prefix[n - 1] if n <= len(self.prefix) else self.tail

    def support_len(self) -> int:
        return len(self.prefix)

    def is_zero(self) -> bool:
        return not self.prefix and self.tail == 0

    def _zip(self, other: "SeqElement"):
        n = max(len(self.prefix), len(other.prefix))
        return n, [(self.entry(i), other.entry(i)) for i in range(1, n + 1)]

    def add(self, other: "SeqElement") -> "SeqElement":
        n, pairs = self._zip(other)
        return SeqElement([_num_add(a, b) for a, b in pairs], _num_add(self.tail, other.tail))

    def sub(self, other: "SeqElement") -> "SeqElement":
        return self.add(other.scale(-1))

    def scale(self, a) -> "SeqElement":
        return SeqElement([_num_mul(a, v) for v in self.prefix], _num_mul(a, self.tail))

    def power(self, m: int) -> "SeqElement":
        if m < 1:
            raise ValueError("power must be >= 1")
        return SeqElement([v**m for v in self.prefix], self.tail**m)

    def poly_apply(self, coeffs) -> "SeqElement":
        """Entrywise sum_i coeffs[i-1] * t^i (coeffs = (a_1, ..., a_m))."""

        def ap(t):
            acc = 0
            for a in reversed(coeffs):
                acc = _num_mul(_num_add(acc, a), t)
            return acc

        return SeqElement([ap(v) for v in self.prefix], ap(self.tail))

    def entrywise_map(self, fn) -> "SeqElement":
        return SeqElement([fn(v) for v in self.prefix], fn(self.tail))

    def __eq__(self, other):
        if not isinstance(other, SeqElement):
            return NotImplemented
        return self.prefix == other.prefix and self.tail == other.tail

    def __hash__(self):
        return hash((self.prefix, self.tail))

    def to_json(self) -> dict:
        return {"prefix": [float(v) for v in self.prefix], "tail": float(self.tail)}

    @classmethod
    def from_json(cls, doc: dict) -> "SeqElement":
        def num(v):
            return Fraction(v) if isinstance(v, str) else v

        return cls([num(v) for v in doc.get("prefix", [])], num(doc.get("tail", 0)))

    def __repr__(self):
        return f"SeqElement({list(self.prefix)!r}, tail={self.tail!r})"


class _SequenceSpaceBase:
    """Shared element plumbing for sigma_rho and S."""

    homogeneous = False
    separating = True  # verified by separating_check; claim carried here

    def zero(self):
        return SeqElement.zero()

    def add(self, x, y):
        return x.add(y)

    def sub(self, x, y):
        return x.sub(y)

    def scale(self, a, x):
        return x.scale(a)

    def is_zero(self, x):
        return x.is_zero()

    def normalize_sid(self, sid) -> int:
        k = int(sid)
        if k < 1:
            raise ValueError(f"sequence seminorm index must be >= 1, got {sid}")
        return k

    def enum_ids(self, count: int):
        return list(range(1, count + 1))

    def weight(self, sid) -> Fraction:
        return Fraction(1, 2) ** self.normalize_sid(sid)

    has_weights = True

    def element_to_json(self, x):
        return x.to_json()

    def element_from_json(self, doc):
        return SeqElement.from_json(doc)

    def sid_to_json(self, sid):
        return sid

    def support_ids(self, x):
        """Index set bounded by the representation; a separating witness for
        a nonzero element always lives here (prefix plus one tail index)."""
        return list(range(1, x.support_len() + 2))


class SigmaRhoSpace(_SequenceSpaceBase):
    """sigma_rho: finite-support sequences, |x|_{rho,k} = |t_k|^rho."""

    def __init__(self, rho):
        rho = Fraction(rho) if isinstance(rho, str) else rho
        if not (0 < float(rho) < 1):
            raise ValueError(f"rho must satisfy 0 < rho < 1, got {rho}")
        self.rho = float(rho)

    @property
    def tag(self) -> str:
        return "sigma_rho"

    def describe(self) -> dict:
        return {"space": "sigma_rho", "rho": self.rho}

    def validate(self, x: SeqElement):
        if x.tail != 0:
            raise ValueError("sigma_rho elements must have tail 0 (finite support)")
        return x

    def seminorm(self, sid, x: SeqElement) -> float:
        self.validate(x)
        k = self.normalize_sid(sid)
        return float(abs(x.entry(k))) ** self.rho

    fnorm_base = seminorm

    def metric(self, x: SeqElement, y: SeqElement) -> float:
        # computed on the canonical difference element, so translation
        # invariance is exact whenever the entries are exact
        self.validate(x)
        self.validate(y)
        d = x.sub(y)
        return sum(float(abs(v)) ** self.rho for v in d.prefix)

    def p_sup(self, x: SeqElement) -> float:
        self.validate(x)
        return max((float(abs(v)) for v in x.prefix), default=0.0)

    def p_sup_prefix(self, x: SeqElement, m: int) -> float:
        return max((float(abs(x.entry(k))) for k in range(1, m + 1)), default=0.0)

    def random_element(self, rng, max_support: int = 6, exact: bool = False) -> SeqElement:
        k = rng.randint(0, max_support)
        if exact:
            vals = [Fraction(rng.randint(-12, 12), rng.choice([1, 2, 4])) for _ in range(k)]
        else:
            vals = [rng.uniform(-3, 3) for _ in range(k)]
        return SeqElement(vals, 0)

    def random_direction(self, rng) -> SeqElement:
        x = self.random_element(rng)
        return x if not x.is_zero() else SeqElement([1], 0)


class SSpace(_SequenceSpaceBase):
    """S: all real sequences (eventually constant), |x|_k = |t_k|/(1+|t_k|)."""

    @property
    def tag(self) -> str:
        return "s"

    def describe(self) -> dict:
        return {"space": "s"}

    def validate(self, x: SeqElement):
        return x

    def seminorm(self, sid, x: SeqElement) -> float:
        k = self.normalize_sid(sid)
        t = float(abs(x.entry(k)))
        return t / (1.0 + t)

    def fnorm_base(self, sid, x: SeqElement) -> float:
        # the F-norm construction wraps |t_k| itself; the wrap of the raw
        # magnitude IS this family's F-seminorm, so f_norm here agrees with
        # the translation-invariant metric against the origin
        return float(abs(x.entry(self.normalize_sid(sid))))

    def metric(self, x: SeqElement, y: SeqElement) -> float:
        """d(x, y) = sum 2^-n |t_n - s_n| / (1 + |t_n - s_n|), closed tail.

        Evaluated on the canonical difference element: the geometric tail is
        grouped at the trimmed prefix length, so translated pairs produce
        bitwise-identical values on exact entries.
        """
        d = x.sub(y)
        acc = 0.0
        for i, v in enumerate(d.prefix, start=1):
            t = float(abs(v))
            acc += 0.5**i * t / (1.0 + t)
        n = d.support_len()
        dt = float(abs(d.tail))
        acc += 0.5**n * dt / (1.0 + dt)
        return acc

    def fnorm(self, x: SeqElement) -> float:
        return self.metric(x, SeqElement.zero())

    def p_sup_prefix(self, x: SeqElement, m: int) -> float:
        return max((float(abs(x.entry(k))) for k in range(1, m + 1)), default=0.0)

    def random_element(self, rng, max_support: int = 6, exact: bool = False) -> SeqElement:
        k = rng.randint(0, max_support)
        if exact:
            vals = [Fraction(rng.randint(-12, 12), rng.choice([1, 2, 4])) for _ in range(k)]
            tail = rng.choice([0, 0, Fraction(rng.randint(-4, 4), 2)])
        else:
            vals = [rng.uniform(-3, 3) for _ in range(k)]
            tail = rng.choice([0, 0, rng.uniform(-2, 2)])
        return SeqElement(vals, tail)

    def random_direction(self, rng) -> SeqElement:
        x = self.random_element(rng)
        return x if not x.is_zero() else SeqElement([1], 0)


class SchwartzSpace:
    """Schwartz space over the Gaussian-polynomial class (exact for n = 1)."""

    homogeneous = True
    has_weights = False
    separating = True

    def __init__(self, n: int = 1):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        self.n = n

    @property
    def tag(self) -> str:
        return "schwartz"

    def describe(self) -> dict:
        return {"space": "schwartz", "n": self.n}

    def zero(self):
        return GaussPolyFn.zero(self.n)

    def add(self, x, y):
        return x.add(y)

    def sub(self, x, y):
        return x.sub(y)

    def scale(self, a, x):
        return x.scale(a)

    def is_zero(self, x):
        return x.is_zero()

    def normalize_sid(self, sid):
        alpha, beta = sid
        if isinstance(alpha, int):
            alpha = (alpha,)
        if isinstance(beta, int):
            beta = (beta,)
        alpha, beta = mi.check(alpha), mi.check(beta)
        if len(alpha) != self.n or len(beta) != self.n:
            raise ValueError(f"seminorm index {sid} has wrong dimension for n={self.n}")
        return (alpha, beta)

    def seminorm(self, sid, f: GaussPolyFn) -> float:
        alpha, beta = self.normalize_sid(sid)
        return f.diff(beta).monomial_mul(alpha).sup_abs()

    def enum_ids(self, count: int):
        """(alpha, beta) ordered by |alpha| + |beta|, then lexicographically."""
        out = []
        total = 0
        while len(out) < count:
            block = []
            for asum in range(total + 1):
                bsum = total - asum
                alphas = [a for a in itertools.product(range(asum + 1), repeat=self.n) if sum(a) == asum]
                betas = [b for b in itertools.product(range(bsum + 1), repeat=self.n) if sum(b) == bsum]
                block.extend((a, b) for a in alphas for b in betas)
            out.extend(sorted(block))
            total += 1
        return out[:count]

    def weight(self, sid):
        raise ValueError("no weights configured for the Schwartz family")

    def element_to_json(self, f):
        return f.to_json()

    def element_from_json(self, doc):
        return GaussPolyFn.from_json(doc)

    def sid_to_json(self, sid):
        alpha, beta = self.normalize_sid(sid)
        return [list(alpha), list(beta)]

    def support_ids(self, f):
        return [(mi.zero(self.n), mi.zero(self.n))]

    def random_element(self, rng, max_degree: int = 4, max_terms: int = 2, exact: bool = True) -> GaussPolyFn:
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            decay = tuple(rng.choice([Fraction(1, 2), Fraction(1), Fraction(2)]) for _ in range(self.n))
            poly = {}
            for _ in range(rng.randint(1, 3)):
                exp = tuple(rng.randint(0, max_degree) for _ in range(self.n))
                c = Fraction(rng.randint(-6, 6), rng.choice([1, 2])) if exact else rng.uniform(-3, 3)
                if c:
                    poly[exp] = c
            if poly:
                terms.append(GaussPolyTerm(SparsePoly(self.n, poly), decay))
        f = GaussPolyFn(self.n, terms)
        if f.is_zero():
            return GaussPolyFn.gaussian((Fraction(1),) * self.n)
        return f

    def random_direction(self, rng) -> GaussPolyFn:
        return self.random_element(rng)


def space_from_json(doc: dict):
    kind = doc["space"]
    if kind == "schwartz":
        return SchwartzSpace(int(doc.get("n", 1)))
    if kind == "sigma_rho":
        return SigmaRhoSpace(doc["rho"])
    if kind == "s":
        return SSpace()
    raise ValueError(f"unknown space {kind!r}")


def sigma_inclusion_check(x: SeqElement, rho: float, gamma: float) -> dict:
    """sigma_rho inside sigma_gamma for rho < gamma: finite-support elements
    belong to both; termwise |t|^gamma <= |t|^rho wherever |t| <= 1."""
    if not (0 < rho < gamma < 1):
        raise ValueError("need 0 < rho < gamma < 1")
    SigmaRhoSpace(rho).validate(x)
    sum_rho = sum(float(abs(v)) ** rho for v in x.prefix)
    sum_gamma = sum(float(abs(v)) ** gamma for v in x.prefix)
    reversed_at = [i + 1 for i, v in enumerate(x.prefix) if abs(v) > 1]
    termwise = all(
        float(abs(v)) ** gamma <= float(abs(v)) ** rho + 1e-15 for v in x.prefix if abs(v) <= 1
    )
    return {
        "member_rho": True,
        "member_gamma": True,
        "sum_rho": sum_rho,
        "sum_gamma": sum_gamma,
        "termwise_small_entries": termwise,
        "entries_above_one": reversed_at,
        "passed": termwise,
    }


def scaling_property_check(x: SeqElement, a: float, max_index: int | None = None) -> dict:
    """S-seminorm scaling: |a| < 1 gives |ax|_k >= |a||x|_k; |a| >= 1 gives
    |ax|_k <= |a||x|_k.  Verified at every prefix index plus the tail."""
    s = SSpace()
    ax = x.scale(a)
    idx = range(1, (max_index or x.support_len() + 1) + 1)
    slack = 1e-12
    failures = []
    for k in idx:
        lhs = s.seminorm(k, ax)
        rhs = abs(float(a)) * s.seminorm(k, x)
        ok = (lhs + slack >= rhs) if abs(float(a)) < 1 else (lhs <= rhs + slack)
        if not ok:
            failures.append({"k": k, "lhs": lhs, "rhs": rhs})
    return {"a": float(a), "passed": not failures, "failures": failures}
