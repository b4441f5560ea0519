"""The epsilon-delta verification engine.

Continuity, Gateaux directional differentiability and Frechet
differentiability (conditions (DZ)/(DR)) are checked against explicit
(I, delta) data.  Wherever the theory supplies a constructive delta recipe
(power operators on the three spaces, linear operators via their seminorm
bounds) that recipe is used and recorded; otherwise a geometric delta search
is the fallback.  Scalar divisions (residual/t, residual/max p(u)) always
happen on the element *before* any seminorm is applied: the F-seminorms are
not homogeneous, so dividing seminorm values instead would change the
meaning of the conditions.

All witnesses are value objects with JSON projections; runs are
deterministic given a seeded random generator.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .operators import (
    Diagonal,
    IdentityScaled,
    LinearMap,
    MultiplyBy,
    Operator,
    OperatorMap,
    SumMap,
    ZeroMap,
    analytic_frechet,
    seminorm_bound,
)
from .seminorms import CheckReport, IndexSet, family_max, index_set
from .spaces import SchwartzSpace, SeqElement, SigmaRhoSpace, SSpace

__all__ = [
    "GateauxWitness",
    "FrechetWitness",
    "ContinuityWitness",
    "NoRecipeError",
    "default_t_schedule",
    "gateaux_residual",
    "verify_gateaux",
    "estimate_gateaux",
    "dr_ratio",
    "delta_constructor",
    "verify_frechet",
    "continuity_delta",
    "continuity_verify",
    "fnorm_translate_forward",
    "fnorm_translate_backward",
    "uniqueness_probe",
    "RescaledFamily",
    "basis_independence_check",
    "frechet_implies_continuity_check",
]

EXACT_ZERO_TOL = 1e-12
MAX_STORED_SAMPLES = 100


class NoRecipeError(LookupError):
    """No constructive delta recipe exists for this operator kind."""


def default_t_schedule():
    """t in {+-10^-k : k = 1..8}, exact rationals so that residual algebra
    on rational data cancels exactly."""
    return [Fraction(1, 10**k) for k in range(1, 9)]


def _reciprocal(t):
    if isinstance(t, (int, Fraction)):
        return Fraction(1, 1) / Fraction(t)
    return 1.0 / t


def _stats(values):
    vals = [float(v) for v in values]
    if not vals:
        return {"max": 0.0, "mean": 0.0}
    return {"max": max(vals), "mean": sum(vals) / len(vals)}


# ---------------------------------------------------------------------------
# Gateaux


@dataclass
class GateauxWitness:
    J: IndexSet
    epsilon: float
    delta: float
    schedule: list  # (t, residual) pairs
    passed: bool
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def to_json(self, space=None) -> dict:
        return {
            "kind": "gateaux",
            "passed": self.passed,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "J": [str(s) for s in self.J],
            "seed": self.seed,
            "schedule": [{"t": float(t), "residual": float(r)} for t, r in self.schedule[:MAX_STORED_SAMPLES]],
            "n_schedule": len(self.schedule),
            "residuals": _stats(r for _, r in self.schedule),
            **({"details": self.details} if self.details else {}),
        }


def gateaux_residual(op: Operator, xbar, v, L: LinearMap, t, J) -> float:
    """max_q q((T(xbar + t v) - T(xbar) - t L v) / t) over q in J."""
    if t == 0:
        raise ValueError("t must be nonzero")
    if op.domain.is_zero(v):
        raise ValueError("direction must be nonzero")
    dom, cod = op.domain, op.codomain
    J = J if isinstance(J, IndexSet) else index_set(cod, J)
    shifted = op.apply(dom.add(xbar, dom.scale(t, v)))
    num = cod.sub(cod.sub(shifted, op.apply(xbar)), cod.scale(t, L.apply(v)))
    return family_max(cod, cod.scale(_reciprocal(t), num), J)


def verify_gateaux(op: Operator, xbar, v, L: LinearMap, J, epsilon: float, t_schedule=None, seed=None) -> GateauxWitness:
    """Largest schedule-prefix delta with all residuals < epsilon, both signs.

    Passes when such a delta exists and the residual run is eventually
    nonincreasing (over the last half of the schedule, per sign).
    """
    J = J if isinstance(J, IndexSet) else index_set(op.codomain, J)
    mags = sorted(set(abs(t) for t in (t_schedule or default_t_schedule())), reverse=True)
    records = []
    per_mag = []
    for m in mags:
        rp = gateaux_residual(op, xbar, v, L, m, J)
        rm = gateaux_residual(op, xbar, v, L, -m, J)
        records.extend([(m, rp), (-m, rm)])
        per_mag.append(max(rp, rm))
    k0 = len(mags)
    for k in range(len(mags), 0, -1):
        if per_mag[k - 1] < epsilon:
            k0 = k - 1
        else:
            break
    found = k0 < len(mags)
    delta = float(mags[k0 - 1]) if k0 >= 1 else 10.0 * float(mags[0])
    half = len(per_mag) // 2
    tail = per_mag[half:]
    monotone = all(tail[i + 1] <= tail[i] * (1 + 1e-9) + 1e-15 for i in range(len(tail) - 1))
    return GateauxWitness(J, float(epsilon), delta if found else 0.0, records, found and monotone, seed)


def estimate_gateaux(op: Operator, xbar, v, t_schedule=None, J=None):
    """Numeric difference-quotient limit: the quotient at the smallest t plus
    per-seminorm convergence diagnostics (successive quotient gaps)."""
    dom, cod = op.domain, op.codomain
    if dom.is_zero(v):
        raise ValueError("direction must be nonzero")
    mags = sorted(set(abs(t) for t in (t_schedule or default_t_schedule())), reverse=True)
    J = J if isinstance(J, IndexSet) else index_set(cod, J or cod.enum_ids(2))
    tx = op.apply(xbar)

    def quotient(t):
        return cod.scale(_reciprocal(t), cod.sub(op.apply(dom.add(xbar, dom.scale(t, v))), tx))

    quots = [quotient(m) for m in mags]
    diffs = [cod.sub(quots[i + 1], quots[i]) for i in range(len(quots) - 1)]
    per_sid = {
        str(sid): [float(cod.seminorm(sid, d)) for d in diffs] for sid in J.ids
    }
    gaps = [max(vals[i] for vals in per_sid.values()) for i in range(len(diffs))]
    converging = not gaps or gaps[-1] <= max(gaps[0], 1e-15)
    report = CheckReport(
        "gateaux_estimate",
        converging,
        None,
        len(mags),
        0.0,
        details={
            "t_min": float(mags[-1]),
            "successive_gaps": [float(g) for g in gaps],
            "per_seminorm": per_sid,
        },
    )
    return quots[-1], report


# ---------------------------------------------------------------------------
# Frechet: (DZ) / (DR)


@dataclass
class FrechetWitness:
    J: IndexSet
    epsilon: float
    I: IndexSet
    delta: float
    dz_samples: list
    dr_samples: list  # (element, family_max, ratio)
    delta_source: str
    recipe: str
    passed: bool
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def to_json(self, space=None) -> dict:
        dr = self.dr_samples
        stored = [
            {
                "u": (space.element_to_json(u) if space is not None else None),
                "max_I": float(c),
                "ratio": float(r),
            }
            for u, c, r in dr[:MAX_STORED_SAMPLES]
        ]
        return {
            "kind": "frechet",
            "passed": self.passed,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "delta_source": self.delta_source,
            "recipe": self.recipe,
            "J": [str(s) for s in self.J],
            "I": [str(s) for s in self.I],
            "seed": self.seed,
            "n_dz": len(self.dz_samples),
            "dz_residuals": _stats(r for _, r in self.dz_samples),
            "n_dr": len(dr),
            "dr_ratios": _stats(r for _, _, r in dr),
            "dr_samples": stored,
            **({"details": self.details} if self.details else {}),
        }


def dr_ratio(op: Operator, xbar, u, L: LinearMap, I, J) -> float:
    """max_q q((T(xbar+u) - T(xbar) - L u) / max_{p in I} p(u)); the divisor
    goes inside q because F-seminorms are not homogeneous."""
    dom, cod = op.domain, op.codomain
    I = I if isinstance(I, IndexSet) else index_set(dom, I)
    J = J if isinstance(J, IndexSet) else index_set(cod, J)
    c = family_max(dom, u, I)
    if c == 0:
        raise ValueError("max_I p(u) = 0 belongs to the (DZ) branch")
    num = cod.sub(cod.sub(op.apply(dom.add(xbar, u)), op.apply(xbar)), L.apply(u))
    return family_max(cod, cod.scale(1.0 / c, num), J)


def _covering_index_set(dom, cod_J: IndexSet) -> IndexSet:
    """Canonical domain index set covering a codomain J (recipe shape)."""
    if isinstance(dom, SchwartzSpace):
        ids = list(cod_J.ids)
        alpha = ids[0][0]
        beta = ids[0][1]
        from . import multiindex as mi

        for a, b in ids[1:]:
            alpha, beta = mi.join(alpha, a), mi.join(beta, b)
        closure = [(a, b) for a in mi.downward_closure(alpha) for b in mi.downward_closure(beta)]
        return index_set(dom, closure)
    m = max(int(k) for k in cod_J.ids)
    return index_set(dom, range(1, m + 1))


def _bracket(val: float) -> float:
    # recipes are proved for epsilon < 1; a smaller epsilon only shrinks delta
    return min(val, 0.999)


def delta_constructor(op: Operator, xbar, J, epsilon: float):
    """(I, delta, recipe id) per the constructive proofs.

    power on Schwartz: downward-closed I and delta from the factorial/2^...
    formula (separate origin recipe); power on the sequence spaces: prefix I
    and delta from the prefix-max formulas; linear kinds: any delta works
    since the residual vanishes identically.
    """
    dom, cod = op.domain, op.codomain
    J = J if isinstance(J, IndexSet) else index_set(cod, J)
    eps = _bracket(float(epsilon))
    if op.is_linear:
        return _covering_index_set(dom, J), float(epsilon), "linear-exact"
    if op.kind in ("power", "cross_power"):
        m = int(op.params["m"])
        if isinstance(dom, SchwartzSpace):
            from . import multiindex as mi

            I = _covering_index_set(dom, J)
            beta = mi.zero(dom.n)
            for _, b in J.ids:
                beta = mi.join(beta, b)
            abeta = mi.order(beta)
            if dom.is_zero(xbar):
                lam = (eps / 2.0 ** (m * abeta)) ** (1.0 / (m - 1))
                return I, lam, "schwartz-power-origin"
            bracket = 0.0
            # bracket max over exponents 1..m; the constant function is not
            # a member of the space, so exponent 0 is excluded
            for i in range(1, m + 1):
                p = xbar.pow(i)
                bracket = max(bracket, max(dom.seminorm(sid, p) for sid in J.ids))
            delta = eps / ((m - 1) * math.factorial(m) * (bracket + 1.0) * 2.0 ** ((m + 1) * abeta))
            return I, delta, "schwartz-power"
        M = max(int(k) for k in J.ids)
        I = index_set(dom, range(1, M + 1))
        pm = dom.p_sup_prefix(xbar, M)
        if isinstance(dom, SigmaRhoSpace) and isinstance(cod, SigmaRhoSpace):
            return I, eps / (pm + 1.0) ** (m * dom.rho), "power-sigma"
        if isinstance(dom, SSpace):
            return I, eps / (2.0 * (1.0 + pm) ** m), "power-s"
        if op.kind == "cross_power":
            return I, eps / (1.0 + pm) ** m, "power-cross"
    raise NoRecipeError(f"no constructive delta for kind {op.kind!r}")


def _kernel_samples(dom, I: IndexSet, rng, count: int = 20):
    """Elements with max_I p(u) = 0: support disjoint from I for the
    sequence spaces; only the origin on Schwartz space (sup-seminorm there
    separates everything once (0,0) is in I)."""
    if isinstance(dom, SchwartzSpace):
        return [dom.zero()]
    m = max(int(k) for k in I.ids)
    out = []
    for _ in range(count):
        lead = [0] * m
        extra = [rng.uniform(-3, 3) for _ in range(rng.randint(1, 3))]
        tail = 0
        if isinstance(dom, SSpace) and rng.random() < 0.4:
            tail = rng.uniform(-2, 2)
        out.append(SeqElement(lead + extra, tail))
    return out


def scale_into(dom, u, I: IndexSet, target: float):
    """Scale u so family_max(u, I) lands (essentially) on target > 0."""
    c = family_max(dom, u, I)
    if c == 0:
        return None
    if isinstance(dom, SigmaRhoSpace):
        return dom.scale((target / c) ** (1.0 / dom.rho), u)
    if isinstance(dom, SchwartzSpace):
        return dom.scale(target / c, u)
    lo, hi = 0.0, 1.0
    for _ in range(200):
        if family_max(dom, dom.scale(hi, u), I) >= target:
            break
        hi *= 2.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if family_max(dom, dom.scale(mid, u), I) < target:
            lo = mid
        else:
            hi = mid
    return dom.scale(lo, u)


def _dr_targets(delta: float, rng, n: int):
    targets = [delta / 2.0, delta * (1.0 - 1e-6)]
    while len(targets) < n:
        targets.append(rng.uniform(0.0, delta) or delta / 3.0)
    return targets[:n]


def verify_frechet(
    op: Operator,
    xbar,
    J,
    epsilon: float,
    L: LinearMap | None = None,
    delta_source: str = "auto",
    rng=None,
    n_samples: int = 500,
    seed=None,
    sampler=None,
) -> FrechetWitness:
    """(DZ)/(DR) harness around an (I, delta) pair.

    delta_source: "constructive" (recipe required), "searched" (geometric
    shrink), "auto" (recipe, else search), or an explicit (I, delta) pair.
    A candidate override L is checked against the recipe's (I, delta) for
    the operator, which is what makes wrong candidates fail rather than
    hide behind a tiny searched delta.
    """
    rng = rng or random.Random(0)
    dom, cod = op.domain, op.codomain
    J = J if isinstance(J, IndexSet) else index_set(cod, J)
    if L is None:
        L = analytic_frechet(op, xbar)

    recipe = "explicit"
    if isinstance(delta_source, tuple):
        I, delta = delta_source
        I = I if isinstance(I, IndexSet) else index_set(dom, I)
        source_name = "explicit"
    elif delta_source in ("auto", "constructive"):
        try:
            I, delta, recipe = delta_constructor(op, xbar, J, epsilon)
            source_name = "constructive"
        except NoRecipeError:
            if delta_source == "constructive":
                raise
            I, delta, recipe, source_name = None, None, "searched", "searched"
    else:
        I, delta, recipe, source_name = None, None, "searched", "searched"

    draw = sampler or (lambda: dom.random_direction(rng))

    def run_batch(I, delta, count):
        dz, dr = [], []
        for u in _kernel_samples(dom, I, rng):
            num = cod.sub(cod.sub(op.apply(dom.add(xbar, u)), op.apply(xbar)), L.apply(u))
            dz.append((u, family_max(cod, num, J)))
        for target in _dr_targets(delta, rng, count):
            for _ in range(20):
                u = scale_into(dom, draw(), I, target)
                if u is None:
                    continue
                c = family_max(dom, u, I)
                if 0.0 < c < delta:
                    break
            else:
                raise RuntimeError("sampler failed to land in the punctured neighborhood")
            dr.append((u, c, dr_ratio(op, xbar, u, L, I, J)))
        return dz, dr

    if source_name == "searched":
        I = _covering_index_set(dom, J)
        delta = 1.0
        dz = dr = None
        while delta >= 1e-12:
            dz, dr = run_batch(I, delta, n_samples)
            if all(r <= EXACT_ZERO_TOL for _, r in dz) and all(r < epsilon for _, _, r in dr):
                break
            delta /= 2.0
        passed = delta >= 1e-12
        return FrechetWitness(J, float(epsilon), I, delta, dz, dr, "searched", recipe, passed, seed)

    dz, dr = run_batch(I, delta, n_samples)
    passed = all(r <= EXACT_ZERO_TOL for _, r in dz) and all(r < epsilon for _, _, r in dr)
    return FrechetWitness(J, float(epsilon), I, float(delta), dz, dr, source_name, recipe, passed, seed)


# ---------------------------------------------------------------------------
# continuity


@dataclass
class ContinuityWitness:
    J: IndexSet
    epsilon: float
    I: IndexSet
    delta: float
    samples: list  # (x, image residual)
    recipe: str
    passed: bool
    seed: int | None = None

    def to_json(self, space=None) -> dict:
        stored = [
            {
                "x": (space.element_to_json(x) if space is not None else None),
                "image_residual": float(r),
            }
            for x, r in self.samples[:MAX_STORED_SAMPLES]
        ]
        return {
            "kind": "continuity",
            "passed": self.passed,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "recipe": self.recipe,
            "J": [str(s) for s in self.J],
            "I": [str(s) for s in self.I],
            "seed": self.seed,
            "n_samples": len(self.samples),
            "image_residuals": _stats(r for _, r in self.samples),
            "samples": stored,
        }


def continuity_delta(op: Operator, x0, J, epsilon: float):
    """(I, delta, recipe) for Definition-3.1 continuity.

    Power on sigma_rho: delta = eps / (m (P(x)+1)^{m-1} (eps+1)); power on
    S: delta = eps / ((1+2 P_M(x))^m (eps+1)); linear kinds through their
    (family, C) seminorm bound.
    """
    dom, cod = op.domain, op.codomain
    J = J if isinstance(J, IndexSet) else index_set(cod, J)
    eps = float(epsilon)
    if op.is_linear:
        ids = []
        worst = None
        for q in J.ids:
            fam, c = seminorm_bound(op, q)
            ids.extend(fam)
            bound = eps / max(c * len(fam), 1e-300)
            worst = bound if worst is None else min(worst, bound)
        return index_set(dom, ids), worst, "linear-bound"
    if op.kind == "power" and isinstance(dom, SigmaRhoSpace):
        m = int(op.params["m"])
        M = max(int(k) for k in J.ids)
        I = index_set(dom, range(1, M + 1))
        delta = eps / (m * (dom.p_sup(x0) + 1.0) ** (m - 1) * (eps + 1.0))
        return I, delta, "continuity-power-sigma"
    if op.kind == "power" and isinstance(dom, SSpace):
        m = int(op.params["m"])
        M = max(int(k) for k in J.ids)
        I = index_set(dom, range(1, M + 1))
        delta = eps / ((1.0 + 2.0 * dom.p_sup_prefix(x0, M)) ** m * (eps + 1.0))
        return I, delta, "continuity-power-s"
    raise NoRecipeError(f"no constructive continuity delta for {op.kind!r}")


def continuity_verify(
    op: Operator,
    x0,
    J,
    epsilon: float,
    delta_source="auto",
    rng=None,
    n_samples: int = 500,
    seed=None,
    sampler=None,
) -> ContinuityWitness:
    """Sample x with max_I p(x - x0) < delta and check the image condition
    max_J q(T x - T x0) < epsilon."""
    rng = rng or random.Random(0)
    dom, cod = op.domain, op.codomain
    J = J if isinstance(J, IndexSet) else index_set(cod, J)

    recipe = "explicit"
    searched = False
    if isinstance(delta_source, tuple):
        I, delta = delta_source
        I = I if isinstance(I, IndexSet) else index_set(dom, I)
    elif delta_source in ("auto", "constructive"):
        try:
            I, delta, recipe = continuity_delta(op, x0, J, epsilon)
        except NoRecipeError:
            if delta_source == "constructive":
                raise
            searched = True
    else:
        searched = True

    tx0 = op.apply(x0)
    draw = sampler or (lambda: dom.random_direction(rng))

    def run_batch(I, delta, count):
        samples = []
        for target in _dr_targets(delta, rng, count):
            u = None
            for _ in range(20):
                u = scale_into(dom, draw(), I, target)
                if u is not None and family_max(dom, u, I) < delta:
                    break
            if u is None:
                u = dom.zero()
            x = dom.add(x0, u)
            samples.append((x, family_max(cod, cod.sub(op.apply(x), tx0), J)))
        return samples

    if searched:
        I = _covering_index_set(dom, J)
        delta, recipe = 1.0, "searched"
        samples = []
        while delta >= 1e-12:
            samples = run_batch(I, delta, n_samples)
            if all(r < epsilon for _, r in samples):
                break
            delta /= 2.0
        passed = delta >= 1e-12
        return ContinuityWitness(J, float(epsilon), I, delta, samples, recipe, passed, seed)

    samples = run_batch(I, delta, n_samples)
    passed = all(r < epsilon for _, r in samples)
    return ContinuityWitness(J, float(epsilon), I, float(delta), samples, recipe, passed, seed)


# ---------------------------------------------------------------------------
# F-norm translation (countable weighted families)


def fnorm_translate_forward(op: Operator, x0, epsilon: float, rng=None, n_samples: int = 0):
    """From a Definition-3.1 witness to the F-norm implication.

    Given epsilon for the F-norm target: pick the tail cutoff M with
    sum_{j>M} b_j < eps/2, take J = {1..M} and eps1 = eps/(2B), obtain
    (I, delta1) for (J, eps1) from the constructive continuity recipe, and
    return delta = a delta1 / (1 + delta1) with a = min weight over I.
    """
    dom, cod = op.domain, op.codomain
    if not (getattr(dom, "has_weights", False) and getattr(cod, "has_weights", False)):
        raise ValueError("translation needs countable weighted families on both sides")
    b_total = 1.0  # sum of 2^-j
    eps = float(epsilon)
    if eps >= 2.0 * b_total:
        raise ValueError(f"epsilon = {eps} >= 2 B = {2 * b_total}: tail cutoff impossible")
    m = 1
    while 0.5**m >= eps / 2.0:
        m += 1
    J = index_set(cod, range(1, m + 1))
    eps1 = eps / (2.0 * b_total)
    I, delta1, recipe = continuity_delta(op, x0, J, eps1)
    a = min(float(dom.weight(k)) for k in I.ids)
    delta = a * delta1 / (1.0 + delta1)
    return {
        "M": m,
        "J": J,
        "eps1": eps1,
        "I": I,
        "delta1": delta1,
        "a": a,
        "delta": delta,
        "recipe": recipe,
    }


def fnorm_translate_backward(op: Operator, x0, J, epsilon: float):
    """From the F-norm implication back to a Definition-3.1 witness.

    b = min weight over J, eps1 = b eps/(1+eps); delta1 is a level at which
    the F-norm implication holds (built through the forward construction);
    then I = {1..N} with tail sum < delta1/2 and delta = delta1/(2A).
    """
    dom, cod = op.domain, op.codomain
    J = J if isinstance(J, IndexSet) else index_set(cod, J)
    eps = float(epsilon)
    b = min(float(cod.weight(j)) for j in J.ids)
    eps1 = b * eps / (1.0 + eps)
    fwd = fnorm_translate_forward(op, x0, eps1)
    delta1 = fwd["delta"]
    a_total = 1.0
    n = 1
    while 0.5**n >= delta1 / 2.0:
        n += 1
    I = index_set(dom, range(1, n + 1))
    delta = delta1 / (2.0 * a_total)
    return {"b": b, "eps1": eps1, "delta1": delta1, "N": n, "I": I, "delta": delta, "forward": fwd}


# ---------------------------------------------------------------------------
# probes


def uniqueness_probe(space, L1: LinearMap, L2: LinearMap, J, directions) -> CheckReport:
    """max over w and q in J of q(L1 w - L2 w); 0 means the two candidates
    coincide on J, otherwise the separating witness is reported."""
    J = J if isinstance(J, IndexSet) else index_set(space, J)
    worst, witness = 0.0, None
    for w in directions:
        gap = family_max(space, space.sub(L1.apply(w), L2.apply(w)), J)
        if gap > worst:
            worst, witness = gap, w
    ce = None
    if worst > EXACT_ZERO_TOL:
        ce = {"gap": worst, "element": space.element_to_json(witness)}
    return CheckReport("uniqueness_probe", worst <= EXACT_ZERO_TOL, ce, len(list(directions)), EXACT_ZERO_TOL, details={"max_gap": worst})


class RescaledFamily:
    """Same space, seminorms multiplied by per-id factors in [1, 2]; this
    generates the same topology, so derivatives must not change."""

    def __init__(self, base, factor):
        self._base = base
        self._factor = factor

    def seminorm(self, sid, x):
        return self._factor(self._base.normalize_sid(sid)) * self._base.seminorm(sid, x)

    def __getattr__(self, name):
        return getattr(self._base, name)


def basis_independence_check(op: Operator, xbar, v, factor, J, epsilon: float, t_schedule=None) -> CheckReport:
    """verify_gateaux must pass with the same candidate under the original
    codomain family and under a rescaled one."""
    L = analytic_frechet(op, xbar)
    w1 = verify_gateaux(op, xbar, v, L, J, epsilon, t_schedule)
    rescaled = Operator(op.kind, op.params, op.domain, RescaledFamily(op.codomain, factor))
    w2 = verify_gateaux(rescaled, xbar, v, L, J, epsilon, t_schedule)
    passed = w1.passed and w2.passed
    return CheckReport(
        "basis_independence",
        passed,
        None if passed else {"original": w1.passed, "rescaled": w2.passed},
        len(w1.schedule),
        epsilon,
        details={"delta_original": w1.delta, "delta_rescaled": w2.delta},
    )


def _linmap_continuity_delta(L: LinearMap, dom, cod, J: IndexSet, epsilon: float):
    """(I, delta) making max_I p(u) < delta imply max_J q(L u) < epsilon."""
    eps = float(epsilon)
    if isinstance(L, ZeroMap):
        return _covering_index_set(dom, J), 0.5
    if isinstance(L, SumMap):
        parts = [_linmap_continuity_delta(p, dom, cod, J, eps / len(L.parts)) for p in L.parts]
        I = parts[0][0]
        for i2, _ in parts[1:]:
            I = I.union(i2)
        return I, min(d for _, d in parts)
    if isinstance(L, OperatorMap):
        I, delta, _ = continuity_delta(L.op, dom.zero(), J, eps)
        return I, delta
    if isinstance(L, MultiplyBy):
        op = Operator("mult", {"g": L.g}, dom, cod)
        I, delta, _ = continuity_delta(op, dom.zero(), J, eps)
        return I, delta
    if isinstance(L, IdentityScaled):
        c = abs(float(L.c))
        if isinstance(dom, SigmaRhoSpace):
            factor = c**dom.rho
        elif isinstance(dom, SchwartzSpace):
            factor = c
        else:
            factor = max(1.0, c)
        return _covering_index_set(dom, J), min(0.999, eps / max(factor, 1e-300))
    if isinstance(L, Diagonal):
        m = max(int(k) for k in J.ids)
        dmax = max((abs(float(L.entry(k))) for k in range(1, m + 1)), default=0.0)
        I = index_set(dom, range(1, m + 1))
        if isinstance(dom, SigmaRhoSpace) and isinstance(cod, SigmaRhoSpace):
            return I, min(0.999, eps / max(dmax**dom.rho, 1e-300))
        # into S: q(d u) <= max(1, |d|) q-ish bound via |u| <= |u|^rho < 1
        return I, min(0.999, eps / max(1.0, dmax))
    raise NoRecipeError(f"no continuity delta for map {L.describe()}")


def frechet_implies_continuity_check(op: Operator, xbar, configs, rng=None, n_samples: int = 200) -> CheckReport:
    """Differentiability-implies-continuity, run constructively: for each
    (J, epsilon) the continuity delta is min(Frechet delta at eps/2, the
    derivative map's own continuity delta at eps/2), both kept below 1."""
    rng = rng or random.Random(0)
    dom, cod = op.domain, op.codomain
    L = analytic_frechet(op, xbar)
    results = []
    for J, epsilon in configs:
        J = J if isinstance(J, IndexSet) else index_set(cod, J)
        fw = verify_frechet(op, xbar, J, epsilon / 2.0, rng=rng, n_samples=max(50, n_samples // 2))
        if not fw.passed:
            return CheckReport("frechet_implies_continuity", False, {"stage": "frechet", "epsilon": epsilon}, 0, 0.0)
        I2, d2 = _linmap_continuity_delta(L, dom, cod, J, epsilon / 2.0)
        I = fw.I.union(I2)
        delta = min(fw.delta, d2, 0.999)
        cw = continuity_verify(op, xbar, J, epsilon, delta_source=(I, delta), rng=rng, n_samples=n_samples)
        results.append(cw)
        if not cw.passed:
            return CheckReport(
                "frechet_implies_continuity",
                False,
                {"stage": "continuity", "epsilon": epsilon, "delta": delta},
                n_samples,
                0.0,
            )
    return CheckReport(
        "frechet_implies_continuity",
        True,
        None,
        sum(len(c.samples) for c in results),
        0.0,
        details={"deltas": [c.delta for c in results]},
    )
