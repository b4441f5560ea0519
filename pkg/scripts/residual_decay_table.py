#!/usr/bin/env python3
"""Print the Gateaux residual decay table for the power-operator catalogue.

For each (operator, base point) the difference-quotient residual against the
closed-form derivative is evaluated along t = 10^-1 .. 10^-8.  On the
rho-power space the residual scales like t^rho; on the other two spaces it is
linear in t.  A perturbed candidate column shows the plateau that separates
wrong derivatives from right ones.
"""

from fractions import Fraction

from fsemcalc.differentiation import gateaux_residual
from fsemcalc.gausspoly import GaussPolyFn
from fsemcalc.operators import (
    Diagonal,
    IdentityScaled,
    MultiplyBy,
    Operator,
    analytic_frechet,
    linmap_add,
)
from fsemcalc.seminorms import index_set
from fsemcalc.spaces import SchwartzSpace, SeqElement, SigmaRhoSpace, SSpace


def cases():
    sch, sig, s = SchwartzSpace(1), SigmaRhoSpace(0.5), SSpace()
    gauss = GaussPolyFn.gaussian((Fraction(1),))
    xg = gauss.monomial_mul((1,))
    for m in (2, 3):
        yield Operator("power", {"m": m}, sch, sch), gauss, xg, [((0,), (0,))]
        yield Operator("power", {"m": m}, sig, sig), SeqElement([1]), SeqElement([1, 1]), [1, 2]
        yield Operator("power", {"m": m}, s, s), SeqElement([3], tail=1), SeqElement([1, 1]), [1, 2]
        yield Operator("cross_power", {"m": m}, sig, s), SeqElement([2]), SeqElement([1, 1]), [1, 2]


def perturb(L, op):
    if isinstance(op.codomain, SchwartzSpace):
        return linmap_add(L, MultiplyBy(GaussPolyFn.gaussian((Fraction(1),)), op.codomain))
    if isinstance(L, Diagonal):
        return linmap_add(L, Diagonal((1,), 1, op.codomain))
    return linmap_add(L, IdentityScaled(1, op.codomain))


def main():
    mags = [Fraction(1, 10**k) for k in range(1, 9)]
    header = "operator".ljust(22) + "".join(f"t=1e-{k}".rjust(11) for k in range(1, 9)) + "  plateau(wrong)"
    print(header)
    print("-" * len(header))
    for op, xbar, v, J in cases():
        Jset = index_set(op.codomain, J)
        L = analytic_frechet(op, xbar)
        row = [float(gateaux_residual(op, xbar, v, L, t, Jset)) for t in mags]
        wrong = float(gateaux_residual(op, xbar, v, perturb(L, op), mags[-1], Jset))
        print(op.describe().ljust(22) + "".join(f"{r:11.2e}" for r in row) + f"  {wrong:11.2e}")


if __name__ == "__main__":
    main()
