"""Multi-index calculus on N^n: componentwise order, lattice ops, ranges.

A multi-index is a plain tuple of nonnegative ints.  All functions validate
dimension compatibility and raise ValueError on mismatch.
"""

from __future__ import annotations

import itertools
from math import comb

MultiIndex = tuple

__all__ = [
    "check",
    "order",
    "leq",
    "join",
    "meet",
    "add",
    "sub",
    "binom",
    "downward_closure",
    "box_range",
    "zero",
]


def check(alpha) -> tuple:
    """Validate and normalize a multi-index to a tuple of nonnegative ints."""
    a = tuple(int(v) for v in alpha)
    if any(v < 0 for v in a):
        raise ValueError(f"multi-index entries must be >= 0, got {alpha}")
    return a


def zero(n: int) -> tuple:
    return (0,) * n


def order(alpha) -> int:
    """|alpha| = sum of entries."""
    return sum(alpha)


def _same_dim(alpha, beta):
    if len(alpha) != len(beta):
        raise ValueError(f"dimension mismatch: {alpha} vs {beta}")


def leq(alpha, beta) -> bool:
    """Componentwise alpha_i <= beta_i."""
    _same_dim(alpha, beta)
    return all(a <= b for a, b in zip(alpha, beta))


def join(alpha, beta) -> tuple:
    """Componentwise max."""
    _same_dim(alpha, beta)
    return tuple(max(a, b) for a, b in zip(alpha, beta))


def meet(alpha, beta) -> tuple:
    """Componentwise min."""
    _same_dim(alpha, beta)
    return tuple(min(a, b) for a, b in zip(alpha, beta))


def add(alpha, beta) -> tuple:
    _same_dim(alpha, beta)
    return tuple(a + b for a, b in zip(alpha, beta))


def sub(alpha, beta) -> tuple:
    """Componentwise difference; requires beta <= alpha."""
    _same_dim(alpha, beta)
    if not leq(beta, alpha):
        raise ValueError(f"{beta} is not <= {alpha}")
    return tuple(a - b for a, b in zip(alpha, beta))


def binom(beta, k) -> int:
    """Product of componentwise binomial coefficients C(beta_i, k_i)."""
    _same_dim(beta, k)
    out = 1
    for b, kk in zip(beta, k):
        out *= comb(b, kk)
    return out


def box_range(lo, hi):
    """All multi-indices k with lo <= k <= hi, in lexicographic order."""
    _same_dim(lo, hi)
    if not leq(lo, hi):
        return
    yield from itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def downward_closure(alpha):
    """All multi-indices k with 0 <= k <= alpha."""
    yield from box_range(zero(len(alpha)), alpha)
