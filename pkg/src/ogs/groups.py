"""Symbolic finite groups and their element-order census.

Only three constructors are supported: cyclic groups ``Z_n``, dihedral
groups ``D_n`` (order ``2n``) and direct products.  The superpower graph of
a group depends only on how many elements there are of each order, so the
central object here is the order profile, a ``{order: count}`` mapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Union

from .errors import CapExceeded, DomainError

DEFAULT_ENUM_CAP = 5000


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"cyclic group needs n >= 1, got {self.n!r}", 0)


@dataclass(frozen=True)
class Dihedral:
    n: int

    def __post_init__(self):
        # D_1 and D_2 have competing conventions; refuse them
        if not isinstance(self.n, int) or self.n < 3:
            raise DomainError(f"dihedral group needs n >= 3, got {self.n!r}", 0)


@dataclass(frozen=True)
class Product:
    left: "GroupExpr"
    right: "GroupExpr"


GroupExpr = Union[Cyclic, Dihedral, Product]


def group_order(expr: GroupExpr) -> int:
    if isinstance(expr, Cyclic):
        return expr.n
    if isinstance(expr, Dihedral):
        return 2 * expr.n
    if isinstance(expr, Product):
        return group_order(expr.left) * group_order(expr.right)
    raise TypeError(f"not a group expression: {expr!r}")


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    """Euler's totient, by trial-division factorisation."""
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result, m, q = n, n, 2
    while q * q <= m:
        if m % q == 0:
            while m % q == 0:
                m //= q
            result -= result // q
        q += 1
    if m > 1:
        result -= result // m
    return result


def _sorted(counts: dict[int, int]) -> dict[int, int]:
    return {d: counts[d] for d in sorted(counts)}


def order_profile(expr: GroupExpr) -> dict[int, int]:
    """Return ``{order: number of elements of that order}``, keys ascending.

    Products are handled by convolution: the order of ``(x, y)`` is
    ``lcm(o(x), o(y))``.
    """
    if isinstance(expr, Cyclic):
        return {d: euler_phi(d) for d in divisors(expr.n)}
    if isinstance(expr, Dihedral):
        prof = order_profile(Cyclic(expr.n))
        prof[2] = prof.get(2, 0) + expr.n
        return _sorted(prof)
    if isinstance(expr, Product):
        left, right = order_profile(expr.left), order_profile(expr.right)
        out: dict[int, int] = {}
        for d1, c1 in left.items():
            for d2, c2 in right.items():
                d = lcm(d1, d2)
                out[d] = out.get(d, 0) + c1 * c2
        return _sorted(out)
    raise TypeError(f"not a group expression: {expr!r}")


def _element_orders(expr: GroupExpr) -> list[int]:
    if isinstance(expr, Cyclic):
        n = expr.n
        return [n // gcd(i, n) for i in range(n)]
    if isinstance(expr, Dihedral):
        n = expr.n
        # elements a^i b^f; every reflection (f=1) is an involution
        return [n // gcd(i, n) if f == 0 else 2 for i in range(n) for f in (0, 1)]
    left, right = _element_orders(expr.left), _element_orders(expr.right)
    return [lcm(a, b) for a in left for b in right]


def enumerate_element_orders(expr: GroupExpr, cap: int = DEFAULT_ENUM_CAP) -> dict[int, int]:
    """Brute-force census: materialise every element and tally its order.

    Independent of :func:`order_profile`; used as its oracle.
    """
    size = group_order(expr)
    if size > cap:
        raise CapExceeded(size, cap)
    counts: dict[int, int] = {}
    for o in _element_orders(expr):
        counts[o] = counts.get(o, 0) + 1
    return _sorted(counts)


def group_exponent(expr: GroupExpr) -> int:
    return lcm(*order_profile(expr))
