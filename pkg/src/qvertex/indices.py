"""Compositions indexing the symmetric-tensor basis, and their small algebra.

A basis vector of the weight-I module at rank n is a composition of I into n
non-negative parts.  Externally we use the canonical (n-1)-component form
(the last part is redundant: it equals I minus the sum of the others); the
lifted n-component form appears inside formulas exactly where a product or
convolution runs over all n parts.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Tuple

Comp = Tuple[int, ...]


def total(i: Comp) -> int:
    return sum(i)


def vec_add(a: Comp, b: Comp) -> Comp:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Comp, b: Comp) -> Comp:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def dot(a: Comp, b: Comp) -> int:
    return sum(x * y for x, y in zip(a, b, strict=True))


def lift(i: Comp, weight: int) -> Comp:
    """Append the redundant last part, weight - |i|.  Integer weights only."""
    rest = weight - sum(i)
    if rest < 0:
        raise ValueError(f"|{i}| exceeds weight {weight}")
    return i + (rest,)


def drop(i: Comp) -> Comp:
    """Inverse of lift: forget the last part."""
    return i[:-1]


def tau(i: Comp) -> Comp:
    """Order reversal."""
    return tuple(reversed(i))


def cyc(i: Comp) -> Comp:
    """Cyclic shift moving the last part to the front."""
    return (i[-1],) + i[:-1]


def bar(i: Comp, weight: int) -> Comp:
    """Cyclic shift in the lifted picture, expressed on canonical indices:
    the redundant part weight - |i| becomes the first part and the old last
    canonical part is forgotten."""
    return (weight - sum(i),) + i[:-1]


def pair_dot(i: Comp, j: Comp, weight_i: int, weight_j: int) -> int:
    """Convolution of the lifted n-component indices: (i,j) plus the product
    of the two redundant parts."""
    return dot(i, j) + (weight_i - sum(i)) * (weight_j - sum(j))


def compositions_exact(parts: int, tot: int) -> Iterator[Comp]:
    """All tuples of `parts` non-negative integers summing to `tot`,
    lexicographically."""
    if parts == 0:
        if tot == 0:
            yield ()
        return
    if parts == 1:
        yield (tot,)
        return
    for first in range(tot + 1):
        for rest in compositions_exact(parts - 1, tot - first):
            yield (first,) + rest


def compositions_at_most(parts: int, max_total: int) -> Iterator[Comp]:
    """All tuples of `parts` non-negative integers with sum <= max_total,
    ordered by total then lexicographically.  This is the canonical basis
    enumeration of a weight-max_total module at rank parts+1."""
    for tot in range(max_total + 1):
        yield from compositions_exact(parts, tot)


def basis(n: int, weight: int) -> list[Comp]:
    """Canonical (n-1)-component basis of the weight-`weight` module."""
    return list(compositions_at_most(n - 1, weight))


def sector_splits(t: Comp, weight_i: int, weight_j: int) -> Iterator[Tuple[Comp, Comp]]:
    """All (i, j) with i + j = t componentwise, |i| <= weight_i, |j| <= weight_j.

    These are exactly the row pairs a conservation sector couples to.
    """
    tot = sum(t)
    for i in product(*(range(ts + 1) for ts in t)):
        si = sum(i)
        if si <= weight_i and tot - si <= weight_j:
            yield tuple(i), vec_sub(t, i)


def boxes(i: Comp, j: Comp) -> Iterator[Comp]:
    """All m with 0 <= m <= min(i, j) componentwise (summation boxes)."""
    return product(*(range(min(a, b) + 1) for a, b in zip(i, j, strict=True)))
