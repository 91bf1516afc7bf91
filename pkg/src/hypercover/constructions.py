"""Explicit hyperplane families."""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .family import Family
from .geometry import hyperplane


def _require(n, least):
    if not isinstance(n, int) or n < least:
        raise InputError(f"n must be an integer >= {least}, got {n!r}")


def _unit(n, i):
    return [1 if k == i else 0 for k in range(n)]


def trivial_cover(n: int) -> Family:
    """The two facets ``x1 = 0`` and ``x1 = 1``."""
    _require(n, 1)
    return Family(n, [hyperplane(_unit(n, 0), 0), hyperplane(_unit(n, 0), 1)])


def tight_cover(n: int) -> Family:
    """``x1 + ... + x_{n-1} - (n-1) x_n = 0`` plus the layers ``sum(x) = t``, ``t = 1..n-1``.

    A skew cover of size n that also satisfies the nondegeneracy condition.
    """
    _require(n, 2)
    skew = [1] * (n - 1) + [-(n - 1)]
    layers = [hyperplane([1] * n, t) for t in range(1, n)]
    return Family(n, [hyperplane(skew, 0), *layers])


def sum_layer_cover(n: int) -> Family:
    """All ``n + 1`` weight layers ``sum(x) = t``."""
    _require(n, 1)
    return Family(n, [hyperplane([1] * n, t) for t in range(n + 1)])


def axis_slicing_family(n: int) -> Family:
    """``x_i = 1/2`` for each i; plane i slices exactly the direction-i edges."""
    _require(n, 1)
    return Family(n, [hyperplane(_unit(n, i), Fraction(1, 2)) for i in range(n)])


CONSTRUCTIONS = {
    "trivial": trivial_cover,
    "tight": tight_cover,
    "sum-layers": sum_layer_cover,
    "axis-slicing": axis_slicing_family,
}
