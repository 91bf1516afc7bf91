"""Hyperplane families and the cover / skew / nondegeneracy / slicing predicates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import DimensionError, InputError
from .geometry import (
    Edge,
    Hyperplane,
    Vertex,
    VertexSet,
    EdgeSet,
    bools_to_mask,
    canonicalize,
    contains,
    covered_array,
    is_skew,
    sliced_array,
    support_bits,
)


class Family:
    """Ordered, duplicate-free collection of canonical hyperplanes in dimension ``dim``.

    Planes are canonicalized on the way in; a plane equal to an earlier one
    is dropped. Insertion order is kept because the witness pipeline's
    greedy support partition depends on it.
    """

    def __init__(self, dim: int, planes: Iterable = ()):
        if not isinstance(dim, int) or dim < 1:
            raise DimensionError(f"dimension must be a positive integer, got {dim!r}")
        self.dim = dim
        seen = set()
        kept = []
        for h in planes:
            if not isinstance(h, Hyperplane):
                h = canonicalize(*h)
            else:
                h = canonicalize(h)
            if h.dim != dim:
                raise DimensionError(
                    f"plane {h} has dimension {h.dim}, family has dimension {dim}")
            if h not in seen:
                seen.add(h)
                kept.append(h)
        self.planes: tuple[Hyperplane, ...] = tuple(kept)

    def __len__(self):
        return len(self.planes)

    def __iter__(self) -> Iterator[Hyperplane]:
        return iter(self.planes)

    def __getitem__(self, i):
        return self.planes[i]

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return self.dim == other.dim and self.planes == other.planes

    def __hash__(self):
        return hash((self.dim, self.planes))

    def __repr__(self):
        return f"Family(dim={self.dim}, planes=[{', '.join(map(str, self.planes))}])"

    def as_set(self) -> frozenset:
        return frozenset(self.planes)

    def sorted(self) -> Family:
        return Family(self.dim, sorted(self.planes, key=Hyperplane.sort_key))

    # cached whole-cube tables -------------------------------------------

    @cached_property
    def covered(self) -> np.ndarray:
        """``len(self) x 2**dim`` boolean incidence matrix."""
        if not self.planes:
            return np.zeros((0, 1 << self.dim), dtype=bool)
        return np.stack([covered_array(h) for h in self.planes])

    @cached_property
    def sliced(self) -> np.ndarray:
        if not self.planes:
            return np.zeros((0, self.dim << (self.dim - 1)), dtype=bool)
        return np.stack([sliced_array(h) for h in self.planes])

    @cached_property
    def supports(self) -> tuple[int, ...]:
        return tuple(support_bits(h.normal) for h in self.planes)


@dataclass(frozen=True)
class IncidenceIndex:
    """Per-vertex incidence data.

    ``counts[v]`` is the number of planes through vertex ``v``;
    ``support_union[v]`` is the OR of support masks of those planes.
    """

    dim: int
    counts: np.ndarray
    support_union: np.ndarray


@dataclass(frozen=True)
class Violation:
    """A vertex with no plane through it whose normal uses ``direction``.

    An uncovered vertex fails every direction; it is reported with direction 1.
    """

    vertex: Vertex
    direction: int

    def __str__(self):
        return f"({self.vertex}, {self.direction})"


def incidence(family: Family) -> IncidenceIndex:
    cov = family.covered
    counts = cov.sum(axis=0, dtype=np.int64)
    union = np.zeros(1 << family.dim, dtype=np.int64)
    for row, s in zip(cov, family.supports):
        union[row] |= s
    return IncidenceIndex(family.dim, counts, union)


def find_uncovered(family: Family) -> Vertex | None:
    """Smallest vertex (by bitmask) lying on no plane, or None."""
    hit = family.covered.any(axis=0)
    missing = np.flatnonzero(~hit)
    if missing.size:
        return Vertex(family.dim, int(missing[0]))
    return None


def is_cover(family: Family) -> bool:
    return find_uncovered(family) is None


def is_skew_cover(family: Family) -> bool:
    return all(is_skew(h) for h in family) and is_cover(family)


def find_violation(family: Family) -> Violation | None:
    """Lexicographically least (vertex, direction) failing nondegeneracy."""
    full = (1 << family.dim) - 1
    union = incidence(family).support_union
    bad = np.flatnonzero(union != full)
    if not bad.size:
        return None
    v = int(bad[0])
    missing = full & ~int(union[v])
    return Violation(Vertex(family.dim, v), (missing & -missing).bit_length())


def is_nondegenerate_cover(family: Family) -> bool:
    return find_violation(family) is None


def check_violation(family: Family, violation: Violation) -> bool:
    """Independently re-check that a reported violation is genuine."""
    through = [h for h in family if contains(h, violation.vertex)]
    return all(h.normal[violation.direction - 1] == 0 for h in through)


def find_unsliced_edge(family: Family) -> Edge | None:
    hit = family.sliced.any(axis=0)
    missing = np.flatnonzero(~hit)
    if missing.size:
        return Edge.from_index(family.dim, int(missing[0]))
    return None


def is_slicing_family(family: Family) -> bool:
    return find_unsliced_edge(family) is None


def covered_union(family: Family) -> VertexSet:
    return VertexSet(family.dim, bools_to_mask(family.covered.any(axis=0)))


def sliced_union(family: Family) -> EdgeSet:
    return EdgeSet(family.dim, bools_to_mask(family.sliced.any(axis=0)))


def max_abs_coefficient(family: Family) -> int:
    return max((abs(a) for h in family for a in h.normal), default=0)


def planes_outside_box(family: Family, C: int) -> list[int]:
    """Indices of planes whose canonical normal leaves ``[-C, C]^n``."""
    if C < 1:
        raise InputError(f"box bound C must be a positive integer, got {C}")
    return [k for k, h in enumerate(family) if max(abs(a) for a in h.normal) > C]
