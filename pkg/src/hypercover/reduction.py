"""Bounded-coefficient slicing families to nondegenerate covers.

Every plane ``<a, x> = b`` of a slicing family with ``a`` in ``[-C, C]^n``
is replaced by the ``2C`` parallel planes ``<a, x> = floor(b) + z`` for
``z = -(C-1), ..., C``. A vertex ``v`` at the end of an edge sliced by the
source plane has ``|<a, v> - b| < C`` with ``<a, v>`` an integer, so it lies
on one of the replacements, whose normal is non-zero in the edge direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CoefficientBoxError,
    InputError,
    InternalConsistencyError,
    NotSlicingError,
)
from .family import Family, find_unsliced_edge, planes_outside_box
from .geometry import Edge, Hyperplane, canonicalize, evaluate


def floor_rational(b) -> int:
    """Exact floor of a rational."""
    return math.floor(Fraction(b))


@dataclass(frozen=True)
class ExpansionRecord:
    source: Hyperplane
    C: int
    produced: tuple[Hyperplane, ...]


def _check_box_bound(C):
    if isinstance(C, bool) or not isinstance(C, int) or C < 1:
        raise InputError(f"C must be a positive integer, got {C!r}")


def expand_hyperplane(h: Hyperplane, C: int) -> ExpansionRecord:
    """The ``2C`` planes ``<a, x> = floor(b) + z``, in increasing ``z``."""
    _check_box_bound(C)
    h = canonicalize(h)
    if max(abs(a) for a in h.normal) > C:
        raise CoefficientBoxError(
            f"normal of {h} has an entry outside [-{C}, {C}]", plane=h)
    base = floor_rational(h.offset)
    produced = tuple(Hyperplane(h.normal, Fraction(base + z))
                     for z in range(-(C - 1), C + 1))
    return ExpansionRecord(h, C, produced)


def reduce_slicing_to_cover(family: Family, C: int) -> Family:
    """Union of all expansions, deduplicated, in source order.

    Raises NotSlicingError (with the first unsliced edge) or
    CoefficientBoxError (with the first offending plane).
    """
    _check_box_bound(C)
    edge = find_unsliced_edge(family)
    if edge is not None:
        raise NotSlicingError(f"edge {edge} is not sliced by the family", edge=edge)
    outside = planes_outside_box(family, C)
    if outside:
        k = outside[0]
        raise CoefficientBoxError(
            f"plane #{k} ({family[k]}) has a coefficient outside [-{C}, {C}]",
            plane=family[k], index=k)
    planes = []
    for h in family:
        planes.extend(expand_hyperplane(h, C).produced)
    return Family(family.dim, planes)


def slicing_gap(h: Hyperplane, e: Edge, C: int) -> Fraction:
    """``|<a,v> - b|`` at the base of a sliced edge, checked to be below ``C``.

    Re-derives the key inequality for one sliced edge: the endpoint values
    differ by ``a_i`` (bounded by C) and have opposite strict signs, so each
    endpoint is within distance C of the plane's offset.
    """
    v, w = e.endpoints
    ev, ew = evaluate(h, v), evaluate(h, w)
    if not ev * ew < 0:
        raise InputError(f"{h} does not slice edge {e}")
    a_i = h.normal[e.direction - 1]
    if abs(a_i) > C:
        raise CoefficientBoxError(f"{h} has coefficient {a_i} outside [-{C}, {C}]", plane=h)
    if abs(ev - ew) != abs(a_i) or a_i == 0:
        raise InternalConsistencyError(f"edge difference mismatch on {e} for {h}")
    gap = max(abs(ev), abs(ew))
    if not gap < C:
        raise InternalConsistencyError(f"endpoint of {e} is {gap} away from {h}, not below {C}")
    return gap
