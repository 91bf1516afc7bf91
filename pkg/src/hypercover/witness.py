"""Step-by-step lower-bound certificate for nondegenerate covers.

Given a family satisfying the nondegeneracy condition, :func:`run_pipeline`

1. picks a vertex ``w`` lying on the fewest planes and flips coordinates so
   that ``w`` becomes the origin,
2. collects the planes ``H_1, ..., H_m`` through the origin, in family order,
3. splits ``{1..n}`` greedily by first appearance in their supports
   (blocks ``T_1..T_m``) and keeps the majority-sign half of each block
   (``T'_j``), giving ``S`` with ``|S| >= n/2``,
4. checks exhaustively on the subcube ``Q_S = {v : supp(v) ⊆ S}`` that every
   non-zero ``v`` misses some plane through the origin, and hence that the
   remaining planes cover ``Q_S`` minus the origin without touching it,
5. restricts the remaining planes to the coordinate subspace spanned by ``S``.

The last step feeds the Alon-Furedi bound (a punctured ``|S|``-cube needs at
least ``|S|`` planes), so ``|family| >= |S| >= ceil(n/2)``. That bound is
used as a black box here; the search module confirms it for small ``|S|``.

Any failed check on a valid input raises InternalConsistencyError.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InputError, InternalConsistencyError, NondegeneracyError
from .family import Family, find_violation, incidence
from .geometry import (
    Hyperplane,
    Vertex,
    VertexSet,
    bools_to_mask,
    canonicalize,
    covered_array,
    iter_bits,
    support_bits,
    vertex_values,
)


def _ceil_half(n):
    return (n + 1) // 2


def flip_plane(h: Hyperplane, flip_mask: int) -> Hyperplane:
    """Substitute ``x_i -> 1 - x_i`` for every bit ``i`` of ``flip_mask``."""
    normal = list(h.normal)
    b = h.offset
    for i in iter_bits(flip_mask):
        b -= normal[i]
        normal[i] = -normal[i]
    return canonicalize(normal, b)


def flip_to_origin(family: Family, w: Vertex) -> Family:
    """Change of variables moving ``w`` to the origin.

    ``v`` lies on ``h`` iff ``v ^ w`` lies on the flipped plane. Applying the
    same flip twice gives back the original family.
    """
    if w.dim != family.dim:
        raise InputError(f"vertex dim {w.dim} does not match family dim {family.dim}")
    return Family(family.dim, [flip_plane(h, w.bits) for h in family])


def minimizing_vertex(family: Family) -> Vertex:
    """Vertex on the fewest planes; ties go to the smallest bitmask."""
    counts = incidence(family).counts
    return Vertex(family.dim, int(np.argmin(counts)))


def greedy_support_partition(normals: Sequence[Sequence[int]], n: int | None = None):
    """Blocks ``T_j = supp(a_j)`` minus the supports of earlier normals.

    Returns a list of sorted tuples of 1-based indices (possibly empty).
    """
    if n is None:
        if not normals:
            raise InputError("cannot infer the dimension from an empty list of normals")
        n = len(normals[0])
    seen = 0
    blocks = []
    for a in normals:
        s = support_bits(a)
        fresh = s & ~seen
        blocks.append(tuple(i + 1 for i in iter_bits(fresh)))
        seen |= s
    if seen != (1 << n) - 1:
        missing = [i + 1 for i in iter_bits(((1 << n) - 1) & ~seen)]
        raise InputError(f"supports do not cover coordinates {missing}")
    return blocks


def sign_majority_refine(block: Sequence[int], normal: Sequence[int]):
    """Larger same-sign part of ``block`` under ``normal``; ties keep the positive part.

    Returns ``(kept, sign)`` with ``sign`` in ``{+1, -1}``.
    """
    pos = tuple(i for i in block if normal[i - 1] > 0)
    neg = tuple(i for i in block if normal[i - 1] < 0)
    if len(pos) + len(neg) != len(block):
        raise InputError("block contains a coordinate outside the normal's support")
    if len(pos) >= len(neg):
        return pos, 1
    return neg, -1


@dataclass(frozen=True)
class RestrictedHyperplane:
    """Trace of a plane on ``U = {x : supp(x) ⊆ S}``, in coordinates ``S``.

    ``plane`` is None when the restricted normal vanishes; the trace is
    then empty because the plane misses the origin.
    """

    source_index: int
    coords: tuple[int, ...]
    plane: Hyperplane | None

    @property
    def empty(self) -> bool:
        return self.plane is None


def restrict_to_subspace(h: Hyperplane, S: Sequence[int], source_index: int = -1):
    """Drop the coordinates outside ``S`` (1-based, sorted on output)."""
    if h.offset == 0:
        raise InputError(f"{h} passes through the origin; its trace on U is all of U")
    coords = tuple(sorted(S))
    if not coords:
        raise InputError("S must be non-empty")
    normal = [h.normal[i - 1] for i in coords]
    if not any(normal):
        return RestrictedHyperplane(source_index, coords, None)
    return RestrictedHyperplane(source_index, coords, canonicalize(normal, h.offset))


@dataclass(frozen=True)
class RefinedBlock:
    block: tuple[int, ...]
    kept: tuple[int, ...]
    sign: int


@dataclass
class WitnessReport:
    dim: int
    family_size: int
    w: Vertex
    flip_mask: int
    flipped: Family
    H0_indices: tuple[int, ...]
    partition: tuple[tuple[int, ...], ...]
    refined: tuple[RefinedBlock, ...]
    S: tuple[int, ...]
    QS: VertexSet
    claim_qs_ok: bool
    claim_qs_mechanism_ok: bool
    claim_subcube_ok: bool
    restricted: tuple[RestrictedHyperplane, ...]
    restricted_cover_ok: bool
    lower_bound: int
    failures: list[str] = field(default_factory=list)

    @property
    def rest_size(self) -> int:
        return self.family_size - len(self.H0_indices)

    @property
    def certified(self) -> bool:
        return (not self.failures
                and self.family_size >= self.rest_size >= len(self.S) >= self.lower_bound)

    def to_dict(self) -> dict:
        from .io import plane_to_record, vertex_to_list

        return {
            "dim": self.dim,
            "family_size": self.family_size,
            "w": vertex_to_list(self.w),
            "flip_mask": [i + 1 for i in iter_bits(self.flip_mask)],
            "flipped_family": [plane_to_record(h) for h in self.flipped],
            "H0_indices": list(self.H0_indices),
            "H0": [plane_to_record(self.flipped[j]) for j in self.H0_indices],
            "partition": [list(t) for t in self.partition],
            "refined": [{"block": list(r.block), "kept": list(r.kept),
                         "sign": "+" if r.sign > 0 else "-"} for r in self.refined],
            "S": list(self.S),
            "QS": {"dim": self.dim, "size": len(self.QS), "mask": hex(self.QS.mask)},
            "claim_qs_ok": self.claim_qs_ok,
            "claim_qs_mechanism_ok": self.claim_qs_mechanism_ok,
            "claim_subcube_ok": self.claim_subcube_ok,
            "restricted": [{"source_index": r.source_index,
                            "coords": list(r.coords),
                            "plane": None if r.empty else plane_to_record(r.plane)}
                           for r in self.restricted],
            "restricted_cover_ok": self.restricted_cover_ok,
            "rest_size": self.rest_size,
            "S_size": len(self.S),
            "lower_bound": self.lower_bound,
            "certified": self.certified,
            "failures": list(self.failures),
        }


def _check_restricted_cover(restricted, s: int) -> bool:
    """Restricted planes cover every non-zero vertex of ``{0,1}^s`` but not 0."""
    hit = np.zeros(1 << s, dtype=bool)
    for r in restricted:
        if not r.empty:
            hit |= covered_array(r.plane)
    return bool(not hit[0] and hit[1:].all())


def run_pipeline(family: Family, strict: bool = True) -> WitnessReport:
    """Execute the lower-bound argument on ``family`` and verify every step.

    Raises NondegeneracyError if the family does not satisfy the condition.
    With ``strict`` (the default) a failed check raises
    InternalConsistencyError carrying the report as ``.report``.
    """
    n = family.dim
    violation = find_violation(family)
    if violation is not None:
        raise NondegeneracyError(
            f"family violates nondegeneracy at {violation}", violation=violation)

    w = minimizing_vertex(family)
    flipped = flip_to_origin(family, w)
    H0 = tuple(j for j, h in enumerate(flipped) if h.offset == 0)
    rest = tuple(j for j in range(len(flipped)) if flipped[j].offset != 0)
    failures = []

    normals = [flipped[j].normal for j in H0]
    partition = tuple(greedy_support_partition(normals, n))
    covered_idx = sorted(i for t in partition for i in t)
    if covered_idx != list(range(1, n + 1)):
        failures.append("blocks do not partition {1..n}")

    refined = []
    for t, a in zip(partition, normals):
        kept, sign = sign_majority_refine(t, a)
        refined.append(RefinedBlock(t, kept, sign))
        if 2 * len(kept) < len(t):
            failures.append(f"refined block {kept} is less than half of {t}")
    refined = tuple(refined)
    S = tuple(sorted(i for r in refined for i in r.kept))
    s_mask = sum(1 << (i - 1) for i in S)
    if len(S) < _ceil_half(n):
        failures.append(f"|S| = {len(S)} is below ceil(n/2) = {_ceil_half(n)}")

    idx = np.arange(1 << n, dtype=np.int64)
    in_qs = (idx & ~s_mask) == 0
    QS = VertexSet(n, bools_to_mask(in_qs))
    qs = idx[in_qs][1:]  # non-zero vertices of Q_S, ascending

    cov = flipped.covered

    # every non-zero v in Q_S avoids some plane through the origin
    if H0:
        claim_qs_ok = bool((~cov[list(H0)][:, qs]).any(axis=0).all())
    else:
        claim_qs_ok = qs.size == 0
    if not claim_qs_ok:
        failures.append("some non-zero vertex of Q_S lies on every plane through the origin")

    # ... and the first plane meeting supp(v) is the one it avoids
    first = np.full(qs.shape, -1, dtype=np.int64)
    for k, j in enumerate(H0):
        hit = ((qs & support_bits(flipped[j].normal)) != 0) & (first < 0)
        first[hit] = k
    mechanism_ok = bool((first >= 0).all())
    for k, j in enumerate(H0):
        mine = qs[first == k]
        if not mine.size:
            continue
        supp = support_bits(flipped[j].normal)
        kept_mask = sum(1 << (i - 1) for i in refined[k].kept)
        if ((mine & supp) & ~kept_mask).any():
            mechanism_ok = False
        vals = vertex_values(flipped[j].normal)[mine]
        if (vals == 0).any():
            mechanism_ok = False
    if not mechanism_ok:
        failures.append("first-meeting plane check failed on Q_S")

    # remaining planes cover Q_S minus the origin and avoid the origin
    if rest:
        rest_cov = cov[list(rest)]
        claim_subcube_ok = bool(rest_cov[:, qs].any(axis=0).all() and not rest_cov[:, 0].any())
    else:
        claim_subcube_ok = qs.size == 0
    if not claim_subcube_ok:
        failures.append("planes off the origin do not cover Q_S minus the origin")

    restricted = tuple(restrict_to_subspace(flipped[j], S, source_index=j) for j in rest)
    restricted_ok = _check_restricted_cover(restricted, len(S))
    if not restricted_ok:
        failures.append("restricted planes do not cover the punctured |S|-cube")

    # black-box step: a punctured |S|-cube needs at least |S| planes
    if len(rest) < len(S):
        failures.append(f"{len(rest)} planes cover a punctured {len(S)}-cube")

    report = WitnessReport(
        dim=n,
        family_size=len(family),
        w=w,
        flip_mask=w.bits,
        flipped=flipped,
        H0_indices=H0,
        partition=partition,
        refined=refined,
        S=S,
        QS=QS,
        claim_qs_ok=claim_qs_ok,
        claim_qs_mechanism_ok=mechanism_ok,
        claim_subcube_ok=claim_subcube_ok,
        restricted=restricted,
        restricted_cover_ok=restricted_ok,
        lower_bound=_ceil_half(n),
        failures=failures,
    )
    if strict and failures:
        err = InternalConsistencyError("; ".join(failures))
        err.report = report
        raise err
    return report


def _fmt_set(s):
    return "{" + ",".join(map(str, s)) + "}"


def format_trace(report: WitnessReport) -> str:
    """Human-readable account of a pipeline run."""
    lines = [
        f"dimension n = {report.dim}, |H| = {report.family_size}",
        f"minimizing vertex w = {report.w}"
        + (f", flipped coordinates {_fmt_set(i + 1 for i in iter_bits(report.flip_mask))}"
           if report.flip_mask else " (no flip needed)"),
        f"planes through the origin after flipping (m = {len(report.H0_indices)}):",
    ]
    for k, j in enumerate(report.H0_indices):
        lines.append(f"  H_{k + 1} = #{j}: {report.flipped[j]}")
    for k, r in enumerate(report.refined, start=1):
        lines.append(f"  T_{k} = {_fmt_set(r.block)} -> T'_{k} = {_fmt_set(r.kept)}"
                     f" (sign {'+' if r.sign > 0 else '-'})")
    lines.append(f"S = {_fmt_set(report.S)}, |S| = {len(report.S)} >= ceil(n/2) = {report.lower_bound}")
    lines.append(f"Q_S has {len(report.QS)} vertices")
    ok = {True: "ok", False: "FAILED"}
    lines.append(f"non-zero v in Q_S avoid some plane through 0: {ok[report.claim_qs_ok]}"
                 f" (first-meeting check {ok[report.claim_qs_mechanism_ok]})")
    lines.append(f"other planes cover Q_S minus 0 and miss 0: {ok[report.claim_subcube_ok]}")
    empties = sum(r.empty for r in report.restricted)
    lines.append(f"restricted to U: {len(report.restricted)} traces ({empties} empty),"
                 f" punctured-cube cover {ok[report.restricted_cover_ok]}")
    lines.append(f"|H| = {report.family_size} >= |H minus H_0| = {report.rest_size}"
                 f" >= |S| = {len(report.S)} >= {report.lower_bound}")
    lines.append("certified" if report.certified else "NOT certified: " + "; ".join(report.failures))
    return "\n".join(lines)
