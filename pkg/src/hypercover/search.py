"""Exact minimum covers and slicing families at small dimension.

Two candidate spaces:

* **Sections.** Every hyperplane spanned by ``n`` affinely independent cube
  vertices. Any cover can be swapped plane by plane for such a section
  without shrinking what it covers, so section searches are exact for
  plain covers. For the punctured cube the planes must miss the origin; the
  spanning vertices are then ``n`` linearly independent non-zero vertices,
  and the same swap argument applies.
* **Box.** All canonical normals in ``[-C, C]^n`` with integer and
  half-integer offsets. Since ``<a, v>`` is an integer, these offsets
  realise every containment and strict-sign pattern. Results are exact
  within the box only.

Candidates with identical behaviour are merged (canonically least plane
kept) before solving.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetError, InputError, InternalConsistencyError
from .family import (
    Family,
    is_cover,
    is_nondegenerate_cover,
    is_skew_cover,
    is_slicing_family,
)
from .geometry import (
    EdgeSet,
    Hyperplane,
    VertexSet,
    bools_to_mask,
    canonicalize,
    covered_array,
    edge_count,
    edge_pairs,
    support_bits,
    vertex_matrix,
)
from .setcover import exhaustive_set_cover, min_set_cover

PLAIN = "plain-cover"
PUNCTURED = "punctured-cover"
SKEW = "skew-cover"
NONDEGENERATE = "nondegenerate-cover"
SLICING = "edge-slicing"
MODES = (PLAIN, PUNCTURED, SKEW, NONDEGENERATE, SLICING)
BOX_MODES = (SKEW, NONDEGENERATE, SLICING)

SECTION_MAX_DIM = 5
BOX_BUDGET = 2_000_000  # (2C+1)^n * 2^n


@dataclass(frozen=True)
class Candidate:
    """A plane with its precomputed behaviour.

    ``covered`` is a VertexSet (EdgeSet in slicing mode). ``pair_mask`` is
    set in nondegenerate mode: bit ``(i-1) * 2**n + v`` means the plane
    contains ``v`` and uses direction ``i``.
    """

    plane: Hyperplane
    covered: VertexSet | EdgeSet
    pair_mask: int | None = None

    @property
    def mask(self) -> int:
        return self.covered.mask if self.pair_mask is None else self.pair_mask


@dataclass(frozen=True)
class SearchProblem:
    mode: str
    dim: int
    C: int | None
    universe: int

    @property
    def universe_size(self) -> int:
        return self.universe.bit_count()


@dataclass
class SearchResult:
    mode: str
    dim: int
    C: int | None
    minimum: int
    optimal: Family
    candidates_considered: int
    candidates_kept: int
    certified: bool

    @property
    def scope(self) -> str:
        return "complete" if self.certified else f"coefficient box C={self.C}"

    def to_dict(self) -> dict:
        from .io import plane_to_record

        return {
            "mode": self.mode,
            "n": self.dim,
            "C": self.C,
            "minimum": self.minimum,
            "optimal": [plane_to_record(h) for h in self.optimal],
            "candidates_considered": self.candidates_considered,
            "candidates_kept": self.candidates_kept,
            "certified": self.certified,
            "scope": self.scope,
        }


def pair_mask(covered: int, normal, n: int) -> int:
    """Pairs (vertex, direction) served by a plane, as a bitmask."""
    out = 0
    width = 1 << n
    for i, a in enumerate(normal):
        if a:
            out |= covered << (i * width)
    return out


# ---------------------------------------------------------------------------
# candidate spaces


def _primitive_rows(rows: np.ndarray) -> np.ndarray:
    """Scale integer rows to gcd 1 with the first non-zero entry positive."""
    g = np.gcd.reduce(np.abs(rows), axis=1)
    rows = rows // g[:, None]
    first = rows[np.arange(len(rows)), (rows != 0).argmax(axis=1)]
    return rows * np.sign(first)[:, None]


def _section_rows(n: int, avoid_origin: bool) -> np.ndarray:
    """Integer rows ``(a_1..a_n, b)`` for all spanned sections, unnormalised.

    Uses Cramer's rule on batches of 0/1 matrices. Determinants of such small
    matrices are small integers, so rounding the float determinant is exact;
    every row is re-checked against its spanning points in integer
    arithmetic before it is returned.
    """
    V = vertex_matrix(n)
    nonzero = np.arange(1, 1 << n)
    blocks = []

    combos = np.array(list(itertools.combinations(nonzero, n)), dtype=np.int64)
    if combos.size:
        M = V[combos].astype(float)  # (k, n, n): rows are spanning points
        det = np.rint(np.linalg.det(M)).astype(np.int64)
        keep = det != 0
        M, det, pts = M[keep], det[keep], combos[keep]
        a = np.empty((len(M), n), dtype=np.int64)
        for i in range(n):
            Mi = M.copy()
            Mi[:, :, i] = 1.0
            a[:, i] = np.rint(np.linalg.det(Mi)).astype(np.int64)
        lhs = np.einsum("kpn,kn->kp", V[pts], a)
        if not (lhs == det[:, None]).all():
            raise InternalConsistencyError("section solve is not exact")
        blocks.append(np.column_stack([a, det]))

    if not avoid_origin:
        if n == 1:
            blocks.append(np.array([[1, 0]], dtype=np.int64))
        else:
            combos = np.array(list(itertools.combinations(nonzero, n - 1)), dtype=np.int64)
            M = V[combos].astype(float)  # (k, n-1, n)
            a = np.empty((len(M), n), dtype=np.int64)
            for i in range(n):
                minor = np.delete(M, i, axis=2)
                a[:, i] = (-1) ** i * np.rint(np.linalg.det(minor)).astype(np.int64)
            keep = (a != 0).any(axis=1)
            a, pts = a[keep], combos[keep]
            lhs = np.einsum("kpn,kn->kp", V[pts], a)
            if (lhs != 0).any():
                raise InternalConsistencyError("origin section solve is not exact")
            blocks.append(np.column_stack([a, np.zeros(len(a), dtype=np.int64)]))

    rows = np.concatenate(blocks) if blocks else np.zeros((0, n + 1), dtype=np.int64)
    return rows


def enumerate_sections(n: int, avoid_origin: bool) -> list[Candidate]:
    """All maximal hyperplane sections of ``{0,1}^n``, sorted canonically.

    With ``avoid_origin`` only planes missing the origin are returned.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    if n > SECTION_MAX_DIM:
        raise BudgetError(f"section enumeration is limited to n <= {SECTION_MAX_DIM}")
    rows = _section_rows(n, avoid_origin)
    rows = np.unique(_primitive_rows(rows), axis=0)
    planes = sorted(canonicalize([int(x) for x in r[:n]], int(r[n])) for r in rows)
    out = []
    seen = set()
    for h in planes:
        if h in seen:
            continue
        seen.add(h)
        out.append(Candidate(h, VertexSet(n, bools_to_mask(covered_array(h)))))
    return out


def box_normals(n: int, C: int) -> list[tuple[int, ...]]:
    """Canonical (primitive, first non-zero positive) normals in ``[-C, C]^n``."""
    out = []
    for a in itertools.product(range(-C, C + 1), repeat=n):
        if not any(a):
            continue
        if next(x for x in a if x) < 0:
            continue
        if math.gcd(*a) != 1:
            continue
        out.append(a)
    return out


def _check_box(n, C):
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    if isinstance(C, bool) or not isinstance(C, int) or C < 1:
        raise InputError(f"C must be a positive integer, got {C!r}")
    if (2 * C + 1) ** n * (1 << n) > BOX_BUDGET:
        raise BudgetError(f"box enumeration for n={n}, C={C} exceeds the budget")


def enumerate_box_hyperplanes(n: int, C: int, mode: str) -> list[Candidate]:
    """Behaviour-distinct candidates with canonical normal in ``[-C, C]^n``.

    Containment modes use integer offsets; slicing mode uses integer and
    half-integer offsets. Empty behaviours are dropped. Output is sorted by
    canonical plane order, each behaviour represented by its least plane.
    """
    _check_box(n, C)
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}")
    normals = box_normals(n, C)
    if mode == SKEW:
        normals = [a for a in normals if all(a)]
    V = vertex_matrix(n)
    A = np.array(normals, dtype=np.int64).reshape(-1, n)
    vals = V @ A.T  # (2^n, K)

    found = []
    if mode == SLICING:
        lo_idx, hi_idx = [], []
        idx = np.arange(1 << n)
        for d in range(1, n + 1):
            lo, hi = edge_pairs(idx, n, d)
            lo_idx.append(lo)
            hi_idx.append(hi)
        lo_idx, hi_idx = np.concatenate(lo_idx), np.concatenate(hi_idx)
        for k, a in enumerate(normals):
            lo2, hi2 = 2 * vals[lo_idx, k], 2 * vals[hi_idx, k]
            vmin, vmax = int(vals[:, k].min()), int(vals[:, k].max())
            for twice_b in range(2 * vmin + 1, 2 * vmax):
                sliced = (lo2 - twice_b) * (hi2 - twice_b) < 0
                if sliced.any():
                    b = Fraction(twice_b, 2)
                    found.append((Hyperplane(a, b), bools_to_mask(sliced), support_bits(a)))
    else:
        for k, a in enumerate(normals):
            col = vals[:, k]
            for t in np.unique(col):
                covered = bools_to_mask(col == t)
                found.append((Hyperplane(a, Fraction(int(t))), covered, support_bits(a)))

    found.sort(key=lambda item: item[0].sort_key())
    seen = set()
    out = []
    for h, mask, supp in found:
        key = (mask, supp)
        if key in seen:
            continue
        seen.add(key)
        if mode == SLICING:
            out.append(Candidate(h, EdgeSet(n, mask)))
        elif mode == NONDEGENERATE:
            out.append(Candidate(h, VertexSet(n, mask), pair_mask(mask, h.normal, n)))
        else:
            out.append(Candidate(h, VertexSet(n, mask)))
    return out


# ---------------------------------------------------------------------------
# problems


def build_problem(n: int, mode: str, C: int | None = None):
    """The universe and candidate list for a search."""
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if mode in BOX_MODES and C is None:
        raise InputError(f"mode {mode} needs a coefficient bound C")
    if mode == PLAIN:
        cands = enumerate_sections(n, avoid_origin=False)
        universe = (1 << (1 << n)) - 1
    elif mode == PUNCTURED:
        cands = enumerate_sections(n, avoid_origin=True)
        universe = (1 << (1 << n)) - 2
    elif mode == SLICING:
        cands = enumerate_box_hyperplanes(n, C, mode)
        universe = (1 << edge_count(n)) - 1
    elif mode == NONDEGENERATE:
        cands = enumerate_box_hyperplanes(n, C, mode)
        universe = (1 << (n << n)) - 1
    else:
        cands = enumerate_box_hyperplanes(n, C, mode)
        universe = (1 << (1 << n)) - 1
    C_used = C if mode in BOX_MODES else None
    return SearchProblem(mode, n, C_used, universe), cands


def satisfies_mode(family: Family, mode: str) -> bool:
    """The family-level predicate a search result must pass."""
    if mode == PLAIN:
        return is_cover(family)
    if mode == PUNCTURED:
        hit = family.covered.any(axis=0)
        return bool(hit[1:].all() and not hit[0])
    if mode == SKEW:
        return is_skew_cover(family)
    if mode == NONDEGENERATE:
        return is_nondegenerate_cover(family)
    if mode == SLICING:
        return is_slicing_family(family)
    raise InputError(f"unknown mode {mode!r}")


def solve(problem: SearchProblem, cands: list[Candidate], *, workers: int = 1,
          prune: bool = True) -> SearchResult:
    sol = min_set_cover(problem.universe, [c.mask for c in cands],
                        prune=prune, workers=workers)
    optimal = Family(problem.dim, [cands[k].plane for k in sol.chosen])
    if len(optimal) != sol.minimum or not satisfies_mode(optimal, problem.mode):
        raise InternalConsistencyError(
            f"search optimum for {problem.mode} fails its own predicate")
    result = SearchResult(problem.mode, problem.dim, problem.C, sol.minimum, optimal,
                          len(cands), sol.pool_size,
                          certified=problem.mode in (PLAIN, PUNCTURED))
    _check_bounds(result)
    return result


def lower_bound(mode: str, n: int, C: int | None = None) -> int:
    """The proven lower bound for a search mode (0 where none applies)."""
    if mode == NONDEGENERATE:
        return (n + 1) // 2
    if mode == PUNCTURED:
        return n
    if mode == SLICING:
        return -(-n // (4 * C))
    return 1


def _check_bounds(result: SearchResult):
    n, m = result.dim, result.minimum
    if m < lower_bound(result.mode, n, result.C):
        raise InternalConsistencyError(
            f"{result.mode} minimum {m} in dimension {n} is below the proven bound")
    if result.mode == SLICING and m > n:
        raise InternalConsistencyError(f"slicing minimum {m} exceeds n = {n}")


def min_cover(n: int, mode: str, C: int | None = None, *, workers: int = 1) -> SearchResult:
    """Exact minimum cover of the given kind."""
    if mode == SLICING:
        raise InputError("use min_slicing for edge-slicing searches")
    problem, cands = build_problem(n, mode, C)
    return solve(problem, cands, workers=workers)


def min_slicing(n: int, C: int, *, workers: int = 1) -> SearchResult:
    """Exact minimum slicing family with normals in ``[-C, C]^n``."""
    problem, cands = build_problem(n, SLICING, C)
    return solve(problem, cands, workers=workers)


def verify_alon_furedi(s: int, *, workers: int = 1) -> bool:
    """True iff the punctured s-cube needs exactly s planes (``s <= 4``)."""
    if s > 4:
        raise BudgetError("Alon-Furedi verification is limited to s <= 4")
    return min_cover(s, PUNCTURED, workers=workers).minimum == s


def oracle_check(problem: SearchProblem, cands: list[Candidate], result: SearchResult,
                 max_combinations: int = 2_000_000) -> dict:
    """Cross-check a result by brute force over candidate subsets.

    Uses the full behaviour-distinct pool when affordable, otherwise the
    dominance-pruned pool. Returns a small report dictionary.
    """
    masks = [c.mask for c in cands]
    k = result.minimum
    if math.comb(len(masks), k) <= max_combinations:
        pool, label = masks, "full"
    else:
        from .setcover import prune_dominated

        clipped = [m & problem.universe for m in masks]
        pool = [clipped[j] for j in prune_dominated(clipped) if clipped[j]]
        label = "pruned"
        if math.comb(len(pool), k) > max_combinations:
            return {"ran": False, "pool": label, "pool_size": len(pool)}
    minimum, _ = exhaustive_set_cover(problem.universe, pool, max_size=k)
    # the oracle must find size k and nothing smaller
    return {"ran": True, "pool": label, "pool_size": len(pool),
            "oracle_minimum": minimum, "agrees": minimum == k}
