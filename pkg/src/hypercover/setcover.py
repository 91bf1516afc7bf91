"""Exact minimum set cover over int bitmasks.

Sets are Python ints; element ``k`` is bit ``k``. The solver returns the
minimum cardinality and, among all minimum covers drawn from the (optionally
dominance-pruned) pool, the lexicographically least tuple of input indices.
Because input order defines that tie-break, callers sort their candidates
canonically first.

Search: iterative deepening on the cover size, starting at the max-coverage
lower bound and capped by a greedy cover. Each depth is a feasibility test
that branches on the uncovered element with the fewest covering sets.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import InfeasibleError
from .geometry import iter_bits

MEMO_MAX_ELEMENTS = 32


@dataclass(frozen=True)
class CoverSolution:
    minimum: int
    chosen: tuple[int, ...]
    pool_size: int


def prune_dominated(sets: Sequence[int]) -> list[int]:
    """Indices of sets not contained in another set.

    Among equal sets the earliest index is kept. Output is ascending.
    """
    order = sorted(range(len(sets)), key=lambda k: (-sets[k].bit_count(), k))
    kept = []
    for k in order:
        s = sets[k]
        if not any(s & t == s for t in (sets[j] for j in kept)):
            kept.append(k)
    return sorted(kept)


class _Solver:
    def __init__(self, universe, masks, workers):
        self.universe = universe
        self.masks = masks
        self.workers = workers
        self.by_element = {}
        for p, m in enumerate(masks):
            for e in iter_bits(m):
                self.by_element.setdefault(e, []).append(p)
        # suffix maxima of set sizes: best possible coverage from position p on
        self.suffix_max = [0] * (len(masks) + 1)
        for p in range(len(masks) - 1, -1, -1):
            self.suffix_max[p] = max(self.suffix_max[p + 1], masks[p].bit_count())
        self.memo = {} if universe.bit_count() <= MEMO_MAX_ELEMENTS else None

    def _branch_sets(self, rem, start):
        """Covering sets (positions >= start) of the least-coverable element of rem."""
        best = None
        for e in iter_bits(rem):
            lst = self.by_element.get(e, ())
            cnt = len(lst) - bisect_left(lst, start)
            if best is None or cnt < best[0]:
                best = (cnt, e, lst)
                if cnt == 0:
                    break
        cnt, _, lst = best
        return lst[len(lst) - cnt:]

    def feasible(self, rem, start, r):
        """Can ``rem`` be covered by at most r sets at positions >= start?"""
        if rem == 0:
            return True
        if r == 0:
            return False
        if rem.bit_count() > r * self.suffix_max[start]:
            return False
        key = (rem, start, r)
        if self.memo is not None and key in self.memo:
            return False
        branch = self._branch_sets(rem, start)
        masks = self.masks
        if r == 1:
            ok = any(masks[p] & rem == rem for p in branch)
        else:
            ok = any(self.feasible(rem & ~masks[p], start, r - 1) for p in branch)
        if not ok and self.memo is not None:
            self.memo[key] = False
        return ok

    def _map(self, fn, items):
        if self.workers > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                return list(pool.map(fn, items))
        return [fn(x) for x in items]

    def feasible_root(self, r):
        rem = self.universe
        if rem == 0:
            return True
        if r == 0 or rem.bit_count() > r * self.suffix_max[0]:
            return False
        branch = self._branch_sets(rem, 0)
        results = self._map(lambda p: self.feasible(rem & ~self.masks[p], 0, r - 1), branch)
        return any(results)

    def greedy(self):
        rem = self.universe
        count = 0
        while rem:
            p = max(range(len(self.masks)), key=lambda q: ((self.masks[q] & rem).bit_count(), -q))
            rem &= ~self.masks[p]
            count += 1
        return count

    def lex_least(self, k):
        """Lexicographically least k positions whose union is the universe."""
        chosen = []
        rem = self.universe
        start = 0
        for slot in range(k):
            left = k - slot - 1
            positions = [p for p in range(start, len(self.masks)) if self.masks[p] & rem]
            pick = None
            # evaluate in chunks so that parallel runs stop near the first hit
            chunk = max(1, self.workers * 4)
            for lo in range(0, len(positions), chunk):
                part = positions[lo:lo + chunk]
                ok = self._map(
                    lambda p: self.feasible(rem & ~self.masks[p], p + 1, left), part)
                hits = [p for p, good in zip(part, ok) if good]
                if hits:
                    pick = hits[0]
                    break
            if pick is None:
                raise AssertionError("no lexicographic completion for a feasible size")
            chosen.append(pick)
            rem &= ~self.masks[pick]
            start = pick + 1
        return tuple(chosen)


def min_set_cover(universe: int, sets: Sequence[int], *, prune: bool = True,
                  workers: int = 1) -> CoverSolution:
    """Exact minimum cover of ``universe`` by members of ``sets``.

    ``chosen`` holds indices into ``sets``, ascending, and is the
    lexicographically least minimum cover among the non-dominated sets
    (among all sets when ``prune`` is false). The answer does not depend on
    ``workers``.

    Raises InfeasibleError naming the first uncoverable element.
    """
    union = 0
    for s in sets:
        union |= s
    missing = universe & ~union
    if missing:
        e = (missing & -missing).bit_length() - 1
        raise InfeasibleError(f"element {e} is not covered by any set", element=e)
    if universe == 0:
        return CoverSolution(0, (), 0)

    clipped = [s & universe for s in sets]
    live = [k for k, s in enumerate(clipped) if s]
    if prune:
        kept = prune_dominated([clipped[k] for k in live])
        pool = [live[k] for k in kept]
    else:
        pool = live
    solver = _Solver(universe, [clipped[k] for k in pool], max(1, int(workers)))
    upper = solver.greedy()
    lower = -(-universe.bit_count() // solver.suffix_max[0])
    minimum = upper
    for r in range(lower, upper):
        if solver.feasible_root(r):
            minimum = r
            break
    chosen = solver.lex_least(minimum)
    return CoverSolution(minimum, tuple(pool[p] for p in chosen), len(pool))


def exhaustive_set_cover(universe: int, sets: Sequence[int], max_size: int | None = None):
    """Brute-force oracle: try all sub-collections by increasing size.

    Returns ``(minimum, chosen)`` with ``chosen`` the lexicographically least
    minimum cover, or ``(None, None)`` if nothing up to ``max_size`` works.
    """
    if universe == 0:
        return 0, ()
    limit = len(sets) if max_size is None else min(max_size, len(sets))
    for size in range(1, limit + 1):
        for combo in itertools.combinations(range(len(sets)), size):
            acc = 0
            for k in combo:
                acc |= sets[k]
            if acc & universe == universe:
                return size, combo
    return None, None
