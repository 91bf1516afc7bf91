import itertools
import random
from fractions import Fraction as F

import numpy as np
import pytest

from hypercover import search
from hypercover.constructions import tight_cover
from hypercover.errors import BudgetError, InputError
from hypercover.family import Family
from hypercover.geometry import VertexSet, covered_array, bools_to_mask, hyperplane, sliced_set
from hypercover.search import (
    NONDEGENERATE,
    PLAIN,
    PUNCTURED,
    SKEW,
    SLICING,
    enumerate_box_hyperplanes,
    enumerate_sections,
    min_cover,
    min_slicing,
    satisfies_mode,
    verify_alon_furedi,
)


def rank_sections(n, C, avoid_origin):
    """Independent oracle: sections of affine rank n found by scanning a coefficient box."""
    pts = np.array(list(itertools.product((0, 1), repeat=n)))[:, ::-1]
    out = set()
    for a in itertools.product(range(-C, C + 1), repeat=n):
        if not any(a):
            continue
        vals = pts @ np.array(a)
        for t in np.unique(vals):
            if avoid_origin and t == 0:
                continue
            on = vals == t
            aff = np.column_stack([pts[on], np.ones(on.sum())])
            if on.sum() >= n and np.linalg.matrix_rank(aff) == n:
                out.add(bools_to_mask(on))
    return out


@pytest.mark.parametrize("n, C", [(1, 1), (2, 1), (3, 2), (4, 3)])
@pytest.mark.parametrize("avoid_origin", [False, True])
def test_sections_match_rank_oracle(n, C, avoid_origin):
    got = {c.covered.mask for c in enumerate_sections(n, avoid_origin)}
    assert got == rank_sections(n, C, avoid_origin)


def test_section_counts():
    # n <= 4 from the rank oracle above; n = 5 from the same oracle over boxes C = 4 and 5
    assert [len(enumerate_sections(n, False)) for n in range(1, 6)] == [2, 6, 20, 140, 3254]


def test_sections_n2_avoiding_origin():
    cands = enumerate_sections(2, avoid_origin=True)
    planes = {c.plane for c in cands}
    for a, b in [((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]:
        assert hyperplane(a, b) in planes
    for c in cands:
        assert c.covered.mask & 1 == 0
        assert c.covered == VertexSet(2, bools_to_mask(covered_array(c.plane)))


def test_sections_include_origin_planes():
    planes = {c.plane: c for c in enumerate_sections(2, avoid_origin=False)}
    c = planes[hyperplane((1, 0), 0)]
    assert set(v.bits for v in c.covered) == {0b00, 0b10}


def test_sections_budget():
    with pytest.raises(BudgetError):
        enumerate_sections(6, False)


def test_section_completeness_spot_check():
    rng = random.Random(17)
    for n in (3, 4):
        cand_masks = [c.covered.mask for c in enumerate_sections(n, False)]
        for _ in range(300):
            a = [rng.randint(-3, 3) for _ in range(n)]
            if not any(a):
                continue
            b = rng.randint(-3, 6)
            mask = bools_to_mask(covered_array(hyperplane(a, b)))
            assert any(mask & m == mask for m in cand_masks)


def test_box_slicing_examples():
    cands = enumerate_box_hyperplanes(2, 1, SLICING)
    planes = {c.plane: c for c in cands}
    c = planes[hyperplane((1, 0), F(1, 2))]
    assert len(c.covered) == 2 and all(e.direction == 1 for e in c.covered)
    assert max(len(c.covered) for c in cands) == 2
    # regression value; hand count: 1 + 1 + 2 + 2 patterns for the four normals
    assert len(cands) == 6
    for c in cands:
        assert c.covered == sliced_set(c.plane)


def test_box_candidates_recompute():
    for mode in (SKEW, NONDEGENERATE):
        for c in enumerate_box_hyperplanes(3, 2, mode):
            assert c.covered.mask == bools_to_mask(covered_array(c.plane))
            if mode == NONDEGENERATE:
                assert c.pair_mask == search.pair_mask(c.covered.mask, c.plane.normal, 3)
            else:
                assert all(c.plane.normal)


def test_box_budget_and_input():
    with pytest.raises(BudgetError):
        enumerate_box_hyperplanes(8, 3, SLICING)
    with pytest.raises(InputError):
        enumerate_box_hyperplanes(2, 0, SLICING)


def test_min_cover_examples():
    assert min_cover(3, PLAIN).minimum == 2
    r = min_cover(3, PUNCTURED)
    assert r.minimum == 3 and r.certified
    r = min_cover(2, SKEW, 2)
    assert r.minimum == 2 and not r.certified
    with pytest.raises(InputError):
        min_cover(2, SKEW)


def test_min_slicing_examples():
    assert min_slicing(2, 1).minimum == 2
    assert min_slicing(1, 1).minimum == 1
    assert min_slicing(1, 1).optimal.planes == (hyperplane((1,), F(1, 2)),)
    r = min_slicing(3, 1)
    assert 1 <= r.minimum <= 3
    assert r.minimum == 3  # regression value from exhaustive search


@pytest.mark.parametrize("s", [2, 3, 4])
def test_alon_furedi(s):
    assert verify_alon_furedi(s)


def test_results_reverify():
    for r in [min_cover(4, PLAIN), min_cover(4, PUNCTURED), min_cover(3, SKEW, 2),
              min_cover(3, NONDEGENERATE, 2), min_slicing(3, 2)]:
        assert satisfies_mode(r.optimal, r.mode)
        assert len(r.optimal) == r.minimum


def test_tight_cover_bounds_nondegenerate_minimum():
    for n in (2, 3):
        r = min_cover(n, NONDEGENERATE, n - 1)
        assert (n + 1) // 2 <= r.minimum <= len(tight_cover(n))


def test_search_is_thread_count_and_order_independent():
    base = min_slicing(3, 2)
    for workers in (2, 8):
        other = min_slicing(3, 2, workers=workers)
        assert other.optimal == base.optimal and other.minimum == base.minimum
    problem, cands = search.build_problem(3, SLICING, 2)
    rng = random.Random(4)
    shuffled = cands[:]
    rng.shuffle(shuffled)
    shuffled.sort(key=lambda c: c.plane.sort_key())
    assert search.solve(problem, shuffled).optimal == base.optimal


def test_pruning_does_not_change_minimum():
    for n, mode, C in [(3, PLAIN, None), (3, PUNCTURED, None), (3, NONDEGENERATE, 2),
                       (3, SLICING, 1), (2, SKEW, 2)]:
        problem, cands = search.build_problem(n, mode, C)
        a = search.solve(problem, cands, prune=True)
        b = search.solve(problem, cands, prune=False)
        assert a.minimum == b.minimum


def test_oracle_check_agrees():
    problem, cands = search.build_problem(3, SLICING, 1)
    result = search.solve(problem, cands)
    rep = search.oracle_check(problem, cands, result)
    assert rep["ran"] and rep["agrees"]


def test_punctured_result_avoids_origin():
    r = min_cover(4, PUNCTURED)
    assert not r.optimal.covered[:, 0].any()
    assert Family(4, r.optimal).covered[:, 1:].any(axis=0).all()
