import random
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from corpus import nondegenerate_corpus, random_skew_cover
from hypercover import search
from hypercover.constructions import axis_slicing_family, tight_cover, trivial_cover
from hypercover.errors import InputError, InternalConsistencyError, NondegeneracyError
from hypercover.family import Family, incidence
from hypercover.geometry import Vertex, VertexSet, contains, hyperplane
from hypercover.reduction import reduce_slicing_to_cover
from hypercover import witness
from hypercover.witness import (
    flip_plane,
    flip_to_origin,
    format_trace,
    greedy_support_partition,
    minimizing_vertex,
    restrict_to_subspace,
    run_pipeline,
    sign_majority_refine,
)


def test_flip_examples():
    f = Family(2, [((1, 1), 2)])
    assert flip_to_origin(f, Vertex(2, 0b11)).planes == (hyperplane((1, 1), 0),)
    g = tight_cover(4)
    assert flip_to_origin(g, Vertex(4, 0)) == g
    w = Vertex(4, 0b1010)
    assert flip_to_origin(flip_to_origin(g, w), w) == g


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6).filter(any),
       st.integers(-6, 6), st.data())
def test_flip_preserves_containment(a, b, data):
    n = len(a)
    h = hyperplane(a, b)
    w = data.draw(st.integers(0, (1 << n) - 1))
    fh = flip_plane(h, w)
    for v in range(1 << n):
        assert contains(h, Vertex(n, v)) == contains(fh, Vertex(n, v ^ w))
    assert flip_plane(fh, w) == h


def test_minimizing_vertex_examples():
    assert minimizing_vertex(tight_cover(3)) == Vertex(3, 0)
    assert minimizing_vertex(trivial_cover(2)) == Vertex(2, 0)
    f = Family(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 1)])  # (1,1) lies on nothing
    assert minimizing_vertex(f) == Vertex(2, 0b11)
    counts = incidence(tight_cover(3)).counts
    assert counts.min() == counts[0]


def test_greedy_partition_examples():
    assert greedy_support_partition([(1, 0, 1), (1, 1, 0)]) == [(1, 3), (2,)]
    assert greedy_support_partition([(1, -2, 3, 1)]) == [(1, 2, 3, 4)]
    assert greedy_support_partition([(1, 1, 0), (1, 1, 0), (0, 0, 1)]) == [(1, 2), (), (3,)]
    with pytest.raises(InputError):
        greedy_support_partition([(1, 0, 0), (0, 1, 0)])


def test_sign_refine_examples():
    assert sign_majority_refine((1, 2, 3), (1, 1, -2)) == ((1, 2), 1)
    assert sign_majority_refine((1,), (-5, 1, 1)) == ((1,), -1)
    assert sign_majority_refine((), (1, 2)) == ((), 1)
    assert sign_majority_refine((1, 2), (1, -1)) == ((1,), 1)  # tie -> positive


def test_restrict_examples():
    r = restrict_to_subspace(hyperplane((1, 1, 1), 1), (1, 2))
    assert r.plane == hyperplane((1, 1), 1)
    r = restrict_to_subspace(hyperplane((0, 0, 1), 1), (1, 2))
    assert r.empty
    r = restrict_to_subspace(hyperplane((1, 1, 1), 2), (2, 1))
    assert r.plane == hyperplane((1, 1), 2) and r.coords == (1, 2)
    with pytest.raises(InputError):
        restrict_to_subspace(hyperplane((1, -1, 0), 0), (1, 2))


def test_pipeline_on_tight_cover_3():
    rep = run_pipeline(tight_cover(3))
    assert rep.w == Vertex(3, 0)
    assert rep.flip_mask == 0
    assert rep.H0_indices == (0,)
    assert rep.flipped[0] == hyperplane((1, 1, -2), 0)
    assert rep.partition == ((1, 2, 3),)
    assert rep.refined[0].kept == (1, 2) and rep.refined[0].sign == 1
    assert rep.S == (1, 2)
    assert rep.QS == VertexSet.of(3, [0b000, 0b001, 0b010, 0b011])
    assert rep.claim_qs_ok and rep.claim_qs_mechanism_ok and rep.claim_subcube_ok
    assert rep.restricted_cover_ok
    assert rep.rest_size == 2 >= len(rep.S) == 2
    assert rep.lower_bound == 2 and rep.certified
    assert "certified" in format_trace(rep)


def test_pipeline_on_reduced_axis_family():
    rep = run_pipeline(reduce_slicing_to_cover(axis_slicing_family(3), 1))
    assert len(rep.S) >= 2 and rep.certified


def test_pipeline_precondition():
    with pytest.raises(NondegeneracyError) as info:
        run_pipeline(trivial_cover(2))
    v = info.value.violation
    assert (v.vertex, v.direction) == (Vertex(2, 0), 2)


def test_pipeline_flips_when_needed():
    # tight cover moved so that the vertex of minimum incidence is not the origin
    f = flip_to_origin(tight_cover(4), Vertex(4, 0b0110))
    rep = run_pipeline(f)
    assert rep.certified
    assert rep.flip_mask == rep.w.bits


@lru_cache(maxsize=None)
def punctured_minimum(s):
    return search.min_cover(s, search.PUNCTURED).minimum


def _check_report(rep, family):
    n = family.dim
    blocks = [i for t in rep.partition for i in t]
    assert sorted(blocks) == list(range(1, n + 1))
    for r, j in zip(rep.refined, rep.H0_indices):
        assert set(r.kept) <= set(r.block)
        assert 2 * len(r.kept) >= len(r.block)
        assert len({(rep.flipped[j].normal[i - 1] > 0) for i in r.kept}) <= 1
    assert len(rep.S) >= (n + 1) // 2
    assert rep.claim_qs_ok and rep.claim_qs_mechanism_ok and rep.claim_subcube_ok
    assert rep.restricted_cover_ok
    assert len(family) >= rep.rest_size >= len(rep.S) >= (n + 1) // 2
    assert rep.certified


def test_pipeline_property_corpus():
    for kind, family in nondegenerate_corpus(seed=77, size=60, max_n=9):
        rep = run_pipeline(family)
        _check_report(rep, family)


def test_alon_furedi_step_cross_checked_by_search():
    checked = 0
    for kind, family in nondegenerate_corpus(seed=5, size=60, max_n=8):
        rep = run_pipeline(family)
        s = len(rep.S)
        if s <= 4:
            live = [r for r in rep.restricted if not r.empty]
            assert len(live) >= punctured_minimum(s) == s
            checked += 1
    assert checked > 10


def test_order_changes_partition_but_not_validity():
    rng = random.Random(1)
    f = random_skew_cover(6, rng)
    for _ in range(5):
        planes = list(f)
        rng.shuffle(planes)
        _check_report(run_pipeline(Family(6, planes)), f)


def test_claim_checks_catch_a_broken_refinement(monkeypatch):
    # keeping a whole mixed-sign block breaks the subcube claim on tight_cover(3)
    monkeypatch.setattr(witness, "sign_majority_refine", lambda block, a: (tuple(block), 1))
    with pytest.raises(InternalConsistencyError) as info:
        run_pipeline(tight_cover(3))
    assert not info.value.report.certified
    rep = run_pipeline(tight_cover(3), strict=False)
    assert rep.failures and not rep.claim_qs_ok


def test_report_serialises():
    import json

    d = run_pipeline(tight_cover(5)).to_dict()
    text = json.dumps(d)
    assert '"certified": true' in text
    assert d["QS"]["size"] == 1 << d["S_size"]
