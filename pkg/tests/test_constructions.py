from fractions import Fraction as F

import numpy as np
import pytest

from hypercover.constructions import (
    axis_slicing_family,
    sum_layer_cover,
    tight_cover,
    trivial_cover,
)
from hypercover.errors import InputError
from hypercover.family import (
    find_violation,
    is_cover,
    is_nondegenerate_cover,
    is_skew_cover,
    is_slicing_family,
    max_abs_coefficient,
)
from hypercover.geometry import hyperplane


def test_trivial_cover():
    assert trivial_cover(1).planes == (hyperplane((1,), 0), hyperplane((1,), 1))
    assert trivial_cover(3).planes == (hyperplane((1, 0, 0), 0), hyperplane((1, 0, 0), 1))
    assert all(len(trivial_cover(n)) == 2 for n in range(1, 8))


def test_tight_cover_planes():
    assert tight_cover(3).planes == (
        hyperplane((1, 1, -2), 0), hyperplane((1, 1, 1), 1), hyperplane((1, 1, 1), 2))
    assert tight_cover(2).planes == (hyperplane((1, -1), 0), hyperplane((1, 1), 1))
    with pytest.raises(InputError):
        tight_cover(1)


@pytest.mark.parametrize("n", range(2, 17))
def test_tight_cover_properties(n):
    f = tight_cover(n)
    assert len(f) == n
    assert is_cover(f) and is_skew_cover(f) and is_nondegenerate_cover(f)


@pytest.mark.parametrize("n", range(2, 17))
def test_trivial_cover_is_degenerate(n):
    f = trivial_cover(n)
    assert is_cover(f)
    assert not is_nondegenerate_cover(f)


def test_sum_layer_cover():
    assert sum_layer_cover(2).planes == tuple(hyperplane((1, 1), t) for t in range(3))
    for n in range(1, 9):
        f = sum_layer_cover(n)
        assert len(f) == n + 1 and is_skew_cover(f)


def test_axis_slicing_family():
    assert axis_slicing_family(2).planes == (
        hyperplane((1, 0), F(1, 2)), hyperplane((0, 1), F(1, 2)))
    for n in range(1, 9):
        f = axis_slicing_family(n)
        assert is_slicing_family(f)
        assert max_abs_coefficient(f) == 1
        # every edge is sliced exactly once
        assert (f.sliced.sum(axis=0) == 1).all()


def test_trivial_violation_rechecks():
    v = find_violation(trivial_cover(5))
    assert v.vertex.bits == 0 and v.direction == 2
    assert np.all(trivial_cover(5).covered.any(axis=0))
