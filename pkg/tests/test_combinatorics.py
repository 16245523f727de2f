import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import EXPECTED, REGRESSION, random_B
from hornrank.combinatorics import (
    HornConfig,
    Quadrant,
    alpha_vector,
    artinian_criterion,
    dependent_opposite_pairs,
    generic_rank,
    index_nu,
    index_table,
    puiseux_rank,
    quadrant_class,
    to_falling,
)
from hornrank.errors import InvariantError
from hornrank.groebner import generic_initial_ideal, lattice_basis_ideal
from hornrank.linalg import IntMatrix
from hornrank.standard_pairs import admissible_T

vec = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


@given(vec, vec)
def test_nu_symmetric_and_sign_invariant(a, b):
    assert index_nu(a, b) == index_nu(b, a)
    na = (-a[0], -a[1])
    nb = (-b[0], -b[1])
    assert index_nu(a, b) == index_nu(na, nb)
    # swapping coordinates maps opposite quadrants to opposite quadrants
    assert index_nu(a, b) == index_nu(a[::-1], b[::-1])


def test_nu_values():
    assert index_nu((4, 5), (-3, -5)) == 15
    assert index_nu((1, 2), (-2, -3)) == 3
    assert index_nu((1, 0), (-1, 0)) == 0  # on an axis
    assert index_nu((1, 1), (1, 2)) == 0  # same quadrant
    assert quadrant_class((2, -1)) == quadrant_class((5, -3))
    assert quadrant_class((0, 3)) != quadrant_class((1, 3))
    assert isinstance(quadrant_class((1, 1)), Quadrant)


@pytest.mark.parametrize("name", sorted(REGRESSION))
def test_regression_values(name):
    rank, g, vol, npu = EXPECTED[name]
    rep = generic_rank(HornConfig(REGRESSION[name]))
    assert (rep.rank, rep.g, rep.vol_A) == (rank, g, vol)
    assert puiseux_rank(IntMatrix(REGRESSION[name])) == npu
    assert rep.identity_holds


def test_f1_dependent_pair_and_alpha():
    B = IntMatrix(REGRESSION["f1"])
    assert dependent_opposite_pairs(B) == [(0, 3)]
    assert not artinian_criterion(B)
    assert artinian_criterion(IntMatrix(REGRESSION["mixed4"]))
    assert alpha_vector(IntMatrix(REGRESSION["mixed4"])) == (0, 0, 1, 0)
    assert alpha_vector(IntMatrix(REGRESSION["corner4"])) == (3, 0, 0, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 4))
def test_rank_equals_admissible_pairs(seed, n):
    """Closed form against the Groebner route on random small matrices."""
    B = random_B(random.Random(seed), n, -3, 3)
    rep = generic_rank(B)
    MI, _ = generic_initial_ideal(lattice_basis_ideal(B), random.Random(seed))
    assert len(admissible_T(MI, B)) == rep.rank
    assert rep.rank >= puiseux_rank(B)


@settings(max_examples=50)
@given(st.integers(0, 10**6), st.integers(3, 7))
def test_rising_same_rank(seed, n):
    B = random_B(random.Random(seed), n)
    a = generic_rank(HornConfig(B, convention="falling"))
    b = generic_rank(HornConfig(B, convention="rising"))
    assert a == b


def test_to_falling():
    B = IntMatrix([(1, -1), (-1, 1), (0, 0)])
    nB, nc = to_falling(B, (1, 2, 3), "rising")
    assert nB.row(0) == (-1, 1) and nc == (-1, -2, -3)
    with pytest.raises(InvariantError):
        to_falling(B, None, "sideways")


def test_config_invariants():
    with pytest.raises(InvariantError, match="column sums"):
        HornConfig([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(InvariantError, match="parameter length"):
        HornConfig(REGRESSION["mixed4"], (1, 2))
    with pytest.raises(InvariantError, match="rank"):
        HornConfig([(1, 2), (-1, -2), (0, 0)])
    # square B skips the column-sum check
    HornConfig([(4, 5), (-3, -5)], (0, 0))


def test_generic_sampling_is_seeded():
    a = HornConfig(REGRESSION["tc"], seed=3)
    b = HornConfig(REGRESSION["tc"], seed=3)
    c = HornConfig(REGRESSION["tc"], seed=4)
    assert a.c == b.c != c.c
    assert a.generic
    r = a.resample(1)
    assert r.c != a.c and r.B == a.B
    assert all(isinstance(x, Fraction) for x in r.c)


def test_index_table_shape():
    table = index_table(IntMatrix(REGRESSION["f1"]))
    assert len(table) == 15
    assert sum(p.opposite for p in table) == 1
