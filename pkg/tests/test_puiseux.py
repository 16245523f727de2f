import random
from fractions import Fraction

import pytest
import sympy

from conftest import REGRESSION
from hornrank.combinatorics import HornConfig, index_nu
from hornrank.errors import InvariantError
from hornrank.linalg import IntMatrix
from hornrank.puiseux import (
    all_puiseux,
    base_rectangle,
    check_ambient,
    enumerate_supports,
    exploration_bound,
    orient_pair,
    pair_solutions,
    to_horn_exponent,
    verify_puiseux,
)

F = Fraction


def random_pair(rng, hi):
    while True:
        M = [(rng.randint(1, hi), rng.randint(1, hi)), (-rng.randint(1, hi), -rng.randint(1, hi))]
        if M[0][0] * M[1][1] != M[0][1] * M[1][0]:
            return M


def nullspace_dimension(ps, D):
    """Dimension of polynomials of degree <= D in each variable killed by both binomial operators."""
    x1, x2 = sympy.symbols("x1 x2")
    monos = [(i, j) for i in range(D + 1) for j in range(D + 1)]
    cs = sympy.symbols(f"c0:{len(monos)}")
    f = sum(c * x1**i * x2**j for c, (i, j) in zip(cs, monos))
    eqs = []
    for a, b in ps.moves():
        g = sympy.expand(sympy.diff(f, x1, a) - sympy.diff(f, x2, -b))
        eqs.extend(sympy.Poly(g, x1, x2).coeffs())
    A, _ = sympy.linear_eq_to_matrix(eqs, cs)
    return len(monos) - A.rank()


@pytest.mark.parametrize("seed", range(6))
def test_count_matches_nullspace(seed):
    rng = random.Random(seed)
    M = random_pair(rng, 3)
    ps = orient_pair(IntMatrix(M), (0, 0), 0, 1)
    D = exploration_bound(ps)
    assert nullspace_dimension(ps, D) == ps.nu == index_nu(*M)
    g = enumerate_supports(ps)
    assert not g.infinite and len(g.components) == ps.nu


@pytest.mark.parametrize("seed", range(40))
def test_bound_is_large_enough(seed):
    M = random_pair(random.Random(1000 + seed), 7)
    ps = orient_pair(IntMatrix(M), (0, 0), 0, 1)
    small = enumerate_supports(ps)
    big = enumerate_supports(ps, bound=150)
    assert [c for _, c in small.components] == [c for _, c in big.components]


@pytest.mark.parametrize("seed", range(8))
def test_generic_parameters_verify(seed):
    rng = random.Random(seed)
    M = random_pair(rng, 4)
    cfg = HornConfig(M, (F(rng.randint(-9, 9), 7), F(rng.randint(-9, 9), 5)))
    sols = all_puiseux(cfg)
    assert len(sols) == index_nu(*M)
    for s in sols:
        assert verify_puiseux(s, cfg)
        assert check_ambient(s.ambient, s.pair)


def test_orientation_and_rectangle():
    ps = orient_pair(IntMatrix([(-3, -5), (4, 5)]), (F(1), F(2)), 0, 1)
    assert ps.i == 1 and ps.M[0] == (4, 5)
    assert len(base_rectangle(ps)) == ps.nu == 15
    # mixed orientation flips the second Horn variable
    pm = orient_pair(IntMatrix([(2, -1), (-1, 2)]), (0, 0), 0, 1)
    assert pm.flip2
    with pytest.raises(InvariantError):
        orient_pair(IntMatrix([(1, 1), (2, 2)]), (0, 0), 0, 1)
    with pytest.raises(InvariantError):
        orient_pair(IntMatrix([(1, 1), (1, 2)]), (0, 0), 0, 1)


def test_exponent_map_inverts():
    cfg = HornConfig([(4, 5), (-3, -5)], (F(1, 3), F(2, 7)))
    ps = orient_pair(cfg.B, cfg.c, 0, 1)
    for p in [(0, 0), (4, 0), (0, 3), (2, 5)]:
        a = to_horn_exponent(p, ps)
        assert (4 * a[0] + 5 * a[1] + cfg.c[0], -3 * a[0] - 5 * a[1] + cfg.c[1]) == p


def test_regression_counts():
    for name, want in [("mixed4", 1), ("corner4", 3), ("g3", 1), ("f1", 0), ("tc", 0)]:
        cfg = HornConfig(REGRESSION[name], seed=2)
        sols = all_puiseux(cfg)
        assert len(sols) == want
        assert all(verify_puiseux(s, cfg) for s in sols)


def test_mixed4_solution():
    cfg = HornConfig(REGRESSION["mixed4"], seed=2)
    (s,) = all_puiseux(cfg)
    assert len(s.terms) == 1
    (k, l) = (s.pair.i, s.pair.j)
    assert {k, l} == {1, 2}
    assert len(pair_solutions(cfg, s.pair)) == 1
