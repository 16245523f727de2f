import random
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from conftest import REGRESSION
from hornrank.errors import GenericityFailure, InvariantError
from hornrank.groebner import generic_initial_ideal, lattice_basis_ideal, saturate_lattice_ideal
from hornrank.linalg import IntMatrix, gale_dual
from hornrank.standard_pairs import (
    MonomialIdeal,
    StandardPair,
    admissible_T,
    dependent_multiplicity,
    embedded_pair_count,
    exponent_roots,
    pair_census,
    standard_pairs,
    top_pairs,
)


def covered(pairs, mono):
    return any(
        all(mono[i] == p.eta[i] for i in range(len(mono)) if i not in p.sigma)
        for p in pairs
    )


def random_ideal(rng, n, k, deg):
    gens = [tuple(rng.randint(0, deg) for _ in range(n)) for _ in range(k)]
    gens = [g for g in gens if any(g)]
    return MonomialIdeal.from_monomials(gens or [(1,) + (0,) * (n - 1)], n)


def degree_by_hilbert(M, codim):
    """Degree from the Hilbert function.

    For a quotient of dimension d the number of standard monomials of total
    degree D is eventually deg * D^(d-1)/(d-1)! + ..., so the (d-1)-th finite
    difference is the degree.
    """
    n = M.nvars
    d = n - codim
    top = sum(M.max_degrees()) + 2

    def h(D):
        return sum(1 for c in combinations_with_replacement(range(n), D)
                   if not M.contains(tuple(c.count(i) for i in range(n))))
    vals = [h(top + k) for k in range(d)]
    for _ in range(d - 1):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return vals[0]


@pytest.mark.parametrize("seed", range(25))
def test_pairs_cover_standard_monomials(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    M = random_ideal(rng, n, rng.randint(1, 4), 3)
    pairs = standard_pairs(M)
    box = [d + 2 for d in M.max_degrees()]
    for mono in product(*[range(b) for b in box]):
        assert covered(pairs, mono) == (not M.contains(mono)), (M, mono)
    for p in pairs:
        assert all(p.eta[i] == 0 for i in p.sigma)


def test_artinian_count():
    M = MonomialIdeal.from_monomials([(3, 0), (1, 2), (0, 4)], 2)
    pairs = standard_pairs(M)
    assert all(p.sigma == () for p in pairs)
    std = [m for m in product(range(4), range(5)) if not M.contains(m)]
    assert len(pairs) == len(std)


@pytest.mark.parametrize("name", sorted(REGRESSION))
def test_top_pairs_give_degree(name):
    B = IntMatrix(REGRESSION[name])
    MI, _ = generic_initial_ideal(lattice_basis_ideal(B), random.Random(4))
    MB, _ = generic_initial_ideal(saturate_lattice_ideal(B), random.Random(4))
    assert len(top_pairs(MI)) == degree_by_hilbert(MI, 2)
    assert len(top_pairs(MB)) == degree_by_hilbert(MB, 2)


def test_census_and_multiplicity_mixed4():
    B = IntMatrix(REGRESSION["mixed4"])
    MI, _ = generic_initial_ideal(lattice_basis_ideal(B), random.Random(1))
    tops = top_pairs(MI)
    census = pair_census(tops, 4)
    # d1 d2 = 4, no dependent opposite pair, so every top pair is admissible
    assert sum(census.values()) == 4
    assert len(admissible_T(MI, B)) == 4
    for k, l in census:
        assert census[(k, l)] == dependent_multiplicity(MI, k, l)
    assert embedded_pair_count(MI) >= 0


def test_unit_ideal_rejected():
    with pytest.raises(InvariantError):
        standard_pairs(MonomialIdeal.from_monomials([(0, 0)], 2))


def test_exponent_roots_satisfy_euler():
    B = IntMatrix(REGRESSION["corner4"])
    A = gale_dual(B)
    c = (Fraction(1, 7), Fraction(2, 9), Fraction(-3, 11), Fraction(5, 13))
    MB, _ = generic_initial_ideal(saturate_lattice_ideal(B), random.Random(2))
    roots = exponent_roots(top_pairs(MB), B, c, A)
    assert len(roots) == 3
    for r in roots:
        for k in r.pair.free(4):
            assert r.v[k] == r.pair.eta[k]
        for i in range(4):
            assert r.v[i] - c[i] == B[i, 0] * r.alpha[0] + B[i, 1] * r.alpha[1]


def test_exponent_roots_reject_dependent_rows():
    B = IntMatrix([(1, 1), (-1, -1), (1, 0), (-1, 0)])
    with pytest.raises(GenericityFailure):
        exponent_roots([StandardPair((2, 3), (0, 0, 0, 0))], B, (0, 0, 0, 0))
