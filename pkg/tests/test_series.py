import random
from fractions import Fraction

import mpmath
import pytest

from conftest import REGRESSION
from hornrank.combinatorics import HornConfig
from hornrank.errors import NotInColumnSpace, Violation
from hornrank.linalg import IntMatrix, lattice_quotient
from hornrank.series import (
    build_lattice_series,
    build_phi,
    coset_split,
    exponent_classes_distinct,
    full_basis,
    gamma_coefficient,
    nv_member,
    puiseux_disjoint_from_series,
    series_roots,
    to_horn_series,
    verify_annihilation,
    verify_horn_series,
    window_points,
)

F = Fraction


def test_window_points():
    pts = list(window_points(2, 3))
    assert len(pts) == 2 * 3 * 3 + 2 * 3 + 1  # centred l1 ball of radius 3
    assert all(abs(a) + abs(b) <= 3 for a, b in pts)
    assert len(set(pts)) == len(pts)


@pytest.mark.parametrize("seed", range(10))
def test_gamma_coefficient_against_gamma_ratio(seed):
    rng = random.Random(seed)
    v = [F(rng.randint(-50, 50), rng.choice([3, 7, 11])) for _ in range(4)]
    v = [x + F(1, 101) if x.denominator == 1 else x for x in v]
    u = [rng.randint(-5, 5) for _ in range(4)]
    mpmath.mp.dps = 40
    want = mpmath.mpf(1)
    for vi, ui in zip(v, u):
        x = mpmath.mpf(vi.numerator) / vi.denominator
        want *= mpmath.gamma(x + 1) / mpmath.gamma(x + ui + 1)
    got = gamma_coefficient(v, u)
    assert mpmath.almosteq(mpmath.mpf(got.numerator) / got.denominator, want, rel_eps=mpmath.mpf(10) ** -30)


def test_nv_membership():
    v = (F(-2), F(3), F(1, 2))
    assert nv_member(v, (1, -3, 5))  # -1 stays negative, 0 stays nonnegative
    assert not nv_member(v, (2, 0, 0))  # -2 -> 0 changes status
    assert not nv_member(v, (0, -4, 0))  # 3 -> -1


@pytest.mark.parametrize("name", sorted(REGRESSION))
def test_full_basis_checks(name):
    cfg = HornConfig(REGRESSION[name], seed=7)
    fb = full_basis(cfg, 8)
    assert exponent_classes_distinct(fb.roots)
    assert puiseux_disjoint_from_series(fb)
    for phi, h in zip(fb.series, fb.horn):
        rep = verify_annihilation(phi, A=cfg.A, c=cfg.c, strict=True)
        assert rep.checked and rep.excluded
        assert verify_horn_series(h, cfg, strict=True).ok
        # the two formulations agree term by term
        assert set(h.coeffs) == set(phi.coeffs)


def test_corrupted_series_is_caught():
    cfg = HornConfig(REGRESSION["mixed4"], seed=7)
    fb = full_basis(cfg, 8)
    phi, h = fb.series[0], fb.horn[0]
    k = sorted(k for k in phi.coeffs if sum(map(abs, k)) == 2)[0]
    phi.coeffs[k] *= 2
    h.coeffs[k] *= 2
    assert verify_annihilation(phi).violations
    assert verify_horn_series(h, cfg).violations
    with pytest.raises(Violation):
        verify_annihilation(phi, strict=True)


def test_shrinking_window_no_new_violations():
    cfg = HornConfig(REGRESSION["corner4"], seed=1)
    roots, _, _ = series_roots(cfg, random.Random(1))
    for r in roots:
        for N in (6, 9, 12):
            assert verify_annihilation(build_phi(r.v, cfg.B, N)).ok


def test_not_in_column_space():
    cfg = HornConfig(REGRESSION["mixed4"], seed=7)
    bad = build_phi((F(1, 3), F(1, 5), F(1, 7), F(1, 11)), cfg.B, 2)
    with pytest.raises(NotInColumnSpace):
        to_horn_series(bad, cfg.B, cfg.c)


@pytest.mark.parametrize("name", ["g3", "tc"])
def test_coset_split_parts_are_series(name):
    cfg = HornConfig(REGRESSION[name], seed=2)
    q = lattice_quotient(cfg.B, cfg.A)
    s = build_lattice_series(cfg.c, q, 9)
    split = coset_split(s, q)
    assert sum(len(p.coeffs) for p in split.parts) == len(s.coeffs)
    assert all(p.coeffs for p in split.parts)
    # the unsplit series is killed by the operators of the saturated lattice
    assert verify_annihilation(s).ok


def test_coset_split_trivial_when_g_is_one():
    cfg = HornConfig(REGRESSION["mixed4"], seed=2)
    q = lattice_quotient(cfg.B, cfg.A)
    split = coset_split(build_lattice_series(cfg.c, q, 5), q)
    assert len(split.parts) == 1
