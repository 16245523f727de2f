import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import REGRESSION, rand_q
from hornrank.combinatorics import HornConfig
from hornrank.errors import UnsupportedShape
from hornrank.polynomial import Polynomial
from hornrank.shift import (
    E,
    ShiftElement,
    commutator,
    compatibility_check,
    has_mixed_rows,
    horn_operators,
    horn_polys,
    rational_compatibility_check,
    resultant_certificate,
    special_form,
    t_poly,
    telescoped_operators,
    theta,
)

F = Fraction

small = st.integers(-3, 3)
theta_poly = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), small, max_size=3)
elements = st.dictionaries(st.tuples(small, small), theta_poly, max_size=3).map(
    lambda d: ShiftElement({a: Polynomial(2, t) for a, t in d.items()})
)
functions = st.dictionaries(st.tuples(small, small), st.integers(-5, 5), min_size=1, max_size=4)


def test_commutation_rule():
    y1 = ShiftElement.y((1, 0))
    t1 = ShiftElement.of(theta(0))
    assert t1 * y1 == y1 * ShiftElement.of(theta(0) + 1)
    assert commutator(t1, y1) == y1
    assert commutator(ShiftElement.of(theta(1)), y1).is_zero()


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements)
def test_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@settings(max_examples=60, deadline=None)
@given(elements, elements, functions)
def test_product_matches_action(u, v, f):
    """Second route: compose the actions on monomials y^s instead of multiplying."""
    f = {k: F(c) for k, c in f.items()}
    prod = (u * v).apply(f)
    seq = u.apply(v.apply(f))
    clean = lambda d: {k: c for k, c in d.items() if c}
    assert clean(prod) == clean(seq)


def test_shift_of_polynomial():
    p = theta(0) * theta(1)
    assert E(p, (1, -2)) == (theta(0) + 1) * (theta(1) - 2)


@pytest.mark.parametrize("name", sorted(REGRESSION))
def test_rational_compatibility_everywhere(name):
    cfg = HornConfig(REGRESSION[name], seed=3)
    o = horn_polys(cfg.B, cfg.c)
    assert rational_compatibility_check(o.P[0], o.P[1], o.Q[0], o.Q[1])
    separated = compatibility_check(o.P[0], o.P[1], o.Q[0], o.Q[1])
    assert separated == (not has_mixed_rows(cfg.B))


def test_horn_operators_shape():
    cfg = HornConfig(REGRESSION["mixed4"], seed=1)
    H1, H2 = horn_operators(cfg)
    assert set(H1.terms) == {(0, 0), (1, 0)}
    assert set(H2.terms) == {(0, 0), (0, 1)}
    o = horn_polys(cfg.B, cfg.c)
    assert o.Q[0].total_degree() == 2 and o.P[0].total_degree() == 2


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (1, 3), (2, 2), (3, 2)])
def test_telescoping(a, b):
    cfg = HornConfig(REGRESSION["corner4"], seed=5)
    assert telescoped_operators(horn_polys(cfg.B, cfg.c), a, b).holds
    with pytest.raises(ValueError):
        telescoped_operators(horn_polys(cfg.B, cfg.c), 0, 1)


def upoly(coeffs):
    return Polynomial(1, {(k,): F(v) for k, v in enumerate(coeffs) if v})


def test_resultant_small_cases():
    assert resultant_certificate(upoly([-1, 0, 1]), upoly([-2, 1])) == 3
    assert resultant_certificate(upoly([-1, 0, 1]), upoly([-1, 1])) == 0
    assert resultant_certificate(upoly([5]), upoly([1, 2, 3])) == 25


@settings(max_examples=40)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.lists(st.integers(-4, 4), min_size=1, max_size=3))
def test_resultant_product_formula(rf, rg):
    """Res(prod (t - r), prod (t - s)) = prod (r - s)."""
    f = upoly([1])
    g = upoly([1])
    for r in rf:
        f = f * upoly([-r, 1])
    for s in rg:
        g = g * upoly([-s, 1])
    want = 1
    for r in rf:
        for s in rg:
            want *= r - s
    assert resultant_certificate(f, g) == want


def test_special_form_f1():
    a, b, bp, c = F(3, 7), F(5, 11), F(2, 13), F(17, 19)
    cfg = HornConfig(REGRESSION["f1"], (a, b, bp, 1 - c, 0, 0), convention="rising")
    sf = special_form(cfg.B, cfg.c)
    # rising F1 is the falling system of -B, so the t-parts pick up signs
    roots = {-sf.f.coefficient((0,)) / sf.f.coefficient((1,)), -sf.g.coefficient((0,)) / sf.g.coefficient((1,))}
    assert roots == {1 - c, -a}
    assert resultant_certificate(sf.f, sf.g) != 0
    # c = 1 + a makes the two t-roots collide
    same = HornConfig(REGRESSION["f1"], (a, b, bp, -a, 0, 0), convention="rising")
    sf2 = special_form(same.B, same.c)
    assert resultant_certificate(sf2.f, sf2.g) == 0
    assert t_poly(upoly([0, 1])) == theta(0) + theta(1)


def test_special_form_unsupported():
    cfg = HornConfig(REGRESSION["mixed4"], seed=1)
    with pytest.raises(UnsupportedShape):
        special_form(cfg.B, cfg.c)
