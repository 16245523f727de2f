"""Two-variable theta/shift algebra.

Elements are finite sums ``sum_a y^a p_a(theta)`` with ``a`` in Z^2, kept in
the normal form with ``y`` on the left.  The only relation is
``p(theta) y^a = y^a p(theta + a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import UnsupportedShape
from .linalg import _det_fraction
from .polynomial import Polynomial, _raw

THETA_VARS = 2


def theta_poly(terms=None) -> Polynomial:
    return Polynomial(THETA_VARS, terms or {})


def theta(i: int) -> Polynomial:
    return Polynomial.variable(THETA_VARS, i)


def linear_form(b: Sequence[int], const=0) -> Polynomial:
    """``b . theta + const``."""
    return Polynomial.linear(b, const)


def E(p: Polynomial, shift: Sequence) -> Polynomial:
    """Shift operator ``(E^shift p)(theta) = p(theta + shift)``."""
    return p.shift(shift)


class ShiftElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Polynomial] | None = None):
        clean = {}
        for a, p in (terms or {}).items():
            if not isinstance(p, Polynomial):
                p = Polynomial.constant(THETA_VARS, p)
            if not p.is_zero():
                a = tuple(a)
                clean[a] = clean[a] + p if a in clean else p
                if clean[a].is_zero():
                    del clean[a]
        self.terms = clean

    @classmethod
    def of(cls, p, a=(0, 0)) -> "ShiftElement":
        """``y^a p(theta)``."""
        return cls({tuple(a): p})

    @classmethod
    def one(cls) -> "ShiftElement":
        return cls.of(Polynomial.constant(THETA_VARS, 1))

    @classmethod
    def y(cls, a) -> "ShiftElement":
        return cls.of(Polynomial.constant(THETA_VARS, 1), a)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for a, p in other.terms.items():
            q = out[a] + p if a in out else p
            if q.is_zero():
                out.pop(a, None)
            else:
                out[a] = q
        return _raw_elem(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw_elem({a: -p for a, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ShiftElement):
            if isinstance(other, Polynomial):
                other = ShiftElement.of(other)
            else:
                c = Fraction(other)
                return _raw_elem({a: p * c for a, p in self.terms.items() if c})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(ShiftElement.of(other), self)
        return self * other

    def __eq__(self, other):
        if not isinstance(other, ShiftElement):
            other = _coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((a, p) for a, p in self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a) -> Polynomial:
        return self.terms.get(tuple(a), theta_poly())

    def apply_to_monomial(self, s: Sequence) -> dict:
        """Action on ``y^s``: ``y^a p(theta) y^s = p(s) y^{s+a}``."""
        out = {}
        for a, p in self.terms.items():
            v = p.evaluate(s)
            if v:
                key = (Fraction(s[0]) + a[0], Fraction(s[1]) + a[1])
                out[key] = out.get(key, 0) + v
        return out

    def apply(self, f: Mapping) -> dict:
        """Apply to a Puiseux polynomial ``{exponent: coefficient}``."""
        out: dict = {}
        for s, coef in f.items():
            for key, v in self.apply_to_monomial(s).items():
                out[key] = out.get(key, 0) + coef * v
        return {k: v for k, v in out.items() if v}

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms):
            mono = "*".join(
                (f"y{i + 1}" if k == 1 else f"y{i + 1}^{k}") for i, k in enumerate(a) if k
            )
            body = self.terms[a].format(["t1", "t2"])
            parts.append(f"{mono}*({body})" if mono else f"({body})")
        return " + ".join(parts)

    def __repr__(self):
        return f"ShiftElement({self.format()})"


def _raw_elem(terms) -> ShiftElement:
    e = ShiftElement.__new__(ShiftElement)
    e.terms = terms
    return e


def _coerce(x) -> ShiftElement:
    if isinstance(x, ShiftElement):
        return x
    if isinstance(x, Polynomial):
        return ShiftElement.of(x)
    return ShiftElement.of(Polynomial.constant(THETA_VARS, x))


def multiply(u: ShiftElement, v: ShiftElement) -> ShiftElement:
    """``(y^a p)(y^b q) = y^{a+b} p(theta + b) q(theta)``."""
    out: dict = {}
    for a, p in u.terms.items():
        for b, q in v.terms.items():
            key = (a[0] + b[0], a[1] + b[1])
            prod = p.shift(b) * q
            s = out[key] + prod if key in out else prod
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return _raw_elem(out)


def commutator(u: ShiftElement, v: ShiftElement) -> ShiftElement:
    return u * v - v * u


# -- Horn operators ---------------------------------------------------------

@dataclass(frozen=True)
class HornOperators:
    P: tuple  # (P1, P2) theta polynomials
    Q: tuple

    @property
    def H(self) -> tuple:
        return tuple(
            ShiftElement.of(self.Q[i]) - ShiftElement({_unit(i): self.P[i]}) for i in range(2)
        )


def _unit(i):
    return (1, 0) if i == 0 else (0, 1)


def horn_factor_lists(B, c) -> tuple:
    """Linear factors of ``Q_i`` and ``P_i`` (falling convention), per column."""
    Pf = ([], [])
    Qf = ([], [])
    for j in range(B.rows):
        b = B.row(j)
        for i in range(2):
            k = b[i]
            target = Qf[i] if k > 0 else Pf[i]
            for l in range(abs(k)):
                target.append((j, linear_form(b, Fraction(c[j]) - l)))
    return Pf, Qf


def horn_operators(cfg) -> tuple:
    """``H_i = Q_i(theta) - y_i P_i(theta)`` for a HornConfig."""
    ops = horn_polys(cfg.B, cfg.c)
    return ops.H


def horn_polys(B, c) -> HornOperators:
    Pf, Qf = horn_factor_lists(B, c)
    P, Q = [], []
    for i in range(2):
        p = Polynomial.constant(THETA_VARS, 1)
        for _, f in Pf[i]:
            p = p * f
        q = Polynomial.constant(THETA_VARS, 1)
        for _, f in Qf[i]:
            q = q * f
        P.append(p)
        Q.append(q)
    return HornOperators(tuple(P), tuple(Q))


# -- compatibility and the Psi identity --------------------------------------

def compatibility_check(P1, P2, Q1, Q2) -> bool:
    y1P1 = ShiftElement({(1, 0): P1})
    y2P2 = ShiftElement({(0, 1): P2})
    if not commutator(y1P1, y2P2).is_zero():
        return False
    lhs = E(Q2, (0, 1)) * E(Q1, (1, 1))
    rhs = E(Q1, (1, 0)) * E(Q2, (1, 1))
    return lhs == rhs


def rational_compatibility_check(P1, P2, Q1, Q2) -> bool:
    """Cross-multiplied compatibility of the two recurrences.

    Going ``s -> s + e1 -> s + e1 + e2`` or ``s -> s + e2 -> s + e1 + e2``
    must give the same ratio.  Holds for every Horn system, unlike the
    separated form in ``compatibility_check`` which needs rows without
    mixed signs.
    """
    lhs = E(P1, (0, 1)) * P2 * E(Q2, (1, 1)) * E(Q1, (1, 0))
    rhs = E(P2, (1, 0)) * P1 * E(Q1, (1, 1)) * E(Q2, (0, 1))
    return lhs == rhs


def has_mixed_rows(B) -> bool:
    return any(B[j, 0] * B[j, 1] < 0 for j in range(B.rows))


def psi_operator(P1, P2, Q1, Q2) -> ShiftElement:
    """``Psi = y1 Q2 P1 - y2 Q1 P2``."""
    return ShiftElement({(1, 0): Q2 * P1}) - ShiftElement({(0, 1): Q1 * P2})


def determinant_identity_lhs(P1, P2, Q1, Q2, alpha, beta, gamma, delta) -> ShiftElement:
    al, be, ga, de = (Fraction(x) for x in (alpha, beta, gamma, delta))
    y1P1 = ShiftElement({(1, 0): P1})
    y2P2 = ShiftElement({(0, 1): P2})
    first = (ShiftElement.of(E(Q1, (0, -1))) * al - y1P1 * be) * (
        ShiftElement.of(Q2) * ga - y2P2 * de
    )
    second = (ShiftElement.of(E(Q2, (-1, 0))) * al - y2P2 * be) * (
        ShiftElement.of(Q1) * ga - y1P1 * de
    )
    return first - second


def determinant_identity_check(P1, P2, Q1, Q2, alpha, beta, gamma, delta) -> bool:
    lhs = determinant_identity_lhs(P1, P2, Q1, Q2, alpha, beta, gamma, delta)
    det = Fraction(alpha) * Fraction(delta) - Fraction(beta) * Fraction(gamma)
    return (lhs - psi_operator(P1, P2, Q1, Q2) * det).is_zero()


# -- telescoping (xi-variable) identities -------------------------------------

def hat(p: Polynomial, a: int, b: int) -> Polynomial:
    """``p_hat(u, v) = p(u/a, v/b)``."""
    return p.scale_variables((Fraction(1, a), Fraction(1, b)))


def lam(p: Polynomial, i: int, a: int, k: int) -> Polynomial:
    """``prod_{j=1}^{k} E_i^{-j a} p``."""
    out = Polynomial.constant(THETA_VARS, 1)
    for j in range(1, k + 1):
        d = [0, 0]
        d[i] = -j * a
        out = out * E(p, d)
    return out


def mu(p: Polynomial, i: int, a: int, k: int) -> Polynomial:
    """``prod_{j=0}^{k-1} E_i^{j a} p``."""
    out = Polynomial.constant(THETA_VARS, 1)
    for j in range(k):
        d = [0, 0]
        d[i] = j * a
        out = out * E(p, d)
    return out


@dataclass(frozen=True)
class TelescopedPair:
    left: tuple  # multipliers
    operators: tuple  # transformed Horn operators in xi
    products: tuple  # multiplier * operator, expanded
    targets: tuple  # displayed right-hand sides
    holds: bool


def telescoped_operators(ops: HornOperators, a: int, b: int) -> TelescopedPair:
    """Multiply the xi-transformed operators by the telescoping sums.

    In ``xi_1 = y_1^(1/a)``, ``xi_2 = y_2^(1/b)`` the operators become
    ``Qh_i - xi_i^{a or b} Ph_i``; the multipliers turn them into operators in
    ``xi_1^{ab}``, ``xi_2^{ab}`` only.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    Ph = [hat(p, a, b) for p in ops.P]
    Qh = [hat(q, a, b) for q in ops.Q]
    steps = (a, b)
    reps = (b, a)  # number of telescoping terms for operator 1 and 2
    left, opers, prods, targets = [], [], [], []
    for i in range(2):
        s, k = steps[i], reps[i]
        unit = [0, 0]
        unit[i] = s
        op = ShiftElement.of(Qh[i]) - ShiftElement({tuple(unit): Ph[i]})
        mult = ShiftElement()
        for nu in range(k):
            e = [0, 0]
            e[i] = nu * s
            mult = mult + ShiftElement({tuple(e): lam(Qh[i], i, s, k - 1 - nu) * mu(Ph[i], i, s, nu)})
        top = [0, 0]
        top[i] = s * k
        target = ShiftElement.of(Qh[i] * lam(Qh[i], i, s, k - 1)) - ShiftElement(
            {tuple(top): mu(Ph[i], i, s, k)}
        )
        prod = mult * op
        left.append(mult)
        opers.append(op)
        prods.append(prod)
        targets.append(target)
    holds = all(p == t for p, t in zip(prods, targets))
    return TelescopedPair(tuple(left), tuple(opers), tuple(prods), tuple(targets), holds)


# -- resultants and the special form ------------------------------------------

def _univariate_coeffs(f: Polynomial) -> list:
    if f.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    deg = f.total_degree()
    return [f.coefficient((k,)) for k in range(deg, -1, -1)]


def resultant_certificate(f: Polynomial, g: Polynomial) -> Fraction:
    """Sylvester resultant of two nonzero univariate polynomials."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    fc, gc = _univariate_coeffs(f), _univariate_coeffs(g)
    m, n = len(fc) - 1, len(gc) - 1
    if m == 0 and n == 0:
        return Fraction(1)
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    return _det_fraction(rows)


@dataclass(frozen=True)
class SpecialForm:
    f: Polynomial  # univariate in t
    g: Polynomial
    Qt: tuple  # t-free parts
    Pt: tuple


def special_form(B, c) -> SpecialForm:
    """Split the Horn operators as ``f(t) Qt_i - y_i g(t) Pt_i`` with ``t = theta1 + theta2``.

    The t-dependent factors come from rows proportional to (1, 1).  Raises
    UnsupportedShape when no such row exists or the t-free parts still
    involve t.
    """
    Pf, Qf = horn_factor_lists(B, c)
    trows = {j for j in range(B.rows) if B[j, 0] == B[j, 1] != 0}
    if not trows:
        raise UnsupportedShape("no row of B is proportional to (1, 1)")
    one = Polynomial.constant(1, 1)

    def collapse(factors):
        # b.theta + c with b = (k, k) becomes k t + c in one variable
        uni, rest = one, Polynomial.constant(THETA_VARS, 1)
        for j, lf in factors:
            if j in trows:
                k = B[j, 0]
                uni = uni * Polynomial(1, {(1,): k, (0,): lf.coefficient((0, 0))})
            else:
                rest = rest * lf
        return uni, rest

    f1, Q1 = collapse(Qf[0])
    f2, Q2 = collapse(Qf[1])
    g1, P1 = collapse(Pf[0])
    g2, P2 = collapse(Pf[1])
    if f1 != f2 or g1 != g2:
        raise UnsupportedShape("t-parts of the two operators differ")
    return SpecialForm(f1, g1, (Q1, Q2), (P1, P2))


def t_poly(f: Polynomial) -> Polynomial:
    """Lift ``f(t)`` to ``f(theta1 + theta2)``."""
    t = Polynomial.linear((1, 1))
    out = Polynomial.constant(THETA_VARS, 0)
    for (k,), v in f.terms.items():
        out = out + (t**k) * v
    return out
