"""Sparse multivariate polynomials over Q and monomial orders."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Polynomial:
    """Polynomial in ``nvars`` variables stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so two equal polynomials have equal
    term dictionaries.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _frac(c)
                if c:
                    e = tuple(e)
                    if len(e) != nvars:
                        raise ValueError("exponent length mismatch")
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "Polynomial":
        """``sum coeffs[i] * x_i + const``."""
        n = len(coeffs)
        terms = {(0,) * n: const}
        for i, a in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = a
        return cls(n, terms)

    @classmethod
    def binomial(cls, u: Sequence[int]) -> "Polynomial":
        """Pure difference binomial ``x^{u+} - x^{u-}``."""
        plus = tuple(max(x, 0) for x in u)
        minus = tuple(max(-x, 0) for x in u)
        return cls(len(u), {plus: 1, minus: -1})

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _frac(other)
            if not c:
                return _raw(self.nvars, {})
            return _raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return _raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exp: Sequence[int], c=1) -> "Polynomial":
        c = _frac(c)
        return _raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()} if c else {},
        )

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == Polynomial.constant(self.nvars, other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        pt = [_frac(x) for x in point]
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            total += v
        return total

    def shift(self, delta: Sequence) -> "Polynomial":
        """``p(x + delta)``."""
        if not any(delta):
            return self
        out: dict = {}
        d = [_frac(x) for x in delta]
        for e, c in self.terms.items():
            # expand prod (x_i + d_i)^{e_i}
            partial = {(): c}
            for i, k in enumerate(e):
                nxt: dict = {}
                for pre, val in partial.items():
                    if d[i] == 0 or k == 0:
                        nxt[pre + (k,)] = nxt.get(pre + (k,), 0) + val
                        continue
                    for j in range(k + 1):
                        term = val * comb(k, j) * d[i] ** (k - j)
                        key = pre + (j,)
                        nxt[key] = nxt.get(key, 0) + term
                partial = nxt
            for ee, v in partial.items():
                s = out.get(ee, 0) + v
                if s:
                    out[ee] = s
                else:
                    out.pop(ee, None)
        return _raw(self.nvars, out)

    def scale_variables(self, factors: Sequence) -> "Polynomial":
        """``p(f_1 x_1, ..., f_n x_n)``."""
        f = [_frac(x) for x in factors]
        out = {}
        for e, c in self.terms.items():
            v = c
            for x, k in zip(f, e):
                v *= x**k
            if v:
                out[e] = v
        return _raw(self.nvars, out)

    def extend(self, nvars: int) -> "Polynomial":
        """Embed into a ring with more variables (new ones appended)."""
        pad = (0,) * (nvars - self.nvars)
        return _raw(nvars, {e + pad: c for e, c in self.terms.items()})

    def restrict(self, nvars: int) -> "Polynomial":
        """Drop trailing variables; every term must be free of them."""
        out = {}
        for e, c in self.terms.items():
            if any(e[nvars:]):
                raise ValueError("polynomial involves dropped variables")
            out[e[:nvars]] = c
        return _raw(nvars, out)

    def content_normalized(self, order: "MonomialOrder | None" = None) -> "Polynomial":
        """Scale to leading coefficient 1 (under ``order``, default grevlex)."""
        if not self.terms:
            return self
        order = order or MonomialOrder.grevlex(self.nvars)
        lead = self.terms[order.leading(self.terms)]
        return self * (1 / lead)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.format()})"

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _raw(nvars, terms) -> Polynomial:
    p = Polynomial.__new__(Polynomial)
    p.nvars = nvars
    p.terms = terms
    return p


def falling_factorial_poly(form: Polynomial, count: int) -> Polynomial:
    """``prod_{l=0}^{count-1} (form - l)``."""
    out = Polynomial.constant(form.nvars, 1)
    for l in range(count):
        out = out * (form - l)
    return out


class MonomialOrder:
    """Weight order refined by graded reverse lexicographic order.

    Variables listed in ``block`` form an elimination block: any monomial with
    higher total degree in the block is larger, regardless of the weight.
    """

    def __init__(self, weight: Sequence[int], block: Iterable[int] = ()):
        self.weight = tuple(int(x) for x in weight)
        self.block = tuple(block)
        w = self.weight
        blk = self.block
        n = len(w)
        rev = tuple(range(n - 1, -1, -1))
        if blk:
            def key(e):
                return (
                    sum(e[i] for i in blk),
                    sum(a * b for a, b in zip(w, e)),
                    sum(e),
                    tuple(-e[i] for i in rev),
                )
        else:
            def key(e):
                return (sum(a * b for a, b in zip(w, e)), sum(e), tuple(-e[i] for i in rev))
        self.key = key

    @classmethod
    def grevlex(cls, nvars: int) -> "MonomialOrder":
        return cls((0,) * nvars)

    @property
    def nvars(self) -> int:
        return len(self.weight)

    def leading(self, terms) -> tuple:
        return max(terms, key=self.key)

    def sorted_terms(self, terms) -> list:
        return sorted(terms, key=self.key, reverse=True)

    def __repr__(self):
        return f"MonomialOrder(weight={self.weight}, block={self.block})"
