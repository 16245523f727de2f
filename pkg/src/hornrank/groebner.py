"""Buchberger's algorithm and the binomial-ideal computations built on it.

The engine is general (any polynomials over Q) but tuned for the binomial
ideals that show up here: pure-difference binomials stay binomials under
S-pairs and reduction, so every intermediate polynomial is tiny.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import GenericityFailure, ResourceExhausted
from .linalg import IntMatrix
from .polynomial import MonomialOrder, Polynomial, _raw
from .standard_pairs import MonomialIdeal

DEFAULT_PAIR_BUDGET = 10**6
WEIGHT_RANGE = (1, 2**16)
WEIGHT_ATTEMPTS = 32


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _disjoint(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Elem:
    __slots__ = ("terms", "lm", "sugar")

    def __init__(self, terms, lm, sugar):
        self.terms = terms
        self.lm = lm
        self.sugar = sugar


def _monic(terms, key):
    lm = max(terms, key=key)
    c = terms[lm]
    if c != 1:
        inv = 1 / c
        terms = {e: v * inv for e, v in terms.items()}
    return terms, lm


def _reduce(terms, basis, key, full=True):
    """Reduce ``terms`` by the elements of ``basis``.

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    f = dict(terms)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for g in basis:
            if _divides(g.lm, m):
                q = tuple(a - b for a, b in zip(m, g.lm))
                for e, v in g.terms.items():
                    ee = tuple(a + b for a, b in zip(e, q))
                    s = f.get(ee, 0) - c * v
                    if s:
                        f[ee] = s
                    else:
                        f.pop(ee, None)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[m] = c
            del f[m]
    return rem


@dataclass
class GroebnerBasis:
    generators: list
    order: MonomialOrder
    reduced: bool = True
    stats: dict = field(default_factory=dict)

    def leading_monomials(self) -> list:
        return [self.order.leading(g.terms) for g in self.generators]

    def _elems(self):
        key = self.order.key
        return [_Elem(g.terms, max(g.terms, key=key), 0) for g in self.generators]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __len__(self):
        return len(self.generators)


def _update(G, pairs, h, key):
    """Gebauer-Moeller installation of ``h`` into basis ``G`` and pair list."""
    hl = G[h].lm
    active = [g for g in pairs["active"] if g != h]
    C = [g for g in active]
    D = []
    while C:
        g1 = C.pop()
        l1 = _lcm(hl, G[g1].lm)
        if _disjoint(hl, G[g1].lm) or not any(
            _divides(_lcm(hl, G[g2].lm), l1) for g2 in C + D
        ):
            D.append(g1)
    E = [g for g in D if not _disjoint(hl, G[g].lm)]
    kept = []
    for (g1, g2, l12, sug) in pairs["queue"]:
        if (
            _divides(hl, l12)
            and _lcm(G[g1].lm, hl) != l12
            and _lcm(hl, G[g2].lm) != l12
        ):
            continue
        kept.append((g1, g2, l12, sug))
    for g in E:
        l = _lcm(hl, G[g].lm)
        sug = max(
            G[h].sugar + sum(l) - sum(hl),
            G[g].sugar + sum(l) - sum(G[g].lm),
        )
        kept.append((g, h, l, sug))
    pairs["queue"] = kept
    pairs["active"] = [g for g in active if not _divides(hl, G[g].lm)] + [h]


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder, budget: int = DEFAULT_PAIR_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    key = order.key
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        raise ValueError("generators must be nonzero")
    nvars = nonzero[0].nvars
    G: list = []
    pairs = {"active": [], "queue": []}
    processed = 0

    def install(terms):
        terms, lm = _monic(terms, key)
        sugar = max(sum(e) for e in terms)
        G.append(_Elem(terms, lm, sugar))
        _update(G, pairs, len(G) - 1, key)

    for g in nonzero:
        r = _reduce(g.terms, [G[i] for i in pairs["active"]], key)
        if r:
            install(r)

    while pairs["queue"]:
        idx = min(range(len(pairs["queue"])), key=lambda i: (pairs["queue"][i][3], key(pairs["queue"][i][2])))
        g1, g2, l, sug = pairs["queue"].pop(idx)
        processed += 1
        if processed > budget:
            raise ResourceExhausted(
                "S-pair budget exceeded",
                processed=processed,
                basis_size=len(pairs["active"]),
                pending=len(pairs["queue"]),
            )
        a, b = G[g1], G[g2]
        qa = tuple(x - y for x, y in zip(l, a.lm))
        qb = tuple(x - y for x, y in zip(l, b.lm))
        s = {}
        for e, v in a.terms.items():
            ee = tuple(x + y for x, y in zip(e, qa))
            s[ee] = s.get(ee, 0) + v
        for e, v in b.terms.items():
            ee = tuple(x + y for x, y in zip(e, qb))
            t = s.get(ee, 0) - v
            if t:
                s[ee] = t
            else:
                s.pop(ee, None)
        if not s:
            continue
        r = _reduce(s, [G[i] for i in pairs["active"]], key)
        if r:
            install(r)

    basis = [G[i] for i in pairs["active"]]
    # minimalize, then tail-reduce
    basis = [
        g for g in basis
        if not any(h is not g and _divides(h.lm, g.lm) and (h.lm != g.lm or id(h) < id(g)) for h in basis)
    ]
    reduced = []
    for g in basis:
        others = [h for h in basis if h is not g]
        tail = {e: v for e, v in g.terms.items() if e != g.lm}
        tail = _reduce(tail, others, key)
        terms = dict(tail)
        terms[g.lm] = Fraction(1)
        reduced.append(_Elem(terms, g.lm, g.sugar))
    reduced.sort(key=lambda g: key(g.lm))
    polys = [_raw(nvars, g.terms) for g in reduced]
    return GroebnerBasis(polys, order, True, {"pairs": processed})


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``gb``."""
    return _raw(f.nvars, _reduce(f.terms, gb._elems(), gb.order.key))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    key = order.key
    ft, fl = _monic(f.terms, key)
    gt, gl = _monic(g.terms, key)
    l = _lcm(fl, gl)
    a = _raw(f.nvars, ft).mul_monomial(tuple(x - y for x, y in zip(l, fl)))
    b = _raw(g.nvars, gt).mul_monomial(tuple(x - y for x, y in zip(l, gl)))
    return a - b


# -- binomial ideals --------------------------------------------------------

def lattice_basis_ideal(B: IntMatrix) -> list:
    """Generators ``T_i`` of the lattice basis ideal, one per column of B."""
    return [Polynomial.binomial(B.column(j)) for j in range(B.cols)]


def saturate_lattice_ideal(B: IntMatrix, budget: int = DEFAULT_PAIR_BUDGET) -> list:
    """Generators of ``I_B``: saturation of the lattice basis ideal by all variables.

    Adjoins ``t`` with ``t * x_1 ... x_n - 1`` and eliminates it.
    """
    n = B.rows
    gens = [g.extend(n + 1) for g in lattice_basis_ideal(B)]
    aux = Polynomial(n + 1, {(1,) * (n + 1): 1, (0,) * (n + 1): -1})
    order = MonomialOrder((0,) * (n + 1), block=(n,))
    gb = buchberger(gens + [aux], order, budget)
    out = [g.restrict(n) for g in gb.generators if not any(e[n] for e in g.terms)]
    return out


def initial_ideal(gens: Sequence[Polynomial], w: Sequence[int], budget: int = DEFAULT_PAIR_BUDGET):
    """``(in_w(I), generic)`` for the ideal generated by ``gens``.

    ``generic`` is False when some Groebner basis element has more than one
    term of maximal weight; the returned monomial ideal is then the initial
    ideal for the grevlex refinement, not for ``w`` alone.
    """
    order = MonomialOrder(w)
    gb = buchberger(gens, order, budget)
    generic = True
    lms = []
    for g in gb.generators:
        weights = [sum(a * b for a, b in zip(order.weight, e)) for e in g.terms]
        top = max(weights)
        if weights.count(top) > 1:
            generic = False
        lms.append(order.leading(g.terms))
    nvars = gens[0].nvars
    return MonomialIdeal.from_monomials(lms, nvars), generic


def random_weight(nvars: int, rng: random.Random) -> tuple:
    return tuple(rng.randint(*WEIGHT_RANGE) for _ in range(nvars))


def generic_initial_ideal(gens, rng: random.Random, attempts: int = WEIGHT_ATTEMPTS, budget=DEFAULT_PAIR_BUDGET):
    """Sample weights until ``in_w`` is a monomial ideal; returns ``(M, w)``."""
    nvars = gens[0].nvars
    for _ in range(attempts):
        w = random_weight(nvars, rng)
        M, generic = initial_ideal(gens, w, budget)
        if generic:
            return M, w
    raise GenericityFailure(f"no generic weight found in {attempts} attempts")


def membership_alpha(B: IntMatrix, alpha: Sequence[int], lattice_gens=None, order=None) -> bool:
    """Whether ``x^alpha * f`` lies in the lattice basis ideal for every generator of ``I_B``."""
    if lattice_gens is None:
        lattice_gens = saturate_lattice_ideal(B)
    order = order or MonomialOrder.grevlex(B.rows)
    gb = buchberger(lattice_basis_ideal(B), order)
    return all(gb.contains(f.mul_monomial(alpha)) for f in lattice_gens)


def is_binomial_lattice_element(f: Polynomial, B: IntMatrix) -> bool:
    """Whether ``f`` is ``x^{u+} - x^{u-}`` (up to sign) with ``u`` in ``L_B``."""
    from .linalg import in_lattice

    if len(f.terms) != 2:
        return False
    (e1, c1), (e2, c2) = f.terms.items()
    if c1 != -c2:
        return False
    u = tuple(a - b for a, b in zip(e1, e2))
    if any(a and b for a, b in zip(e1, e2)):
        return False
    return in_lattice(B, u)
