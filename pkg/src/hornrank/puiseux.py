"""Puiseux polynomial solutions of bivariate Horn systems.

Each linearly independent pair of rows in opposite open quadrants carries
``nu_ij`` solutions.  They are found in the ambient variables of the pair
(where they are ordinary polynomials annihilated by two binomial operators)
and then pulled back to the Horn variables.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .combinatorics import HornConfig, index_nu, independent_opposite_pairs
from .errors import GenericityFailure, IdentityViolation, InvariantError
from .shift import horn_polys


def falling(x, k: int):
    out = 1
    for l in range(k):
        out *= x - l
    return out


@dataclass(frozen=True)
class PairSystem:
    i: int  # original index of the row that ends up in the open first quadrant
    j: int
    M: tuple  # ((r1, r2), (q1, q2)), oriented
    c_pair: tuple
    flip2: bool  # second Horn coordinate inverted

    @property
    def nu(self) -> int:
        return index_nu(self.M[0], self.M[1])

    @property
    def det(self) -> int:
        (r1, r2), (q1, q2) = self.M
        return r1 * q2 - r2 * q1

    def moves(self):
        (r1, r2), (q1, q2) = self.M
        return ((r1, q1), (r2, q2))


def orient_pair(B, c, i: int, j: int) -> PairSystem:
    bi, bj = B.row(i), B.row(j)
    if bi[0] * bj[1] - bi[1] * bj[0] == 0:
        raise InvariantError("independent pair", f"rows {i}, {j} are dependent")
    if index_nu(bi, bj) == 0:
        raise InvariantError("opposite open quadrants", f"rows {i}, {j}")
    if bi[0] < 0:
        i, j, bi, bj = j, i, bj, bi
    flip = bi[1] < 0
    s = -1 if flip else 1
    M = ((bi[0], s * bi[1]), (bj[0], s * bj[1]))
    return PairSystem(i, j, M, (Fraction(c[i]), Fraction(c[j])), flip)


def admissible_pairs(cfg: HornConfig) -> list:
    return [orient_pair(cfg.B, cfg.c, i, j) for i, j in independent_opposite_pairs(cfg.B)]


def base_rectangle(ps: PairSystem) -> list:
    (r1, r2), (q1, q2) = ps.M
    if ps.det == 0:
        raise InvariantError("independent pair", "dependent M")
    if abs(r1 * q2) > abs(r2 * q1):
        U, V = r2, -q1
    else:
        U, V = r1, -q2
    return [(u, v) for u in range(U) for v in range(V)]


def exploration_bound(ps: PairSystem) -> int:
    (r1, r2), (q1, q2) = ps.M
    return r1 * r2 + max(r1, r2, -q1, -q2)


def _neighbors(p, ps):
    for a, b in ps.moves():
        for s in (1, -1):
            x, y = p[0] + s * a, p[1] + s * b
            if x >= 0 and y >= 0:
                yield (x, y)


@dataclass
class SupportGraph:
    pair: PairSystem
    components: list  # (base point, frozenset of nodes)
    infinite: list = field(default_factory=list)  # base points whose component left the box


def enumerate_supports(ps: PairSystem, bound: int | None = None) -> SupportGraph:
    bound = exploration_bound(ps) if bound is None else bound
    seen: set = set()
    comps, infinite = [], []
    for base in base_rectangle(ps):
        if base in seen:
            raise IdentityViolation(f"base points share a component at {base}")
        comp = {base}
        queue = deque([base])
        escaped = False
        while queue:
            p = queue.popleft()
            for q in _neighbors(p, ps):
                if q in comp:
                    continue
                if q[0] > bound or q[1] > bound:
                    escaped = True
                    continue
                comp.add(q)
                queue.append(q)
        seen |= comp
        if escaped:
            infinite.append(base)
        else:
            comps.append((base, frozenset(comp)))
    return SupportGraph(ps, comps, infinite)


def _normalize(coeffs: dict, order_key) -> dict:
    """Scale to a primitive integer vector, positive at the first point of ``order_key``."""
    den = 1
    for v in coeffs.values():
        den = lcm(den, v.denominator)
    ints = {k: v * den for k, v in coeffs.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, int(v))
    first = min(coeffs, key=order_key)
    sign = 1 if ints[first] > 0 else -1
    return {k: Fraction(int(v)) / (g * sign) for k, v in ints.items()}


def solve_coefficients(support, ps: PairSystem) -> dict:
    """Coefficients of the ambient polynomial on ``support`` (up to scalar)."""
    support = set(support)
    start = min(support)
    f = {start: Fraction(1)}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for a, b in ps.moves():
            # move p -> p + (a, b) with a > 0 > b: f_{p'} [p'_1]_a = f_p [p_2]_{-b}
            fwd = (p[0] + a, p[1] + b)
            if fwd in support and fwd not in f:
                f[fwd] = f[p] * falling(p[1], -b) / falling(fwd[0], a)
                queue.append(fwd)
            back = (p[0] - a, p[1] - b)
            if back in support and back not in f:
                f[back] = f[p] * falling(p[0], a) / falling(back[1], -b)
                queue.append(back)
    if set(f) != support:
        raise IdentityViolation("support is not connected by the moves")
    if not check_ambient(f, ps):
        raise IdentityViolation("ambient polynomial fails a binomial operator")
    return _normalize(f, lambda k: k)


def check_ambient(f: dict, ps: PairSystem) -> bool:
    """Exact check that both binomial operators kill ``sum f_p x^p``."""
    for a, b in ps.moves():
        out: dict = {}
        for p, v in f.items():
            # d1^a x^p and d2^{-b} x^p
            if p[0] >= a:
                m = (p[0] - a, p[1])
                out[m] = out.get(m, 0) + v * falling(p[0], a)
            if p[1] >= -b:
                m = (p[0], p[1] + b)
                out[m] = out.get(m, 0) - v * falling(p[1], -b)
        if any(out.values()):
            return False
    return True


@dataclass(frozen=True)
class PuiseuxPolynomial:
    terms: dict  # y-exponent (Fraction, Fraction) -> coefficient
    ambient: dict  # pair x-exponent (int, int) -> coefficient
    pair: PairSystem
    base_point: tuple

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def format(self, names=("y1", "y2")) -> str:
        return format_terms(self.terms, names)

    def format_ambient(self, names=("x1", "x2")) -> str:
        return format_terms(self.ambient, names)


def format_terms(terms: dict, names) -> str:
    parts = []
    for e in sorted(terms):
        c = terms[e]
        mono = "*".join(
            n if k == 1 else f"{n}^({k})" if Fraction(k).denominator != 1 or k < 0 else f"{n}^{k}"
            for n, k in zip(names, e) if k
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def to_horn_exponent(p, ps: PairSystem) -> tuple:
    """Solve ``M alpha = p - c_pair`` and undo the orientation."""
    (r1, r2), (q1, q2) = ps.M
    u = p[0] - ps.c_pair[0]
    v = p[1] - ps.c_pair[1]
    det = ps.det
    a1 = Fraction(u * q2 - v * r2, det)
    a2 = Fraction(r1 * v - q1 * u, det)
    return (a1, -a2 if ps.flip2 else a2)


def horn_coefficients(support: Sequence, cfg: HornConfig, order_key=None) -> dict:
    """Coefficients on a finite y-support from the full Horn recurrence.

    ``a(s + e_i) Q_i(s + e_i) = a(s) P_i(s)``; the result is checked by
    applying both operators.
    """
    ops = horn_polys(cfg.B, cfg.c)
    support = set(support)
    start = min(support) if order_key is None else min(support, key=order_key)
    a = {start: Fraction(1)}
    queue = deque([start])
    units = ((1, 0), (0, 1))
    while queue:
        s = queue.popleft()
        for i, e in enumerate(units):
            up = (s[0] + e[0], s[1] + e[1])
            if up in support and up not in a:
                q = ops.Q[i].evaluate(up)
                if q == 0:
                    continue
                a[up] = a[s] * ops.P[i].evaluate(s) / q
                queue.append(up)
            down = (s[0] - e[0], s[1] - e[1])
            if down in support and down not in a:
                p = ops.P[i].evaluate(down)
                if p == 0:
                    continue
                a[down] = a[s] * ops.Q[i].evaluate(s) / p
                queue.append(down)
    if set(a) != support or any(v == 0 for v in a.values()):
        raise GenericityFailure("Horn recurrence degenerates on the support")
    for H in ops.H:
        if H.apply(a):
            raise GenericityFailure("pulled-back polynomial is not a solution (parameters not generic)")
    return a


def pair_solutions(cfg: HornConfig, ps: PairSystem) -> list:
    graph = enumerate_supports(ps)
    if graph.infinite:
        raise IdentityViolation(f"components escaped the exploration box: {graph.infinite}")
    out = []
    for base, comp in graph.components:
        amb = solve_coefficients(comp, ps)
        ymap = {p: to_horn_exponent(p, ps) for p in comp}
        inv = {v: k for k, v in ymap.items()}
        a = horn_coefficients(list(inv), cfg, order_key=lambda s: inv[s])
        a = _normalize(a, lambda s: inv[s])
        out.append(PuiseuxPolynomial(a, amb, ps, base))
    if len(out) != ps.nu:
        raise IdentityViolation(f"pair ({ps.i},{ps.j}): {len(out)} solutions, index {ps.nu}")
    return out


def all_puiseux(cfg: HornConfig) -> list:
    out = []
    for ps in admissible_pairs(cfg):
        out.extend(pair_solutions(cfg, ps))
    return out


def verify_puiseux(poly: PuiseuxPolynomial, cfg: HornConfig) -> bool:
    ops = horn_polys(cfg.B, cfg.c)
    return all(not H.apply(poly.terms) for H in ops.H)
