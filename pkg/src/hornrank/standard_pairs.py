"""Standard pairs of monomial ideals and the exponents they determine."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import GenericityFailure, InvariantError


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators (an antichain)."""

    generators: tuple
    nvars: int

    @classmethod
    def from_monomials(cls, monomials: Iterable, nvars: int) -> "MonomialIdeal":
        mons = sorted(set(tuple(m) for m in monomials))
        minimal = [m for m in mons if not any(o != m and _divides(o, m) for o in mons)]
        return cls(tuple(minimal), nvars)

    def contains(self, mono) -> bool:
        return any(_divides(g, mono) for g in self.generators)

    def max_degrees(self) -> tuple:
        return tuple(max((g[i] for g in self.generators), default=0) for i in range(self.nvars))

    def is_proper(self) -> bool:
        return not self.contains((0,) * self.nvars)


@dataclass(frozen=True, order=True)
class StandardPair:
    sigma: tuple
    eta: tuple

    def free(self, n: int) -> tuple:
        """Indices outside sigma."""
        return tuple(i for i in range(n) if i not in self.sigma)


def _staircase(gens_tau, box):
    """All exponents in the box (coordinatewise ``< box``) outside ``<gens_tau>``."""
    k = len(box)
    start = (0,) * k
    if any(b <= 0 for b in box) or any(_divides(g, start) for g in gens_tau):
        return []
    seen = {start}
    stack = [start]
    while stack:
        e = stack.pop()
        for i in range(k):
            if e[i] + 1 >= box[i]:
                continue
            f = e[:i] + (e[i] + 1,) + e[i + 1:]
            if f in seen or any(_divides(g, f) for g in gens_tau):
                continue
            seen.add(f)
            stack.append(f)
    return sorted(seen)


def _pairs_for_sigma(M: MonomialIdeal, sigma: tuple) -> list:
    n = M.nvars
    tau = tuple(i for i in range(n) if i not in sigma)
    # a generator living entirely in sigma kills every candidate
    if any(all(g[i] == 0 for i in tau) for g in M.generators):
        return []
    gens_tau = [tuple(g[i] for i in tau) for g in M.generators]
    box = [max(g[p] for g in gens_tau) for p in range(len(tau))]
    out = []
    for eta_tau in _staircase(gens_tau, box):
        ok = True
        for p in range(len(tau)):
            # some power of the p-th free variable must push eta into M
            if not any(
                all(g[q] <= eta_tau[q] for q in range(len(tau)) if q != p) for g in gens_tau
            ):
                ok = False
                break
        if ok:
            eta = [0] * n
            for p, i in enumerate(tau):
                eta[i] = eta_tau[p]
            out.append(StandardPair(sigma, tuple(eta)))
    return out


def standard_pairs(M: MonomialIdeal, sizes: Iterable[int] | None = None) -> list:
    """Standard pairs of ``M``, sorted by sigma then eta.

    ``sizes`` restricts the search to sigma of the given cardinalities.
    """
    if not M.is_proper():
        raise InvariantError("M proper", "the unit ideal has no standard pairs")
    n = M.nvars
    sizes = range(n + 1) if sizes is None else sizes
    out = []
    for k in sorted(set(sizes)):
        for sigma in combinations(range(n), k):
            out.extend(_pairs_for_sigma(M, sigma))
    return sorted(out)


def top_pairs(M: MonomialIdeal, codim: int = 2) -> list:
    return standard_pairs(M, sizes=[M.nvars - codim])


def embedded_pair_count(M: MonomialIdeal, codim: int = 2) -> int:
    """Standard pairs that are not top dimensional (reported, otherwise unused)."""
    return len(standard_pairs(M)) - len(top_pairs(M, codim))


def _rows_independent(B, idx) -> bool:
    k, l = idx
    return B[k, 0] * B[l, 1] - B[k, 1] * B[l, 0] != 0


def admissible_T(pairs_or_ideal, B) -> list:
    """Top pairs whose complementary rows of ``B`` are linearly independent."""
    if isinstance(pairs_or_ideal, MonomialIdeal):
        pairs = top_pairs(pairs_or_ideal)
    else:
        pairs = list(pairs_or_ideal)
    n = B.rows
    return [p for p in pairs if len(p.free(n)) == 2 and _rows_independent(B, p.free(n))]


def dependent_multiplicity(M: MonomialIdeal, k: int, l: int) -> int:
    """Number of top pairs whose sigma is the complement of ``{k, l}``."""
    sigma = tuple(i for i in range(M.nvars) if i not in (k, l))
    return len(_pairs_for_sigma(M, sigma))


def pair_census(pairs, n: int) -> dict:
    """Count of top pairs for each complementary index pair."""
    out: dict = {}
    for p in pairs:
        key = p.free(n)
        out[key] = out.get(key, 0) + 1
    return out


@dataclass(frozen=True)
class ExponentRoot:
    v: tuple
    pair: StandardPair
    alpha: tuple  # v - c = B alpha


def exponent_roots(T: Sequence[StandardPair], B, c, A=None) -> list:
    """One exponent per pair: ``v_k = eta_k`` off sigma and ``A v = A c``.

    ``A v = A c`` means ``v - c = B alpha`` for a rational ``alpha``, so the
    two fixed coordinates give a 2x2 system for ``alpha``.
    """
    c = [Fraction(x) for x in c]
    n = B.rows
    roots = []
    for p in T:
        free = p.free(n)
        if len(free) != 2:
            raise GenericityFailure(f"pair {p} is not top dimensional")
        k, l = free
        det = B[k, 0] * B[l, 1] - B[k, 1] * B[l, 0]
        if det == 0:
            raise GenericityFailure(f"rows {k}, {l} are dependent; no exponent for {p}")
        rk = p.eta[k] - c[k]
        rl = p.eta[l] - c[l]
        a1 = Fraction(rk * B[l, 1] - rl * B[k, 1], det)
        a2 = Fraction(B[k, 0] * rl - B[l, 0] * rk, det)
        v = tuple(c[i] + B[i, 0] * a1 + B[i, 1] * a2 for i in range(n))
        if A is not None:
            for r in range(A.rows):
                if sum(A[r, i] * (v[i] - c[i]) for i in range(n)) != 0:
                    raise InvariantError("A v = A c", "exponent root off the Euler fibre")
        roots.append(ExponentRoot(v, p, (a1, a2)))
    vs = [r.v for r in roots]
    if len(set(vs)) != len(vs):
        raise GenericityFailure("two exponent roots coincide")
    return roots
