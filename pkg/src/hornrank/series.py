"""Truncated Gamma-series solutions and their verification.

A series is stored as ``x^v * sum coef(u) x^u`` with ``u = G k`` for an index
vector ``k`` in a window ``|k|_1 <= N``.  ``G`` is B (Horn lattice) or a basis
of the saturated lattice for coset experiments.  Checks are exact; a lattice
relation is only tested when every term it involves lies in the window.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .combinatorics import HornConfig, generic_rank, puiseux_rank
from .errors import GenericityFailure, IdentityViolation, NotInColumnSpace, Violation
from .groebner import generic_initial_ideal, saturate_lattice_ideal
from .linalg import IntMatrix, LatticeQuotient, rank, solve_rational
from .puiseux import all_puiseux
from .shift import horn_polys
from .standard_pairs import exponent_roots, top_pairs

DEFAULT_WINDOW = 12


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def nv_member(v: Sequence, u: Sequence[int]) -> bool:
    """Both biconditionals: negative-integer and nonnegative-integer status agree."""
    for vi, ui in zip(v, u):
        vi = Fraction(vi)
        w = vi + ui
        if (_is_int(vi) and vi < 0) != (_is_int(w) and w < 0):
            return False
        if (_is_int(vi) and vi >= 0) != (_is_int(w) and w >= 0):
            return False
    return True


def falling_fact(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for l in range(k):
        out *= x - l
    return out


def gamma_coefficient(v: Sequence, u: Sequence[int]) -> Fraction:
    """``[v]_{u-} / [v+u]_{u+}``."""
    num = Fraction(1)
    den = Fraction(1)
    for vi, ui in zip(v, u):
        if ui < 0:
            num *= falling_fact(Fraction(vi), -ui)
        elif ui > 0:
            for j in range(1, ui + 1):
                den *= Fraction(vi) + j
    if den == 0:
        raise GenericityFailure(f"vanishing denominator at u = {tuple(u)}")
    return num / den


def window_points(dim: int, N: int):
    """Integer vectors with ``|k|_1 <= N``, in a fixed order."""
    if dim == 0:
        yield ()
        return
    for first in range(-N, N + 1):
        for rest in window_points(dim - 1, N - abs(first)):
            yield (first,) + rest


def _l1(k) -> int:
    return sum(abs(x) for x in k)


@dataclass
class TruncatedGammaSeries:
    v: tuple
    window: int
    generators: IntMatrix  # u = generators @ k
    coeffs: dict  # index k -> coefficient (members of N_v only)
    frontier: frozenset  # indices with a neighbour k +- e_j outside the window

    def point(self, k) -> tuple:
        return self.generators @ k

    def coefficient(self, k) -> Fraction:
        return self.coeffs.get(tuple(k), Fraction(0))

    def in_window(self, k) -> bool:
        return _l1(k) <= self.window

    def exponents(self) -> dict:
        """Full exponent ``v + u`` for every stored term."""
        return {k: tuple(vi + ui for vi, ui in zip(self.v, self.point(k))) for k in self.coeffs}


def _frontier(dim: int, N: int, keys) -> frozenset:
    out = set()
    for k in keys:
        for j in range(dim):
            for s in (1, -1):
                kk = list(k)
                kk[j] += s
                if _l1(kk) > N:
                    out.add(tuple(k))
    return frozenset(out)


def build_phi(v: Sequence, B: IntMatrix, N: int = DEFAULT_WINDOW) -> TruncatedGammaSeries:
    """Truncation of ``x^v sum_{u in N_v} [v]_{u-}/[v+u]_{u+} x^u`` to ``u = B z``, ``|z|_1 <= N``."""
    v = tuple(Fraction(x) for x in v)
    coeffs = {}
    for z in window_points(B.cols, N):
        u = B @ z
        if nv_member(v, u):
            coeffs[z] = gamma_coefficient(v, u)
    return TruncatedGammaSeries(v, N, B, coeffs, _frontier(B.cols, N, coeffs))


@dataclass
class CheckReport:
    checked: int = 0
    excluded: int = 0
    violations: list = field(default_factory=list)
    euler_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.euler_ok and not self.violations


def lattice_relation_check(series: TruncatedGammaSeries, op_index: Sequence[int], report=None) -> CheckReport:
    """Check ``T_b`` for ``b = G @ op_index`` on every relation inside the window.

    Coefficient of ``x^{v+w}`` in ``T_b phi`` is
    ``coef(u + b) [v+u+b]_{b+} - coef(u) [v+u]_{b-}`` with ``u = w + b-``.
    """
    report = report or CheckReport()
    G = series.generators
    b = G @ op_index
    bplus = [max(x, 0) for x in b]
    bminus = [max(-x, 0) for x in b]
    keys = set(series.coeffs)
    keys |= {tuple(k - o for k, o in zip(key, op_index)) for key in series.coeffs}
    for k in sorted(keys):
        k2 = tuple(x + o for x, o in zip(k, op_index))
        if not (series.in_window(k) and series.in_window(k2)):
            report.excluded += 1
            continue
        u = G @ k
        lhs = series.coefficient(k2)
        for vi, ui, bi, bp in zip(series.v, u, b, bplus):
            lhs *= falling_fact(vi + ui + bi, bp)
        rhs = series.coefficient(k)
        for vi, ui, bm in zip(series.v, u, bminus):
            rhs *= falling_fact(vi + ui, bm)
        report.checked += 1
        if lhs != rhs:
            report.violations.append((tuple(op_index), k, lhs - rhs))
    return report


def euler_check(series: TruncatedGammaSeries, A: IntMatrix, c: Sequence) -> bool:
    """Per-term residual of ``A theta - A c`` on ``x^{v+u}``."""
    target = A @ [Fraction(x) for x in c]
    for k in series.coeffs:
        u = series.point(k)
        e = [vi + ui for vi, ui in zip(series.v, u)]
        if A @ e != target:
            return False
    return True


def verify_annihilation(series: TruncatedGammaSeries, op_indices=None, A=None, c=None, strict=False) -> CheckReport:
    """Euler operators (if ``A`` given) and lattice operators ``T_b`` for each index vector."""
    report = CheckReport()
    if A is not None:
        report.euler_ok = euler_check(series, A, c)
    if op_indices is None:
        dim = series.generators.cols
        op_indices = [tuple(int(i == j) for i in range(dim)) for j in range(dim)]
    for k in op_indices:
        lattice_relation_check(series, k, report)
    if strict:
        if not report.euler_ok:
            raise Violation("Euler operator does not vanish")
        if report.violations:
            raise Violation("lattice operator relation fails", report.violations[0])
    return report


# -- Horn variables ---------------------------------------------------------

@dataclass
class HornSeries:
    alpha: tuple
    window: int
    coeffs: dict  # z -> coefficient of y^{alpha + z}
    source: TruncatedGammaSeries

    def terms(self) -> dict:
        return {
            (self.alpha[0] + z[0], self.alpha[1] + z[1]): c for z, c in self.coeffs.items()
        }


def to_horn_series(series: TruncatedGammaSeries, B: IntMatrix, c: Sequence) -> HornSeries:
    diff = [vi - Fraction(ci) for vi, ci in zip(series.v, c)]
    alpha = solve_rational(B.tolist(), diff)
    if alpha is None:
        raise NotInColumnSpace("v - c is not in the column space of B")
    if series.generators != B:
        raise ValueError("series is not indexed by the columns of B")
    return HornSeries(tuple(alpha), series.window, dict(series.coeffs), series)


def verify_horn_series(hs: HornSeries, cfg: HornConfig, strict=False) -> CheckReport:
    """Apply ``H_i`` termwise; a coefficient is tested when both contributing terms are in the window.

    Coefficient of ``y^{alpha+z}`` in ``H_i f`` is
    ``a(z) Q_i(alpha+z) - a(z-e_i) P_i(alpha+z-e_i)``.
    """
    ops = horn_polys(cfg.B, cfg.c)
    report = CheckReport()
    N = hs.window
    for i in range(2):
        e = (1, 0) if i == 0 else (0, 1)
        keys = set(hs.coeffs) | {(z[0] + e[0], z[1] + e[1]) for z in hs.coeffs}
        for z in sorted(keys):
            zm = (z[0] - e[0], z[1] - e[1])
            if _l1(z) > N or _l1(zm) > N:
                report.excluded += 1
                continue
            s = (hs.alpha[0] + z[0], hs.alpha[1] + z[1])
            sm = (hs.alpha[0] + zm[0], hs.alpha[1] + zm[1])
            val = hs.coeffs.get(z, 0) * ops.Q[i].evaluate(s) - hs.coeffs.get(zm, 0) * ops.P[i].evaluate(sm)
            report.checked += 1
            if val:
                report.violations.append((i, z, val))
    if strict and report.violations:
        raise Violation("Horn operator does not annihilate the series", report.violations[0])
    return report


# -- coset splitting --------------------------------------------------------

@dataclass
class CosetSplit:
    parent: TruncatedGammaSeries
    parts: list  # one TruncatedGammaSeries per coset representative
    reps: tuple


def build_lattice_series(v: Sequence, quotient: LatticeQuotient, N: int = DEFAULT_WINDOW) -> TruncatedGammaSeries:
    """Gamma-series over the saturated lattice ``L`` (index = coordinates in its basis)."""
    return build_phi(v, quotient.kernel_basis, N)


def coset_split(series: TruncatedGammaSeries, quotient: LatticeQuotient) -> CosetSplit:
    if series.generators != quotient.kernel_basis:
        raise ValueError("series must be indexed by the saturated lattice basis")
    buckets = [dict() for _ in range(quotient.order)]
    for k, coef in series.coeffs.items():
        buckets[quotient.coset_index_coords(k)][k] = coef
    parts = [
        TruncatedGammaSeries(series.v, series.window, series.generators, b, series.frontier & frozenset(b))
        for b in buckets
    ]
    return CosetSplit(series, parts, quotient.coset_reps)


def sublattice_op_indices(quotient: LatticeQuotient) -> list:
    """Columns of B written in the saturated-lattice basis."""
    M = quotient.coords
    return [M.column(j) for j in range(M.cols)]


# -- the full basis ---------------------------------------------------------

@dataclass
class FullBasis:
    roots: list
    series: list  # TruncatedGammaSeries
    horn: list  # HornSeries
    puiseux: list
    weight: tuple
    embedded_discarded: int = 0

    @property
    def total(self) -> int:
        return len(self.horn) + len(self.puiseux)


def series_roots(cfg: HornConfig, rng: random.Random):
    """Exponent roots from the top standard pairs of a generic initial ideal of ``I_B``."""
    gens = saturate_lattice_ideal(cfg.B)
    M, w = generic_initial_ideal(gens, rng)
    T = top_pairs(M)
    roots = exponent_roots(T, cfg.B, cfg.c, cfg.A)
    for r in roots:
        if any(_is_int(x) and x < 0 for x in r.v):
            raise GenericityFailure(f"exponent {r.v} has a negative integer coordinate")
    return roots, w, M


def full_basis(cfg: HornConfig, N: int = DEFAULT_WINDOW, rng: random.Random | None = None) -> FullBasis:
    rng = rng or random.Random(cfg.seed)
    rep = generic_rank(cfg)
    roots, w, M = series_roots(cfg, rng)
    series, horn = [], []
    for r in roots:
        phi = build_phi(r.v, cfg.B, N)
        series.append(phi)
        horn.append(to_horn_series(phi, cfg.B, cfg.c))
    puis = all_puiseux(cfg)
    if len(series) != rep.g * rep.vol_A:
        raise IdentityViolation(f"{len(series)} series but g*vol = {rep.g * rep.vol_A}")
    if len(puis) != puiseux_rank(cfg):
        raise IdentityViolation("Puiseux count differs from the index sum")
    fb = FullBasis(roots, series, horn, puis, w)
    # resonant parameters can make solutions coincide; the count alone is then no basis
    if not basis_independent(fb):
        raise GenericityFailure("truncated solutions are linearly dependent")
    return fb


def exponent_classes_distinct(roots) -> bool:
    """No two Horn exponents ``alpha`` differ by an integer vector.

    Equivalently ``v - v'`` never lies in ``L_B``.  Exponents may still differ
    by integer vectors of the saturated lattice when ``g > 1``.
    """
    for a in range(len(roots)):
        for b in range(a + 1, len(roots)):
            if all(_is_int(x - y) for x, y in zip(roots[a].alpha, roots[b].alpha)):
                return False
    return True


def _class_key(e) -> tuple:
    return tuple(Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator) for x in e)


def basis_independent(basis: FullBasis) -> bool:
    """Linear independence of the truncated solutions.

    Solutions whose exponents lie in different classes of ``Q^2 / Z^2`` are
    independent, so the rank test runs per class on the stored coefficients.
    """
    groups: dict = {}
    for h in basis.horn:
        groups.setdefault(_class_key(h.alpha), []).append(h.terms())
    for p in basis.puiseux:
        groups.setdefault(_class_key(next(iter(p.terms))), []).append(p.terms)
    for members in groups.values():
        if len(members) == 1:
            continue
        support = sorted(set().union(*members))
        mat = [[m.get(e, 0) for e in support] for m in members]
        if rank(mat) < len(members):
            return False
    return True


def puiseux_disjoint_from_series(basis: FullBasis) -> bool:
    """No Puiseux exponent is an integer translate of a series exponent.

    Stronger than independence and weight dependent: a series root may sit on
    the rows of a Puiseux pair, in which case its expansion starts at the
    Puiseux monomial and the two still differ.
    """
    for p in basis.puiseux:
        for s in p.terms:
            for h in basis.horn:
                if all(_is_int(s[i] - h.alpha[i]) for i in range(2)):
                    return False
    return True
