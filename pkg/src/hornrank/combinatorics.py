"""Closed-form combinatorics of bivariate Horn systems.

Quadrant classes and indices of row pairs, operator orders, and the two
expressions for the generic holonomic rank.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .errors import IdentityViolation, InvariantError, NonIntegralVolume
from .linalg import IntMatrix, gale_dual, gcd_maximal_minors

# denominator for sampled generic parameters (the Mersenne prime 2^31 - 1)
GENERIC_DENOMINATOR = 2147483647
GENERIC_NUMERATOR_RANGE = (10**6, 2 * 10**6)


class Quadrant(Enum):
    OpenQ1 = 1
    OpenQ2 = 2
    OpenQ3 = 3
    OpenQ4 = 4
    Axis = 5
    Zero = 6


def quadrant_class(b: Sequence[int]) -> Quadrant:
    x, y = b
    if x == 0 and y == 0:
        return Quadrant.Zero
    if x == 0 or y == 0:
        return Quadrant.Axis
    if x > 0:
        return Quadrant.OpenQ1 if y > 0 else Quadrant.OpenQ4
    return Quadrant.OpenQ2 if y > 0 else Quadrant.OpenQ3


_OPPOSITE = {
    Quadrant.OpenQ1: Quadrant.OpenQ3,
    Quadrant.OpenQ3: Quadrant.OpenQ1,
    Quadrant.OpenQ2: Quadrant.OpenQ4,
    Quadrant.OpenQ4: Quadrant.OpenQ2,
}


def opposite_open(bi, bj) -> bool:
    return _OPPOSITE.get(quadrant_class(bi)) == quadrant_class(bj)


def index_nu(bi: Sequence[int], bj: Sequence[int]) -> int:
    """Index of a row pair: ``min(|bi1*bj2|, |bj1*bi2|)`` for opposite open quadrants, else 0."""
    if not opposite_open(bi, bj):
        return 0
    return min(abs(bi[0] * bj[1]), abs(bj[0] * bi[1]))


def _dependent(bi, bj) -> bool:
    return bi[0] * bj[1] - bi[1] * bj[0] == 0


def sample_generic_c(n: int, rng: random.Random) -> tuple:
    lo, hi = GENERIC_NUMERATOR_RANGE
    return tuple(Fraction(rng.randint(lo, hi), GENERIC_DENOMINATOR) for _ in range(n))


def to_falling(B: IntMatrix, c, convention: str = "falling"):
    """Translate a rising-factorial system to the falling form used internally.

    Each rising factor ``b.theta + c + l`` equals ``-((-b).theta + (-c) - l)``,
    so rising ``(B, c)`` is falling ``(-B, -c)``; the operators agree up to the
    sign ``(-1)^(d_i)``, which does not change the solution space.
    """
    if convention == "falling":
        return B, c
    if convention != "rising":
        raise InvariantError("convention", f"unknown convention {convention!r}")
    negB = IntMatrix([[-x for x in B.row(i)] for i in range(B.rows)])
    negc = None if c is None else tuple(-Fraction(x) for x in c)
    return negB, negc


@dataclass(frozen=True)
class PairIndex:
    i: int
    j: int
    classes: tuple
    opposite: bool
    dependent: bool
    nu: int


class HornConfig:
    """A Horn system ``(B, c)`` in falling-factorial form.

    ``c`` may be ``None``, in which case a generic vector is drawn from
    ``seed``.  Square ``B`` (n = 2) is admitted without the column-sum check.
    """

    def __init__(self, B, c=None, seed: int = 0, convention: str = "falling"):
        B = B if isinstance(B, IntMatrix) else IntMatrix(B)
        if B.cols != 2:
            raise InvariantError("B has two columns", f"got {B.cols}")
        if B.rows < 2:
            raise InvariantError("n >= 2", f"got {B.rows} rows")
        if c is not None and len(c) != B.rows:
            raise InvariantError("parameter length", f"expected {B.rows} entries, got {len(c)}")
        self.input_B = B
        self.input_c = None if c is None else tuple(Fraction(x) for x in c)
        self.convention = convention
        B, c = to_falling(B, self.input_c, convention)
        if B.rank() != 2:
            raise InvariantError("rank(B) = 2", "rank-deficient B")
        if B.rows > 2 and any(sum(B.column(j)) != 0 for j in range(2)):
            raise InvariantError("column sums", "columns of B must sum to zero")
        self.B = B
        self.seed = seed
        self.generic = c is None
        if c is None:
            c = sample_generic_c(B.rows, random.Random(seed))
        self.c = tuple(c)

    @property
    def n(self) -> int:
        return self.B.rows

    @cached_property
    def A(self):
        return gale_dual(self.B) if self.n > 2 else None

    @cached_property
    def g(self) -> int:
        return gcd_maximal_minors(self.B)

    @cached_property
    def d(self) -> tuple:
        return tuple(sum(x for x in self.B.column(j) if x > 0) for j in range(2))

    def rows(self):
        return [self.B.row(i) for i in range(self.n)]

    def with_c(self, c) -> "HornConfig":
        """Copy with a new falling-form parameter vector."""
        cfg = HornConfig(self.B, c)
        cfg.seed = self.seed
        return cfg

    def resample(self, attempt: int) -> "HornConfig":
        """Fresh generic parameters, derived deterministically from seed and attempt."""
        rng = random.Random(f"{self.seed}:{attempt}")
        return self.with_c(sample_generic_c(self.n, rng))

    def __repr__(self):
        return f"HornConfig(B={self.B.tolist()}, c={[str(x) for x in self.c]})"


def index_table(B: IntMatrix) -> list:
    out = []
    for i, j in combinations(range(B.rows), 2):
        bi, bj = B.row(i), B.row(j)
        out.append(
            PairIndex(
                i, j,
                (quadrant_class(bi), quadrant_class(bj)),
                opposite_open(bi, bj),
                _dependent(bi, bj),
                index_nu(bi, bj),
            )
        )
    return out


@dataclass(frozen=True)
class RankReport:
    d1d2: int
    sum_dep_nu: int
    sum_indep_nu: int
    g: int
    vol_A: int
    rank: int
    identity_holds: bool
    nu_table: tuple = field(default=(), compare=False)


def _as_matrix(obj) -> IntMatrix:
    if isinstance(obj, HornConfig):
        return obj.B
    return obj if isinstance(obj, IntMatrix) else IntMatrix(obj)


def generic_rank(cfg) -> RankReport:
    """Generic rank from both sides of the degree identity.

    ``vol_A`` comes from ``(d1*d2 - sum of all indices) / g``; the identity
    ``d1 d2 - dep = g vol + indep`` is then checked as an independent sum.
    """
    B = _as_matrix(cfg)
    if B.rows <= 2:
        raise InvariantError("n > 2", "generic rank needs a Gale dual")
    if any(sum(B.column(j)) != 0 for j in range(2)):
        raise InvariantError("column sums", "columns of B must sum to zero")
    d1, d2 = (sum(x for x in B.column(j) if x > 0) for j in range(2))
    table = index_table(B)
    dep = sum(p.nu for p in table if p.dependent)
    indep = sum(p.nu for p in table if not p.dependent)
    g = gcd_maximal_minors(B)
    num = d1 * d2 - dep - indep
    if num <= 0 or num % g:
        raise NonIntegralVolume(f"(d1 d2 - sum nu)/g = {num}/{g} is not a positive integer")
    vol = num // g
    left = d1 * d2 - dep
    right = g * vol + indep
    if left != right:
        raise IdentityViolation(f"{left} != {right}")
    return RankReport(d1 * d2, dep, indep, g, vol, left, True, tuple(table))


def puiseux_rank(cfg) -> int:
    B = _as_matrix(cfg)
    return sum(p.nu for p in index_table(B) if not p.dependent)


def alpha_vector(cfg) -> tuple:
    B = _as_matrix(cfg)
    alpha = [0] * B.rows
    for i in range(B.rows):
        if B[i, 0] > 0:
            alpha[i] = max(
                (index_nu(B.row(i), B.row(j)) for j in range(B.rows) if j != i),
                default=0,
            )
    return tuple(alpha)


def artinian_criterion(cfg) -> bool:
    """True iff no linearly dependent pair of rows sits in opposite open quadrants."""
    B = _as_matrix(cfg)
    return not any(p.opposite and p.dependent for p in index_table(B))


def dependent_opposite_pairs(cfg) -> list:
    return [(p.i, p.j) for p in index_table(_as_matrix(cfg)) if p.opposite and p.dependent]


def independent_opposite_pairs(cfg) -> list:
    return [(p.i, p.j) for p in index_table(_as_matrix(cfg)) if p.opposite and not p.dependent]
