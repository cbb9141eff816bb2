"""Exact classification of Schwarz-parametrizable Chazy XII solutions.

Everything in this module is exact rational arithmetic.  The central
object is the algebraic system u1..u5 in the parameters
(alpha, beta, gamma, alpha1, beta1, J): a parameter set defines a
triangle-function solution of y''' - 2yy'' + 3y'^2 = K(6y'-y^2)^2
(with 108K = 12 - J) exactly when all five quantities vanish.

The module provides

- the system itself (eval_u), generic over the coefficient field, so the
  same code runs on concrete Fractions and on rational functions of k;
- an exhaustive search over the admissible grid
  alpha, beta, gamma in {0} u {1/n : n <= denom_bound},
  alpha1, beta1 rational in [0,1] with denominator <= denom_bound,
  organized as a lossless case split on the two diagonal equations
  u5 = A(JA - 12 alpha1^2) and u1 = B(JB - 12 beta1^2);
- the twelve k-parametric solution families (the classification table),
  certified symbolically over Q(k);
- re-proofs of the three no-go lemmas by the same exhaustive search.

Search completeness is claimed only within the denominator bound.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .exact import RatK, solve_ratk_equals

F = Fraction
ZERO, ONE = F(0), F(1)
HALF, THIRD, SIXTH, TWOTHIRD = F(1, 2), F(1, 3), F(1, 6), F(2, 3)


class SingularK(ValueError):
    """The Chazy parameter K is undefined at this k."""


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class TriangleParams:
    """Exponent differences (angles / pi) at the singular points 0, 1, oo."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, F(getattr(self, name)))

    @classmethod
    def validated(cls, alpha, beta, gamma) -> "TriangleParams":
        """Construction restricted to the admissible grid {0} u {1/n}."""
        t = cls(alpha, beta, gamma)
        for v in t.as_tuple():
            if not (v == 0 or v.numerator == 1):
                raise ValueError(f"{v} is not 0 or a reciprocal integer")
        return t

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)

    @property
    def angle_sum(self) -> Fraction:
        return self.alpha + self.beta + self.gamma

    @property
    def is_admissible(self) -> bool:
        return self.angle_sum < 1 and all(v >= 0 for v in self.as_tuple())

    def permuted(self, perm) -> "TriangleParams":
        t = self.as_tuple()
        return TriangleParams(*(t[i] for i in perm))


@dataclass(frozen=True)
class WeightParams:
    """Convex weights (alpha1, beta1, gamma1); y = 6(beta1 w1 + alpha1 w2 + gamma1 w3)."""

    alpha1: Fraction
    beta1: Fraction
    gamma1: Fraction

    def __post_init__(self):
        for name in ("alpha1", "beta1", "gamma1"):
            object.__setattr__(self, name, F(getattr(self, name)))
        if self.alpha1 + self.beta1 + self.gamma1 != 1:
            raise ValueError("weights must sum to 1 exactly")
        if not all(0 <= v <= 1 for v in self.as_tuple()):
            raise ValueError("weights must lie in [0, 1]")

    @classmethod
    def from_pair(cls, alpha1, beta1) -> "WeightParams":
        a1, b1 = F(alpha1), F(beta1)
        return cls(a1, b1, 1 - a1 - b1)

    def as_tuple(self):
        return (self.alpha1, self.beta1, self.gamma1)

    def coefficients(self):
        """(a1, a2, a3) with y = a1 w1 + a2 w2 + a3 w3; a1+a2+a3 = 6."""
        return (6 * self.beta1, 6 * self.alpha1, 6 * self.gamma1)

    def permuted(self, perm) -> "WeightParams":
        t = self.as_tuple()
        return WeightParams(*(t[i] for i in perm))


@dataclass(frozen=True)
class AbcCoefficients:
    A: object
    B: object
    C: object

    @property
    def D(self):
        return self.A + self.B + self.C


def abc_from_params(t, w) -> AbcCoefficients:
    """A = alpha1^2 - alpha^2, B = beta1^2 - beta^2, C = gamma1^2 - A - B - gamma^2."""
    A = w.alpha1 * w.alpha1 - t.alpha * t.alpha
    B = w.beta1 * w.beta1 - t.beta * t.beta
    C = w.gamma1 * w.gamma1 - A - B - t.gamma * t.gamma
    return AbcCoefficients(A, B, C)


def eval_u(t, w, J):
    """The five coefficients u1..u5; all zero iff the curvature condition
    V4 = J V2^2 holds identically in s.  Field-generic."""
    return eval_u_raw(t.alpha, t.beta, t.gamma, w.alpha1, w.beta1, J)


def determine_j(alpha, beta, gamma, alpha1, beta1):
    """Solve the system (u) for J at fixed parameters.

    Each u_i is linear in J; returns ("unique", J) when a single J kills
    all five, ("any", None) when every u_i vanishes identically in J, and
    ("none", None) when no J works.
    """
    gamma1 = 1 - alpha1 - beta1
    A = alpha1 * alpha1 - alpha * alpha
    B = beta1 * beta1 - beta * beta
    C = gamma1 * gamma1 - A - B - gamma * gamma
    base = eval_u_raw(alpha, beta, gamma, alpha1, beta1, ZERO)
    slope = (B * B, 2 * B * C, 2 * A * B + C * C, 2 * A * C, A * A)
    j_val = None
    for p, q in zip(slope, base):
        if p == 0:
            if q != 0:
                return ("none", None)
        else:
            j = -F(q) / p
            if j_val is None:
                j_val = j
            elif j != j_val:
                return ("none", None)
    if j_val is None:
        return ("any", None)
    if any(x != 0 for x in eval_u_raw(alpha, beta, gamma, alpha1, beta1, j_val)):
        return ("none", None)
    return ("unique", j_val)


def eval_u_raw(alpha, beta, gamma, alpha1, beta1, J):
    gamma1 = 1 - alpha1 - beta1
    A = alpha1 * alpha1 - alpha * alpha
    B = beta1 * beta1 - beta * beta
    C = gamma1 * gamma1 - A - B - gamma * gamma
    u1 = J * B * B - 12 * B * beta1 * beta1
    u2 = 2 * J * B * C - 4 * (
        (1 - alpha1) * (1 - 6 * beta1) * B
        + F(1, 2) * (1 - 2 * beta1) * (1 - 3 * beta1) * C
    )
    u3 = J * (2 * A * B + C * C) - 4 * (
        (2 - 3 * beta1) * (1 - beta1) * A
        + (2 - 3 * alpha1) * (1 - alpha1) * B
        + F(1, 2)
        * ((2 - 3 * beta1) * (1 - 2 * alpha1) + (2 - 3 * alpha1) * (1 - 2 * beta1))
        * C
    )
    u4 = 2 * J * A * C - 4 * (
        (1 - beta1) * (1 - 6 * alpha1) * A
        + F(1, 2) * (1 - 2 * alpha1) * (1 - 3 * alpha1) * C
    )
    u5 = J * A * A - 12 * A * alpha1 * alpha1
    return (u1, u2, u3, u4, u5)


# ---------------------------------------------------------------------------
# the classification table (k-parametric families)


@dataclass(frozen=True)
class CaseRow:
    """One family: triangle pattern, weights, K, J and residues over Q(k)."""

    label: str
    triangle: tuple  # (RatK, RatK, RatK)
    weights: WeightParams
    K: RatK
    J: RatK
    residues: tuple  # (RatK, RatK, RatK)
    rescale: tuple | None = None  # (base label, m): this row at k = base at m*k

    def triangle_at(self, k) -> TriangleParams:
        return TriangleParams(*(p(k) for p in self.triangle))

    def K_at(self, k) -> Fraction:
        try:
            return self.K(k)
        except ZeroDivisionError:
            raise SingularK(f"K undefined at k={k} for row {self.label}") from None

    def J_at(self, k) -> Fraction:
        try:
            return self.J(k)
        except ZeroDivisionError:
            raise SingularK(f"J undefined at k={k} for row {self.label}") from None

    def residues_at(self, k):
        self.K_at(k)
        return tuple(r(k) for r in self.residues)

    def admissible_at(self, k) -> bool:
        try:
            t = self.triangle_at(k)
            J = self.J_at(k)
        except (SingularK, ZeroDivisionError):
            return False
        return (
            t.is_admissible
            and all(0 < v < 1 for v in t.as_tuple())
            and J not in (0, 12)
        )

    def max_denominator_at(self, k) -> int:
        t = self.triangle_at(k)
        vals = t.as_tuple() + self.weights.as_tuple()
        return max(v.denominator for v in vals)


def _krow(label, tri, a1, b1, Knum, Kden, res, rescale=None) -> CaseRow:
    triangle = tuple(RatK.of(n, d) for n, d in tri)
    K = RatK.of(Knum, Kden)
    J = RatK.const(12) - RatK.const(108) * K
    residues = tuple(RatK.of(n, d) for n, d in res)
    return CaseRow(
        label=label,
        triangle=triangle,
        weights=WeightParams.from_pair(a1, b1),
        K=K,
        J=J,
        residues=residues,
        rescale=rescale,
    )


_CONST = lambda v: ([v], [1])  # noqa: E731
_OVERK = lambda c: ([c], [0, 1])  # noqa: E731  c/k
_R_HALF = ([-6, 1], [2])  # (k-6)/2
_R_KM3 = ([-3, 1], [1])  # k-3
_R_3K = ([-6, 3], [2])  # (3k-6)/2
_R_2K = ([-3, 2], [1])  # 2k-3


@lru_cache(maxsize=1)
def family_catalog() -> tuple:
    """The twelve solution families, in table order."""
    rows = (
        _krow("1(a)", (_CONST(HALF), _CONST(THIRD), _OVERK(1)), HALF, THIRD,
              [4], [36, 0, -1], (_CONST(0), _CONST(0), _R_HALF)),
        _krow("1(b)", (_CONST(THIRD), _CONST(THIRD), _OVERK(2)), THIRD, THIRD,
              [4], [36, 0, -1], (_CONST(0), _CONST(0), _R_HALF)),
        _krow("1(b)*", (_CONST(THIRD), _CONST(THIRD), _OVERK(1)), THIRD, THIRD,
              [1], [9, 0, -1], (_CONST(0), _CONST(0), _R_KM3), ("1(b)", 2)),
        _krow("2(a)", (_CONST(HALF), _OVERK(1), _OVERK(2)), HALF, SIXTH,
              [4], [36, 0, -1], (_CONST(0), _R_HALF, _R_HALF)),
        _krow("2(a)*", (_CONST(HALF), ([1], [0, 2]), _OVERK(1)), HALF, SIXTH,
              [1], [9, 0, -1], (_CONST(0), _R_KM3, _R_KM3), ("2(a)", 2)),
        _krow("2(b)", (_CONST(THIRD), _OVERK(1), _OVERK(3)), THIRD, SIXTH,
              [4], [36, 0, -1], (_CONST(0), _R_HALF, _R_HALF)),
        _krow("2(b)*", (_CONST(THIRD), ([1], [0, 3]), _OVERK(1)), THIRD, SIXTH,
              [4], [36, 0, -9], (_CONST(0), _R_3K, _R_3K), ("2(b)", 3)),
        _krow("2(c)", (_CONST(TWOTHIRD), _OVERK(1), _OVERK(1)), TWOTHIRD, SIXTH,
              [4], [36, 0, -1], (_CONST(0), _R_HALF, _R_HALF)),
        _krow("3(a)", (_OVERK(1), _OVERK(1), _OVERK(4)), SIXTH, SIXTH,
              [4], [36, 0, -1], (_R_HALF, _R_HALF, _R_HALF)),
        _krow("3(a)*", (([1], [0, 4]), ([1], [0, 4]), _OVERK(1)), SIXTH, SIXTH,
              [1], [9, 0, -4], (_R_2K, _R_2K, _R_2K), ("3(a)", 4)),
        _krow("3(b)", (_OVERK(2), _OVERK(2), _OVERK(2)), THIRD, THIRD,
              [4], [36, 0, -1], (_R_HALF, _R_HALF, _R_HALF)),
        _krow("3(b)*", (_OVERK(1), _OVERK(1), _OVERK(1)), THIRD, THIRD,
              [1], [9, 0, -1], (_R_KM3, _R_KM3, _R_KM3), ("3(b)", 2)),
    )
    return rows


def row_by_label(label: str) -> CaseRow:
    for row in family_catalog():
        if row.label == label:
            return row
    raise KeyError(f"unknown case label {label!r}")


def residues(row: CaseRow, k: int):
    """(Res at z(0), z(1), z(oo)) for the row at integer k; SingularK if
    the Chazy parameter is undefined there."""
    return row.residues_at(k)


def gdh_combination(row: CaseRow):
    """Coefficients (a1, a2, a3) of y = a1 w1 + a2 w2 + a3 w3."""
    return row.weights.coefficients()


def certify_catalog() -> dict:
    """Symbolic verification of every family over Q(k).

    Checks, per row: u1..u5 = 0 identically, 108K + J = 12, the residue
    columns equal 3(alpha1/alpha - 1) etc., and the rescaling relation of
    the asterisk rows.  Raises AssertionError on any failure.
    """
    kk = RatK.k()
    report = {}
    for row in family_catalog():
        a, b, g = row.triangle
        a1, b1, g1 = (RatK.const(v) for v in row.weights.as_tuple())
        u = eval_u_raw(a, b, g, RatK.const(row.weights.alpha1),
                       RatK.const(row.weights.beta1), row.J)
        assert all(x.is_zero() for x in u), f"{row.label}: u != 0 over Q(k)"
        assert (RatK.const(108) * row.K + row.J) == RatK.const(12), row.label
        expected = (3 * (a1 / a - 1), 3 * (b1 / b - 1), 3 * (g1 / g - 1))
        for got, want in zip(row.residues, expected):
            assert got == want, f"{row.label}: residue column mismatch"
        if row.rescale is not None:
            base_label, m = row.rescale
            base = row_by_label(base_label)
            # this row at k agrees with the base row at m*k
            subs = lambda r: RatK.of(  # noqa: E731
                [c * m**i for i, c in enumerate(r.num)],
                [c * m**i for i, c in enumerate(r.den)],
            )
            assert subs(base.K) == row.K, f"{row.label}: rescale K mismatch"
            for p_base, p_row in zip(base.triangle, row.triangle):
                assert subs(p_base) == p_row, f"{row.label}: rescale triangle"
        report[row.label] = "ok"
    return report


# ---------------------------------------------------------------------------
# exhaustive exact search


@dataclass(frozen=True)
class ExactSolution:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    alpha1: Fraction
    beta1: Fraction
    J: Fraction

    @property
    def gamma1(self) -> Fraction:
        return 1 - self.alpha1 - self.beta1

    def key(self):
        return (self.alpha, self.beta, self.gamma, self.alpha1, self.beta1, self.J)

    def params(self):
        return (self.alpha, self.beta, self.gamma,
                self.alpha1, self.beta1, self.gamma1)


def _grid(bound: int):
    """{0} u {1/n : n <= bound}, ascending."""
    return [ZERO] + [F(1, n) for n in range(bound, 0, -1)]


def _farey(bound: int):
    vals = {F(0), F(1)}
    for q in range(2, bound + 1):
        for p in range(1, q):
            vals.add(F(p, q))
    return sorted(vals)


def _sqrt_on_grid(x: Fraction, bound: int):
    """sqrt(x) when it lies on the grid {0} u {1/n : n <= bound}, else None."""
    if x == 0:
        return ZERO
    if x < 0 or x.numerator != 1:
        return None
    m = isqrt(x.denominator)
    if m * m == x.denominator and m <= bound:
        return F(1, m)
    return None


def _finalize(candidates, bound, out, rejected, require_j=None):
    """Full exact verification of branch-generated candidates."""
    for alpha, beta, gamma, a1, b1, J in candidates:
        if not (0 <= a1 <= 1 and 0 <= b1 <= 1 and a1 + b1 <= 1):
            continue
        if a1.denominator > bound or b1.denominator > bound:
            continue
        if not (0 <= alpha <= 1 and 0 <= beta <= 1 and 0 <= gamma <= 1):
            continue
        if require_j is None and J in (0, 12):
            continue
        if require_j is not None and J != require_j:
            continue
        u = eval_u_raw(alpha, beta, gamma, a1, b1, J)
        if any(x != 0 for x in u):
            continue  # branch overshoot; not a solution
        sol = ExactSolution(alpha, beta, gamma, a1, b1, J)
        if alpha + beta + gamma < 1:
            out.add(sol)
        else:
            rejected.append((sol, "alpha+beta+gamma >= 1"))


def _search_branch_I(grid, bound, out, rejected):
    """A = 0 and B = 0 (alpha = alpha1, beta = beta1)."""
    # C != 0 forces alpha1, beta1 in {1/2, 1/3} via u4, u2; then u3 fixes J
    cands = []
    for a1 in (HALF, THIRD):
        for b1 in (HALF, THIRD):
            if a1 + b1 > 1:
                continue
            g1 = 1 - a1 - b1
            bracket = (2 - 3 * b1) * (1 - 2 * a1) + (2 - 3 * a1) * (1 - 2 * b1)
            for gamma in grid:
                C = g1 * g1 - gamma * gamma
                if C == 0:
                    continue
                J = 2 * bracket / C
                cands.append((a1, b1, gamma, a1, b1, J))
    _finalize(cands, bound, out, rejected)
    # C = 0 means gamma = gamma1: solves (u) for every J, but the angle sum
    # is exactly 1 -> never admissible; record for the report
    for a1 in grid:
        for b1 in grid:
            g1 = 1 - a1 - b1
            if g1 < 0 or not (g1 == 0 or g1.numerator == 1) or g1.denominator > bound:
                continue
            sol = ExactSolution(a1, b1, g1, a1, b1, F(1))  # J arbitrary
            rejected.append((sol, "A=B=C=0: any J, alpha+beta+gamma = 1"))


def _branch_II_candidates(grid, farey, bound):
    """A = 0, B != 0, J = 12 beta1^2 / B.  Yields candidate tuples."""
    # u4 = -2(1-2a1)(1-3a1) C = 0:  a1 in {1/2, 1/3}  or  C = 0
    for a1 in (HALF, THIRD):
        for beta in grid:
            for b1 in farey:
                if b1 == 0:
                    continue  # J = 0 handled by the dedicated search
                B = b1 * b1 - beta * beta
                if B == 0:
                    continue
                J = 12 * b1 * b1 / B
                g1 = 1 - a1 - b1
                if g1 < 0:
                    continue
                if b1 != SIXTH:
                    # u2 = 2(6b1-1)[(b1+1)C + 2(1-a1)B] = 0 pins C
                    C = -2 * (1 - a1) * B / (1 + b1)
                    gamma2 = g1 * g1 - B - C
                    gamma = _sqrt_on_grid(gamma2, bound)
                    if gamma is not None:
                        yield (a1, beta, gamma, a1, b1, J)
                else:
                    # u2 vanishes identically; gamma free on the grid
                    for gamma in grid:
                        yield (a1, beta, gamma, a1, b1, J)
    # C = 0 sub-branch with a1 not in {1/2, 1/3}: u2 forces a1=1 or b1=1/6,
    # then u3 forces a1 in {2/3, 1}; a1=1 implies g1<0 except b1=0 (J=0)
    a1 = TWOTHIRD
    b1 = SIXTH
    for beta in grid:
        B = b1 * b1 - beta * beta
        if B == 0:
            continue
        J = 12 * b1 * b1 / B
        g1 = 1 - a1 - b1
        gamma2 = g1 * g1 - B
        gamma = _sqrt_on_grid(gamma2, bound)
        if gamma is not None:
            yield (a1, beta, gamma, a1, b1, J)


def _branch_III_candidates(grid, farey, bound):
    """A != 0, B = 0, J = 12 alpha1^2 / A (mirror of branch II)."""
    for b1 in (HALF, THIRD):
        for alpha in grid:
            for a1 in farey:
                if a1 == 0:
                    continue
                A = a1 * a1 - alpha * alpha
                if A == 0:
                    continue
                J = 12 * a1 * a1 / A
                g1 = 1 - a1 - b1
                if g1 < 0:
                    continue
                if a1 != SIXTH:
                    C = -2 * (1 - b1) * A / (1 + a1)
                    gamma2 = g1 * g1 - A - C
                    gamma = _sqrt_on_grid(gamma2, bound)
                    if gamma is not None:
                        yield (alpha, b1, gamma, a1, b1, J)
                else:
                    for gamma in grid:
                        yield (alpha, b1, gamma, a1, b1, J)
    b1 = TWOTHIRD
    a1 = SIXTH
    for alpha in grid:
        A = a1 * a1 - alpha * alpha
        if A == 0:
            continue
        J = 12 * a1 * a1 / A
        g1 = 1 - a1 - b1
        gamma2 = g1 * g1 - A
        gamma = _sqrt_on_grid(gamma2, bound)
        if gamma is not None:
            yield (alpha, b1, gamma, a1, b1, J)


def _branch_IV_candidates(grid, farey, bound):
    """A != 0 and B != 0: JA = 12 alpha1^2, JB = 12 beta1^2.

    Dividing the two relations gives beta1/beta = alpha1/alpha (alpha,
    beta > 0 here, else J = 12).  The u2/u4 factorizations then force
    alpha = beta unless one of the weights is 1/6.
    """
    sixth = SIXTH
    # (iv) both weights != 1/6  ->  alpha = beta, alpha1 = beta1, C pinned
    for alpha in grid:
        if alpha == 0:
            continue
        for a1 in farey:
            if a1 == 0 or a1 == sixth or a1 == alpha or a1 > HALF:
                continue  # a1 > 1/2 makes gamma1 = 1 - 2 a1 < 0
            A = a1 * a1 - alpha * alpha
            J = 12 * a1 * a1 / A
            C = -2 * (1 - a1) * A / (1 + a1)
            g1 = 1 - 2 * a1
            gamma2 = g1 * g1 - 2 * A - C
            gamma = _sqrt_on_grid(gamma2, bound)
            if gamma is not None:
                yield (alpha, alpha, gamma, a1, a1, J)
    # beta1 = 1/6, alpha1 != 1/6:  beta = alpha/(6 alpha1), C from u4
    for alpha in grid:
        if alpha == 0:
            continue
        for a1 in farey:
            if a1 == 0 or a1 == sixth or a1 == alpha:
                continue
            beta = alpha / (6 * a1)
            if beta.numerator != 1 or beta.denominator > bound:
                continue
            A = a1 * a1 - alpha * alpha
            J = 12 * a1 * a1 / A
            C = -2 * (1 - sixth) * A / (1 + a1)
            g1 = 1 - a1 - sixth
            if g1 < 0:
                continue
            gamma2 = g1 * g1 - A - (sixth * sixth - beta * beta) - C
            gamma = _sqrt_on_grid(gamma2, bound)
            if gamma is not None:
                yield (alpha, beta, gamma, a1, sixth, J)
    # alpha1 = 1/6, beta1 != 1/6:  alpha = beta/(6 beta1), C from u2
    for beta in grid:
        if beta == 0:
            continue
        for b1 in farey:
            if b1 == 0 or b1 == sixth or b1 == beta:
                continue
            alpha = beta / (6 * b1)
            if alpha.numerator != 1 or alpha.denominator > bound:
                continue
            B = b1 * b1 - beta * beta
            J = 12 * b1 * b1 / B
            C = -2 * (1 - sixth) * B / (1 + b1)
            g1 = 1 - sixth - b1
            if g1 < 0:
                continue
            gamma2 = g1 * g1 - (sixth * sixth - alpha * alpha) - B - C
            gamma = _sqrt_on_grid(gamma2, bound)
            if gamma is not None:
                yield (alpha, beta, gamma, sixth, b1, J)
    # alpha1 = beta1 = 1/6:  alpha = beta, u2/u4 vanish, gamma free
    for alpha in grid:
        if alpha == 0:
            continue
        A = sixth * sixth - alpha * alpha
        if A == 0:
            continue
        J = 12 * sixth * sixth / A
        for gamma in grid:
            yield (alpha, alpha, gamma, sixth, sixth, J)


@lru_cache(maxsize=4)
def search_solutions(denom_bound: int) -> tuple:
    """All admissible exact solutions of (u) with J not in {0, 12} on the
    grid of the given denominator bound, sorted canonically."""
    if denom_bound < 12:
        raise ValueError("denom_bound must be >= 12")
    grid = _grid(denom_bound)
    farey = _farey(denom_bound)
    out: set = set()
    rejected: list = []
    _search_branch_I(grid, denom_bound, out, rejected)
    _finalize(_branch_II_candidates(grid, farey, denom_bound), denom_bound, out, rejected)
    _finalize(_branch_III_candidates(grid, farey, denom_bound), denom_bound, out, rejected)
    _finalize(_branch_IV_candidates(grid, farey, denom_bound), denom_bound, out, rejected)
    return tuple(sorted(out, key=ExactSolution.key))


# --- the J = 0 search (Lemma 1) --------------------------------------------


@dataclass
class ProofReport:
    statement: str
    denom_bound: int
    admissible: list
    rejected: list
    checked: int
    passed: bool

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.statement} (bound {self.denom_bound}: "
            f"{len(self.admissible)} admissible, {len(self.rejected)} rejected "
            f"grid solutions, {self.checked} candidates examined)"
        )


def _j0_solutions(denom_bound: int):
    """All grid solutions of (u) at J = 0, with (cond)-rejection reasons.

    At J = 0 the diagonal equations force (A=0 or alpha1=0) and
    (B=0 or beta1=0); each branch collapses the remaining equations.
    """
    grid = _grid(denom_bound)
    sols = []
    checked = 0

    def consider(alpha, beta, gamma, a1, b1, reason_hint=None):
        nonlocal checked
        checked += 1
        if not (0 <= a1 <= 1 and 0 <= b1 <= 1 and a1 + b1 <= 1):
            return
        u = eval_u_raw(alpha, beta, gamma, a1, b1, ZERO)
        if any(x != 0 for x in u):
            return
        sol = ExactSolution(alpha, beta, gamma, a1, b1, ZERO)
        if alpha + beta + gamma < 1:
            sols.append((sol, None))
        else:
            sols.append((sol, reason_hint or "alpha+beta+gamma >= 1"))

    # A = B = 0 (alpha = alpha1, beta = beta1)
    for a1 in grid:
        for b1 in grid:
            if a1 + b1 > 1:
                continue
            g1 = 1 - a1 - b1
            # C = 0 requires gamma = gamma1 on the grid
            if g1 == 0 or g1.numerator == 1:
                consider(a1, b1, g1, a1, b1, "A=B=C=0 forces angle sum 1")
            # C != 0 requires {alpha1, beta1} = {1/2, 1/2}
            if a1 == HALF and b1 == HALF:
                for gamma in grid:
                    if gamma != g1:
                        consider(a1, b1, gamma, a1, b1, "alpha+beta = 1")
    # A = 0, beta1 = 0 (B != 0): u-system forces alpha1 in {1/2, 1}
    for a1 in (HALF, ONE):
        for beta in grid:
            if beta == a1:  # B = 0 already handled
                continue
            B = -beta * beta
            C = -2 * (1 - a1) * B
            g1 = 1 - a1
            gamma2 = g1 * g1 - B - C
            gamma = _sqrt_on_grid(gamma2, denom_bound)
            if gamma is not None:
                consider(a1, beta, gamma, a1, ZERO,
                         "alpha = gamma = 1/2" if a1 == HALF else "alpha = 1")
    # alpha1 = 0, B = 0 (mirror)
    for b1 in (HALF, ONE):
        for alpha in grid:
            if alpha == b1:
                continue
            A = -alpha * alpha
            C = -2 * (1 - b1) * A
            g1 = 1 - b1
            gamma2 = g1 * g1 - A - C
            gamma = _sqrt_on_grid(gamma2, denom_bound)
            if gamma is not None:
                consider(alpha, b1, gamma, ZERO, b1,
                         "beta = gamma = 1/2" if b1 == HALF else "beta = 1")
    # alpha1 = beta1 = 0: u2, u4 force C = -2B = -2A, then gamma = 1
    for alpha in grid:
        beta = alpha
        A = -alpha * alpha
        gamma2 = 1 - A - A - (-2 * A)  # gamma1^2 - A - B - C with C = -2A
        gamma = _sqrt_on_grid(gamma2, denom_bound)
        if gamma is not None:
            consider(alpha, beta, gamma, ZERO, ZERO, "gamma = 1 (A+B+C = 0)")
    return sols, checked


def check_lemma1(denom_bound: int) -> ProofReport:
    """No admissible solution of (u) exists at J = 0 within the bound."""
    if denom_bound < 12:
        raise ValueError("denom_bound must be >= 12")
    sols, checked = _j0_solutions(denom_bound)
    admissible = [s for s, reason in sols if reason is None]
    rejected = [(s, reason) for s, reason in sols if reason is not None]
    return ProofReport(
        statement="J=0 admits no admissible solution",
        denom_bound=denom_bound,
        admissible=admissible,
        rejected=rejected,
        checked=checked,
        passed=not admissible,
    )


def violates_interior(params) -> bool:
    """True if any of the six parameters leaves the open interval (0, 1)."""
    return any(not (0 < v < 1) for v in params)


def check_lemmas23(denom_bound: int) -> ProofReport:
    """Every admissible solution has alpha, beta, gamma nonzero and
    alpha1, beta1, gamma1 strictly inside (0, 1)."""
    sols = search_solutions(denom_bound)
    offenders = [s for s in sols if violates_interior(s.params())]
    return ProofReport(
        statement="admissible solutions have all six parameters in (0,1)",
        denom_bound=denom_bound,
        admissible=list(sols),
        rejected=[(s, "parameter on boundary") for s in offenders],
        checked=len(sols),
        passed=not offenders,
    )


# ---------------------------------------------------------------------------
# family matching and enumeration


_PERMS = tuple(itertools.permutations((0, 1, 2)))


def match_solution(sol: ExactSolution):
    """(label, perm, k) for every catalog family containing the solution."""
    matches = []
    tri = (sol.alpha, sol.beta, sol.gamma)
    wts = (sol.alpha1, sol.beta1, sol.gamma1)
    for row in family_catalog():
        want_w = row.weights.as_tuple()
        for perm in _PERMS:
            if tuple(wts[i] for i in perm) != want_w:
                continue
            ptri = tuple(tri[i] for i in perm)
            k_candidates = None
            ok = True
            for pat, val in zip(row.triangle, ptri):
                kind, ks = solve_ratk_equals(pat, val)
                if kind == "none" or (kind == "some" and not ks):
                    ok = False
                    break
                if kind == "some":
                    ks = {k for k in ks if k.denominator == 1 and k >= 1}
                    k_candidates = ks if k_candidates is None else (k_candidates & ks)
                    if not k_candidates:
                        ok = False
                        break
            if not ok or k_candidates is None:
                continue
            for k in k_candidates:
                if row.J_at(k) == sol.J:
                    matches.append((row.label, perm, int(k)))
    return matches


@dataclass
class EnumerationResult:
    k_min: int
    k_max: int
    denom_bound: int
    rows: list  # (CaseRow, k) emitted instances
    families_found: dict  # label -> sorted list of k hit by the search
    solutions: tuple
    unmatched: list  # solutions matching no family at any k
    missing: list  # (label, k) expected grid instances not found

    @property
    def complete(self) -> bool:
        return not self.unmatched and not self.missing


def _expected_grid_instance(row: CaseRow, k: int, bound: int) -> bool:
    """Should the search find this (family, k) directly on the grid?"""
    if not row.admissible_at(k):
        return False
    t = row.triangle_at(k)
    for v in t.as_tuple():
        if not (v == 0 or (v.numerator == 1 and v.denominator <= bound)):
            return False
    for v in row.weights.as_tuple():
        if v.denominator > bound:
            return False
    return True


def enumerate_rows(k_min: int, k_max: int, denom_bound: int) -> EnumerationResult:
    """Exhaustive search plus family matching over k in [k_min, k_max].

    Emits one (row, k) instance for every family admissible at k with all
    parameters within the denominator bound; verifies that every concrete
    grid solution belongs to a family and that every expected grid
    instance was discovered.
    """
    if not (7 <= k_min <= k_max):
        raise ValueError("need 7 <= k_min <= k_max")
    certify_catalog()
    sols = search_solutions(denom_bound)
    families_found: dict = {row.label: set() for row in family_catalog()}
    unmatched = []
    for sol in sols:
        matches = match_solution(sol)
        if not matches:
            unmatched.append(sol)
            continue
        for label, _perm, k in matches:
            families_found[label].add(k)
    missing = []
    rows = []
    for row in family_catalog():
        for k in range(k_min, k_max + 1):
            if _expected_grid_instance(row, k, denom_bound) and k not in families_found[row.label]:
                missing.append((row.label, k))
            if row.admissible_at(k) and row.max_denominator_at(k) <= denom_bound:
                rows.append((row, k))
    return EnumerationResult(
        k_min=k_min,
        k_max=k_max,
        denom_bound=denom_bound,
        rows=rows,
        families_found={lbl: sorted(ks) for lbl, ks in families_found.items()},
        solutions=sols,
        unmatched=unmatched,
        missing=missing,
    )


# ---------------------------------------------------------------------------
# emission


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def row_record(row: CaseRow, k: int) -> dict:
    """JSON record for one (family, k) instance."""
    t = row.triangle_at(k)
    w = row.weights
    K = row.K_at(k)
    J = row.J_at(k)
    r0, r1, rinf = row.residues_at(k)
    return {
        "label": row.label,
        "k": k,
        "alpha": _frac_str(t.alpha),
        "beta": _frac_str(t.beta),
        "gamma": _frac_str(t.gamma),
        "alpha1": _frac_str(w.alpha1),
        "beta1": _frac_str(w.beta1),
        "gamma1": _frac_str(w.gamma1),
        "K_num": K.numerator,
        "K_den": K.denominator,
        "J_num": J.numerator,
        "J_den": J.denominator,
        "res0": _frac_str(r0),
        "res1": _frac_str(r1),
        "resinf": _frac_str(rinf),
    }


def records_json(result: EnumerationResult) -> str:
    records = [row_record(row, k) for row, k in result.rows]
    return json.dumps(records, indent=1)
