"""Complex Gamma and Gauss hypergeometric functions.

Scalar binary64 routines used by the conformal map and the solution
evaluators: a Lanczos Gamma with the reflection formula, the 2F1
Maclaurin series with compensated summation, and the classical
transformations (Pfaff, Euler, the s -> 1-s and s -> 1/s connection
formulas with Gamma prefactors).  Derivatives of 2F1 come from the
contiguous shift (first order) and from the hypergeometric ODE solved
for chi'' (higher orders), never from finite differences.

All powers are principal, w**p = exp(p*Log w); on the negative real
axis the limit from above is used (arguments with a -0.0 imaginary part
are normalized to +0.0).

The module is pure: every function depends only on its arguments and the
process-wide precision mode (see :mod:`chazylab.precision`).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .precision import extended_active, get_precision

__all__ = [
    "SpecfunError",
    "PoleAtNonPositiveInteger",
    "DegenerateConnection",
    "CutEvaluation",
    "SeriesDivergence",
    "HypTriple",
    "principal_power",
    "gamma",
    "rgamma",
    "hyp2f1",
    "hyp2f1_deriv",
    "hyp2f1_jet",
    "pfaff_transform",
    "euler_transform",
]


class SpecfunError(ValueError):
    """Base class for special-function domain errors."""


class PoleAtNonPositiveInteger(SpecfunError):
    pass


class DegenerateConnection(SpecfunError):
    """A needed connection formula has an integer parameter difference."""


class CutEvaluation(SpecfunError):
    """Evaluation requested on the branch cut [1, oo)."""


class SeriesDivergence(SpecfunError):
    """The 2F1 series failed to converge within the term cap."""


_TERM_CAP = 10_000
_REL_STOP = 1e-17
_CONSECUTIVE_SMALL = 3


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    raise TypeError(f"expected a rational parameter, got {type(x).__name__}")


@dataclass(frozen=True)
class HypTriple:
    """Rational hypergeometric parameters (a, b; c)."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))
        object.__setattr__(self, "c", _as_fraction(self.c))
        if self.c.denominator == 1 and self.c <= 0:
            raise PoleAtNonPositiveInteger(
                f"c = {self.c} is zero or a negative integer"
            )

    def shifted(self, da: int, db: int, dc: int) -> "HypTriple":
        return HypTriple(self.a + da, self.b + db, self.c + dc)


def _coerce(s) -> complex:
    if isinstance(s, Fraction):
        z = complex(float(s), 0.0)
    else:
        z = complex(s)
    # limit from above on the negative real axis: kill -0.0 imaginary parts
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return z


def principal_power(w, p) -> complex:
    """w**p with the principal logarithm; -0.0j inputs take the upper limit."""
    w = _coerce(w)
    p = _coerce(p)
    if w == 0:
        if p.real > 0:
            return 0j
        raise SpecfunError("0 raised to a non-positive power")
    return cmath.exp(p * cmath.log(w))


# Lanczos approximation, g = 7, 9 terms.  Relative error ~1e-14 on the
# right half plane; the reflection formula covers Re(w) < 1/2.
_LANCZOS_G = 7.0
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(w: complex) -> bool:
    return w.imag == 0.0 and w.real <= 0.0 and w.real == int(w.real)


def gamma(w) -> complex:
    """Complex Gamma function."""
    w = _coerce(w)
    if _is_nonpositive_integer(w):
        raise PoleAtNonPositiveInteger(f"Gamma pole at {w}")
    if extended_active():
        with mpmath.workdps(get_precision().digits):
            return complex(mpmath.gamma(mpmath.mpc(w)))
    if w.real < 0.5:
        # reflection: Gamma(w) = pi / (sin(pi w) Gamma(1-w))
        return math.pi / (cmath.sin(math.pi * w) * gamma(1.0 - w))
    z = w - 1.0
    x = complex(_LANCZOS_P[0])
    for i, coeff in enumerate(_LANCZOS_P[1:], start=1):
        x += coeff / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


def rgamma(w) -> complex:
    """1/Gamma(w); returns 0 at the poles (used in connection prefactors)."""
    w = _coerce(w)
    if _is_nonpositive_integer(w):
        return 0j
    return 1.0 / gamma(w)


def _series(a: complex, b: complex, c: complex, s: complex) -> complex:
    """Maclaurin series of 2F1 with Kahan-compensated summation."""
    total = 1.0 + 0j
    comp = 0j
    term = 1.0 + 0j
    small = 0
    for m in range(_TERM_CAP):
        term = term * (a + m) * (b + m) / ((c + m) * (m + 1)) * s
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) < _REL_STOP * max(abs(total), 1e-300):
            small += 1
            if small >= _CONSECUTIVE_SMALL:
                return total
        else:
            small = 0
    raise SeriesDivergence(
        f"2F1 series did not converge at s={s!r} within {_TERM_CAP} terms"
    )


def _eval(p: HypTriple, s: complex, depth: int = 0) -> complex:
    a, b, c = complex(float(p.a)), complex(float(p.b)), complex(float(p.c))
    if s == 0:
        return 1.0 + 0j
    if s.imag == 0.0 and s.real >= 1.0:
        if s.real == 1.0:
            return _gauss_at_one(p)
        raise CutEvaluation(f"s={s.real} lies on the branch cut [1, oo)")

    r = abs(s)
    if r <= 0.6:
        return _series(a, b, c, s)
    w = s / (s - 1.0)

    def _pfaff():
        return principal_power(1.0 - s, -p.a) * _eval(
            HypTriple(p.a, p.c - p.b, p.c), w, depth + 1
        )

    # pick the strategy with the smallest effective series argument;
    # direct/Pfaff are preferred over connection formulas on near-ties
    # (no Gamma prefactors, no degenerate parameter differences)
    options = []
    if r < 1.0:
        options.append((r, 0, lambda: _series(a, b, c, s)))
    if abs(w) < 1.0 and depth < 3:
        options.append((abs(w), 0, _pfaff))
    if abs(1.0 - s) < 1.0:
        options.append((abs(1.0 - s), 1, lambda: _connection_one_minus(p, s)))
    if r > 1.0:
        options.append((1.0 / r, 1, lambda: _connection_inverse(p, s)))
    if not options:
        raise CutEvaluation(f"no convergent evaluation strategy at s={s!r}")
    best = min(o[0] for o in options)
    options.sort(key=lambda o: (o[1], o[0]))
    for arg, _, strategy in options:
        if arg <= max(1.25 * best, 0.7):
            return strategy()
    raise CutEvaluation(f"no convergent evaluation strategy at s={s!r}")


def _gauss_at_one(p: HypTriple) -> complex:
    cab = p.c - p.a - p.b
    if cab <= 0:
        raise CutEvaluation("2F1 at s=1 requires Re(c-a-b) > 0")
    return (
        gamma(float(p.c))
        * gamma(float(cab))
        * rgamma(float(p.c - p.a))
        * rgamma(float(p.c - p.b))
    )


def _connection_one_minus(p: HypTriple, s: complex) -> complex:
    cab = p.c - p.a - p.b
    if cab.denominator == 1:
        raise DegenerateConnection(
            f"c-a-b = {cab} is an integer; the s -> 1-s connection degenerates"
        )
    u = 1.0 - s
    f1 = _series(
        complex(float(p.a)), complex(float(p.b)), complex(float(p.a + p.b - p.c + 1)), u
    )
    f2 = _series(
        complex(float(p.c - p.a)),
        complex(float(p.c - p.b)),
        complex(float(1 + cab)),
        u,
    )
    g = gamma(float(p.c))
    t1 = g * gamma(float(cab)) * rgamma(float(p.c - p.a)) * rgamma(float(p.c - p.b))
    t2 = g * gamma(float(-cab)) * rgamma(float(p.a)) * rgamma(float(p.b))
    return t1 * f1 + t2 * principal_power(u, float(cab)) * f2


def _connection_inverse(p: HypTriple, s: complex) -> complex:
    ab = p.a - p.b
    if ab.denominator == 1:
        raise DegenerateConnection(
            f"a-b = {ab} is an integer; the s -> 1/s connection degenerates"
        )
    u = 1.0 / s
    f1 = _series(
        complex(float(p.a)),
        complex(float(p.a - p.c + 1)),
        complex(float(1 + ab)),
        u,
    )
    f2 = _series(
        complex(float(p.b)),
        complex(float(p.b - p.c + 1)),
        complex(float(1 - ab)),
        u,
    )
    g = gamma(float(p.c))
    t1 = g * gamma(float(-ab)) * rgamma(float(p.b)) * rgamma(float(p.c - p.a))
    t2 = g * gamma(float(ab)) * rgamma(float(p.a)) * rgamma(float(p.c - p.b))
    return t1 * principal_power(-s, -float(p.a)) * f1 + t2 * principal_power(
        -s, -float(p.b)
    ) * f2


def _eval_extended(p: HypTriple, s: complex) -> complex:
    if s.imag == 0.0 and s.real > 1.0:
        raise CutEvaluation(f"s={s.real} lies on the branch cut [1, oo)")
    with mpmath.workdps(get_precision().digits):
        a = mpmath.rational.mpq((p.a.numerator, p.a.denominator))
        b = mpmath.rational.mpq((p.b.numerator, p.b.denominator))
        c = mpmath.rational.mpq((p.c.numerator, p.c.denominator))
        return complex(mpmath.hyp2f1(a, b, c, mpmath.mpc(s)))


def hyp2f1(p: HypTriple, s) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; s) off the cut [1, oo)."""
    s = _coerce(s)
    if extended_active():
        return _eval_extended(p, s)
    return _eval(p, s)


def pfaff_transform(p: HypTriple, s) -> complex:
    """(1-s)^(-a) 2F1(a, c-b; c; s/(s-1)); equals hyp2f1(p, s)."""
    s = _coerce(s)
    if s == 1.0:
        raise CutEvaluation("Pfaff argument s/(s-1) undefined at s=1")
    w = s / (s - 1.0)
    return principal_power(1.0 - s, -float(p.a)) * hyp2f1(
        HypTriple(p.a, p.c - p.b, p.c), w
    )


def euler_transform(p: HypTriple, s) -> complex:
    """(1-s)^(c-a-b) 2F1(c-a, c-b; c; s); equals hyp2f1(p, s)."""
    s = _coerce(s)
    return principal_power(1.0 - s, float(p.c - p.a - p.b)) * hyp2f1(
        HypTriple(p.c - p.a, p.c - p.b, p.c), s
    )


def hyp2f1_jet(p: HypTriple, s, order: int) -> list[complex]:
    """[F, F', ..., F^(order)] at s, the tail via the ODE solved for chi''.

    s(s-1)F'' + [(a+b+1)s - c]F' + ab F = 0 differentiates to

        s(s-1)F^(m+2) + [m(2s-1) + (a+b+1)s - c]F^(m+1)
            + [m(m-1) + m(a+b+1) + ab]F^(m) = 0.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    s = _coerce(s)
    a, b, c = float(p.a), float(p.b), float(p.c)
    if s == 0:
        # Maclaurin coefficients: F^(m)(0) = (a)_m (b)_m / (c)_m
        out = [1.0 + 0j]
        val = 1.0 + 0j
        for m in range(order):
            val *= (a + m) * (b + m) / (c + m)
            out.append(val)
        return out
    out = [hyp2f1(p, s)]
    if order >= 1:
        lead = a * b / c
        out.append(lead * hyp2f1(p.shifted(1, 1, 1), s))
    if order >= 2 and s == 1.0:
        raise SpecfunError("derivative tower undefined at s=1")
    ss1 = s * (s - 1.0)
    for m in range(order - 1):
        p1 = m * (2.0 * s - 1.0) + (a + b + 1.0) * s - c
        p0 = m * (m - 1.0) + m * (a + b + 1.0) + a * b
        out.append(-(p1 * out[m + 1] + p0 * out[m]) / ss1)
    return out[: order + 1]


def hyp2f1_deriv(p: HypTriple, s, order: int) -> complex:
    """d^order/ds^order of 2F1 at s, for order in {1, 2, 3}."""
    if order not in (1, 2, 3):
        raise ValueError("order must be 1, 2 or 3")
    return hyp2f1_jet(p, s, order)[order]


def hyp2f1_jet_near_one(p: HypTriple, u, order: int) -> list[complex]:
    """[F, F', ..., F^(order)] with respect to s, at s = 1 - u.

    Built from the s -> 1-s connection formula so that u may be far below
    the floating-point spacing around 1 (u is the exact distance to the
    vertex).  Requires c - a - b not an integer.
    """
    cab = p.c - p.a - p.b
    if cab.denominator == 1:
        raise DegenerateConnection(
            f"c-a-b = {cab} is an integer; the s -> 1-s connection degenerates"
        )
    u = _coerce(u)
    q1 = HypTriple(p.a, p.b, 1 - cab)
    q2 = HypTriple(p.c - p.a, p.c - p.b, 1 + cab)
    g = gamma(float(p.c))
    t1 = g * gamma(float(cab)) * rgamma(float(p.c - p.a)) * rgamma(float(p.c - p.b))
    t2 = g * gamma(float(-cab)) * rgamma(float(p.a)) * rgamma(float(p.b))
    f1 = hyp2f1_jet(q1, u, order)
    f2 = hyp2f1_jet(q2, u, order)
    e = float(cab)
    # derivatives of u^cab: fall(m) * u^(cab - m)
    powd = []
    fall = 1.0
    for m in range(order + 1):
        powd.append(fall * principal_power(u, e - m))
        fall *= e - m
    out = []
    for m in range(order + 1):
        acc = t1 * f1[m]
        prod = 0j
        for i in range(m + 1):
            prod += math.comb(m, i) * powd[i] * f2[m - i]
        acc += t2 * prod
        out.append(acc * (-1.0) ** m)  # d/ds = -d/du
    return out
