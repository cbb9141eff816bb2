"""The Schwarz map z(s) and its inverse near the origin.

z(s) = chi2/chi1 is the ratio of the two canonical solutions of the
hypergeometric equation attached to a triangle (alpha, beta, gamma):

    chi1 = 2F1(a, b; c; s),   chi2 = s^(1-c) 2F1(a-c+1, b-c+1; 2-c; s),

with a = (1-alpha-beta-gamma)/2, b = (1-alpha-beta+gamma)/2, c = 1-alpha.
It maps the upper half s-plane onto a circular triangle with vertex
z(0) = 0, the 0-1 edge on the positive real axis, and interior angles
pi*alpha, pi*beta, pi*gamma.  This module computes the map, its
derivative through the Wronskian, the two far vertices by Gamma-product
formulas, the radius of the orthogonal (natural-barrier) circle by two
independent routes, and the exact Puiseux inversion s(z) at the origin.

Only the canonical normalization above is implemented; the general
Moebius freedom in the choice of solution pair is out of scope.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .classifier import TriangleParams
from .exact import ps_div, ps_mul, ps_pow_rational, ps_reversion, ps_trim
from .specfun import HypTriple, gamma, hyp2f1, principal_power

F = Fraction


class DenominatorZero(ArithmeticError):
    """chi1 vanished at the evaluation point."""


def _log1p_c(w: complex) -> complex:
    """log(1 + w), accurate for |w| far below machine epsilon."""
    if abs(w) > 1e-4:
        return cmath.log(1.0 + w)
    return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - w * 0.25)))


class NonIntegerExponent(ValueError):
    """The vertex exponent does not admit a Puiseux inversion."""


@dataclass(frozen=True)
class SchwarzMap:
    triangle: TriangleParams
    hyp: HypTriple
    hyp2: HypTriple  # parameters of the second solution's 2F1 factor
    wronskian_constant: complex

    @classmethod
    def from_triangle(cls, triangle: TriangleParams) -> "SchwarzMap":
        al, be, ga = triangle.as_tuple()
        a = (1 - al - be - ga) / 2
        b = (1 - al - be + ga) / 2
        c = 1 - al
        hyp = HypTriple(a, b, c)
        hyp2 = HypTriple(a - c + 1, b - c + 1, 2 - c)
        # A = (-1)^(1-beta) * alpha, principal branch
        const = principal_power(-1.0, float(1 - be)) * float(al)
        return cls(triangle, hyp, hyp2, const)

    # -- map values -------------------------------------------------------

    def chi_pair(self, s) -> tuple[complex, complex]:
        f1 = hyp2f1(self.hyp, s)
        c = float(self.hyp.c)
        f2 = principal_power(s, 1.0 - c) * hyp2f1(self.hyp2, s)
        return f1, f2

    def z_of_s(self, s) -> complex:
        chi1, chi2 = self.chi_pair(s)
        if chi1 == 0:
            raise DenominatorZero(f"chi1 = 0 at s = {s!r}")
        return chi2 / chi1

    def wronskian(self, s) -> complex:
        """W(chi1, chi2) = A s^(alpha-1) (s-1)^(beta-1)."""
        al, be, _ = self.triangle.as_tuple()
        return (
            self.wronskian_constant
            * principal_power(s, float(al) - 1.0)
            * principal_power(complex(s) - 1.0, float(be) - 1.0)
        )

    def z_prime_of_s(self, s) -> complex:
        chi1 = hyp2f1(self.hyp, s)
        if chi1 == 0:
            raise DenominatorZero(f"chi1 = 0 at s = {s!r}")
        return self.wronskian(s) / (chi1 * chi1)

    def z_near_one(self, u) -> complex:
        """z(1-u) with u the exact distance to the vertex (u may be far
        below the floating-point spacing around 1)."""
        from .specfun import hyp2f1_jet_near_one

        chi1 = hyp2f1_jet_near_one(self.hyp, u, 0)[0]
        f2 = hyp2f1_jet_near_one(self.hyp2, u, 0)[0]
        c = float(self.hyp.c)
        s_pow = cmath.exp((1.0 - c) * _log1p_c(-complex(u)))
        return s_pow * f2 / chi1

    # -- vertices and barrier ---------------------------------------------

    def vertices(self) -> tuple[complex, complex]:
        """(z(1), z(oo)) from the Gamma-product connection constants."""
        a, b, c = (float(x) for x in (self.hyp.a, self.hyp.b, self.hyp.c))
        z1 = (
            gamma(2 - c) * gamma(c - a) * gamma(c - b)
            / (gamma(c) * gamma(1 - a) * gamma(1 - b))
        )
        zinf = (
            cmath.exp(1j * math.pi * (1 - c))
            * gamma(b) * gamma(c - a) * gamma(2 - c)
            / (gamma(c) * gamma(b - c + 1) * gamma(1 - a))
        )
        return z1, zinf


def barrier_radius(triangle: TriangleParams) -> float:
    """Radius of the orthogonal circle from the closed Gamma-product form.

    R^2 = (Gamma(1+alpha)/Gamma(1-alpha))^2 *
          prod over eps1, eps2 = +-1 of
          Gamma((1 - alpha + eps1 beta + eps2 gamma)/2)
          / Gamma((1 + alpha + eps1 beta + eps2 gamma)/2)
    """
    al, be, ga = (float(v) for v in triangle.as_tuple())
    _require_hyperbolic(triangle)
    r2 = (gamma(1 + al) / gamma(1 - al)) ** 2
    for e1 in (1.0, -1.0):
        for e2 in (1.0, -1.0):
            r2 *= gamma((1 - al + e1 * be + e2 * ga) / 2)
            r2 /= gamma((1 + al + e1 * be + e2 * ga) / 2)
    return math.sqrt(abs(r2))


@dataclass(frozen=True)
class TriangleGeometry:
    """Side and circle data of the fundamental triangle (see barrier docs)."""

    z1: complex
    zinf: complex
    x: float  # straight side |z(1)|
    r: float  # radius of the circular-arc side
    d: float  # distance from the origin to that arc's center
    R: float  # radius of the orthogonal circle


def triangle_geometry(triangle: TriangleParams) -> TriangleGeometry:
    """Elementary construction of the orthogonal circle.

    The triangle has two straight sides from the origin and one circular
    arc; the arc's circle (radius r, center at distance d) meets the
    circle of radius R about the origin at right angles, so R^2 = d^2 - r^2.
    """
    _require_hyperbolic(triangle)
    al, be, ga = (float(v) for v in triangle.as_tuple())
    m = SchwarzMap.from_triangle(triangle)
    z1, zinf = m.vertices()
    x = abs(z1)
    r = (
        x * math.sin(math.pi * al)
        / (2 * math.cos(math.pi * (al + be - ga) / 2)
           * math.cos(math.pi * (al + be + ga) / 2))
    )
    d2 = x * x + r * r + 2 * r * x * math.sin(math.pi * be)
    d = math.sqrt(d2)
    return TriangleGeometry(z1=z1, zinf=zinf, x=x, r=r, d=d, R=math.sqrt(d2 - r * r))


def barrier_radius_geometric(triangle: TriangleParams) -> float:
    return triangle_geometry(triangle).R


def barrier_sine_ratio_identity(triangle: TriangleParams) -> tuple[float, float]:
    """Both sides of R^2 = x^2 * sin((1-a+b-g)pi/2) sin((1-a+b+g)pi/2)
    / (sin((1-a-b+g)pi/2) sin((1-a-b-g)pi/2)); returns (lhs, rhs)."""
    g = triangle_geometry(triangle)
    al, be, ga = (float(v) for v in triangle.as_tuple())
    sin = lambda t: math.sin(math.pi * t / 2)  # noqa: E731
    rhs = (
        g.x * g.x
        * sin(1 - al + be - ga) * sin(1 - al + be + ga)
        / (sin(1 - al - be + ga) * sin(1 - al - be - ga))
    )
    return g.d * g.d - g.r * g.r, rhs


def _require_hyperbolic(triangle: TriangleParams):
    al, be, ga = triangle.as_tuple()
    if not (al > 0 and be > 0 and ga > 0):
        raise ValueError("barrier radius needs strictly positive angles")
    if al + be + ga >= 1:
        raise ValueError("barrier radius needs alpha+beta+gamma < 1")


# ---------------------------------------------------------------------------
# Puiseux inversion at the origin


@dataclass(frozen=True)
class PuiseuxSeries:
    """s(z) = z^n (1 + b1 z^n + b2 z^2n + ...) with n = 1/alpha.

    n is kept as a Fraction: an integer for single-valued vertices
    (alpha = 1/n) and a ratio q/p for the multi-valued rows the table
    admits (alpha = p/q), in which case the expansion variable is z^(q/p).
    exact_coeffs holds (1, b1, b2, ...) as Fractions.
    """

    n: Fraction
    exact_coeffs: tuple
    order: int

    @property
    def coeffs(self) -> list[complex]:
        return [complex(c) for c in self.exact_coeffs[1:]]

    def eval(self, z: complex) -> complex:
        zn = principal_power(z, float(self.n))
        acc = 0j
        for c in reversed(self.exact_coeffs):
            acc = acc * zn + complex(c)
        return zn * acc


def _f21_coeffs(p: HypTriple, n: int):
    """Exact Maclaurin coefficients of 2F1(a, b; c; s) through s^(n-1)."""
    out = [F(1)]
    a, b, c = p.a, p.b, p.c
    for m in range(n - 1):
        out.append(out[-1] * (a + m) * (b + m) / ((c + m) * (m + 1)))
    return out


def psi_series(m: SchwarzMap, n_terms: int):
    """Exact series of psi(s) = z(s)/s^alpha = 2F1(...)/2F1(...)."""
    f2 = _f21_coeffs(m.hyp2, n_terms)
    f1 = _f21_coeffs(m.hyp, n_terms)
    return ps_div(f2, f1, n_terms)


def invert_to_puiseux(m: SchwarzMap, order: int = 8) -> PuiseuxSeries:
    """Exact inversion of z(s) = s^alpha psi(s) at the origin.

    With nu = 1/alpha, z^nu = s * psi(s)^nu is an ordinary power series
    with unit leading coefficient whose reversion gives
    s = u (1 + b1 u + ...) in u = z^nu.  All coefficient arithmetic is
    exact; floating point only enters on evaluation.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    al = m.triangle.alpha
    if not (0 < al <= 1):
        raise NonIntegerExponent(f"vertex exponent {al} admits no inversion")
    nu = 1 / al
    n_terms = order + 2
    psi = psi_series(m, n_terms)
    eta = [F(0)] + ps_pow_rational(psi, nu, n_terms)[: n_terms - 1]
    s_of_u = ps_reversion(eta, n_terms)
    coeffs = tuple(s_of_u[1 : order + 2])
    return PuiseuxSeries(n=nu, exact_coeffs=coeffs, order=order)


def puiseux_roundtrip_residuals(m: SchwarzMap, series: PuiseuxSeries):
    """Exact coefficients of z(s(z))^nu - z^nu; all should vanish."""
    n_terms = series.order + 2
    psi = psi_series(m, n_terms)
    s_of_u = [F(0), *series.exact_coeffs]
    # u(s(u)) with u = z^nu: compose s -> s * psi(s)^nu with s(u)
    eta = [F(0)] + ps_pow_rational(psi, series.n, n_terms)[: n_terms - 1]
    comp = _compose_series(eta, s_of_u, n_terms)
    residual = list(comp)
    residual[1] -= 1
    return residual


def _compose_series(outer, inner, n):
    from .exact import ps_compose

    return ps_compose(ps_trim(outer, n), ps_trim(inner, n), n)


def schwarzian_residual_coeffs(m: SchwarzMap, series: PuiseuxSeries):
    """Exact expansion coefficients of {s; z} + V(s) s'(z)^2 / 2 at z = 0.

    Writing w = z^nu, s = w S(w) with S(0)=1:

        {s;z}            = z^-2 [P3/P1 - (3/2)(P2/P1)^2],
        V(s) s'(z)^2 / 2 = z^-2 (w^2 P1^2 / 2) [ (1-a^2) S^-2 w^-2
                            + (1-b^2)(1-wS)^-2 - (a^2+b^2-g^2-1) w^-1 S^-1 (1-wS)^-1 ],

    with P_j(w) = sum_i (i nu)(i nu - 1)...(i nu - j + 1) c_i w^(i-1).
    The full prefactor z^-2 cancels, leaving a power series in w whose
    coefficients must vanish identically; they are returned exactly.
    """
    al, be, ga = m.triangle.as_tuple()
    nu = series.n
    c = [F(0), *series.exact_coeffs]  # s = sum c_i w^i
    n = len(c) - 1  # coefficients valid through w^n

    P1 = [c[i + 1] * (i + 1) * nu for i in range(n)]
    P2 = [c[i + 1] * ((i + 1) * nu) * ((i + 1) * nu - 1) for i in range(n)]
    P3 = [
        c[i + 1] * ((i + 1) * nu) * ((i + 1) * nu - 1) * ((i + 1) * nu - 2)
        for i in range(n)
    ]
    S = [c[i + 1] for i in range(n)]  # S(w), S[0] = 1

    ps_sub = lambda x, y: [a - b for a, b in zip(x, y)]  # noqa: E731
    schwarzian = ps_sub(
        ps_div(P3, P1, n),
        [x * F(3, 2) for x in ps_mul(ps_div(P2, P1, n), ps_div(P2, P1, n), n)],
    )

    one_minus_wS = [F(1)] + [-S[i - 1] for i in range(1, n)]
    inv_1mS = ps_div([F(1)], one_minus_wS, n)
    invS = ps_div([F(1)], S, n)

    A1 = (1 - al * al)
    A2 = (1 - be * be)
    A3 = (al * al + be * be - ga * ga - 1)

    # w^2 * V(s) as a power series in w
    t1 = [x * A1 for x in ps_mul(invS, invS, n)]
    t2 = [x * A2 for x in ps_mul([F(0), F(0), F(1)], ps_mul(inv_1mS, inv_1mS, n), n)]
    t3 = [x * A3 for x in ps_mul([F(0), F(1)], ps_mul(invS, inv_1mS, n), n)]
    w2V = [a + b - cc for a, b, cc in zip(ps_trim(t1, n), ps_trim(t2, n), ps_trim(t3, n))]

    half_vsp2 = [x / 2 for x in ps_mul(w2V, ps_mul(P1, P1, n), n)]
    total = [a + b for a, b in zip(schwarzian, half_vsp2)]
    return total[: n - 1]
