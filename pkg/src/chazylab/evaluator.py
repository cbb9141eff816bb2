"""Parametric evaluation of everything built on the Schwarz map.

Every quantity is a function of the parameter s and is carried as a
truncated Taylor jet in s; derivatives with respect to z are formed as
d/dz = s'(z) d/ds with s'(z) = chi1^2/W, so no numerical differentiation
ever enters the residual checks (finite differences appear only in
cross-check tests).  The chi-derivative tower comes from the
hypergeometric ODE.

Supported evaluation points: s real in (0,1) or complex off the cut with
moderate modulus, plus dedicated near-vertex entry points that take the
exact distance to s=0 or s=1 (used for residue extraction, where the
distance must go far below the floating-point spacing).

Residual conventions: each residual is reported together with the scale
1 + |largest datum|^p, p the polynomial degree of the governing
equation's largest term (p=4 for the Chazy equation, p=2 for the gDH and
PQR systems).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .classifier import CaseRow, SingularK, TriangleParams, WeightParams, abc_from_params
from .conformal import SchwarzMap
from .jets import Jet, jet_cpow
from .specfun import hyp2f1_jet, hyp2f1_jet_near_one

F = Fraction
PI = math.pi


class VertexSingularity(ValueError):
    """Evaluation at s = 0 or s = 1 where the formulas are singular."""


@dataclass(frozen=True)
class ChazyInstance:
    """A concrete solution: a table row bound to an integer k."""

    row: CaseRow | None
    k: int | None
    triangle: TriangleParams
    weights: WeightParams
    K: Fraction
    J: Fraction
    map: SchwarzMap
    wronskian_scale: complex = 1.0 + 0j  # multiplies chi2, i.e. z -> scale*z

    @classmethod
    def from_row(cls, row: CaseRow, k: int) -> "ChazyInstance":
        K = row.K_at(k)  # raises SingularK at poles
        J = row.J_at(k)
        triangle = row.triangle_at(k)
        return cls(
            row=row,
            k=k,
            triangle=triangle,
            weights=row.weights,
            K=K,
            J=J,
            map=SchwarzMap.from_triangle(triangle),
        )

    @classmethod
    def from_params(cls, triangle: TriangleParams, weights: WeightParams,
                    J: Fraction) -> "ChazyInstance":
        J = F(J)
        return cls(
            row=None,
            k=None,
            triangle=triangle,
            weights=weights,
            K=(12 - J) / 108,
            J=J,
            map=SchwarzMap.from_triangle(triangle),
        )

    def rescaled(self, wronskian_scale) -> "ChazyInstance":
        return ChazyInstance(
            row=self.row, k=self.k, triangle=self.triangle, weights=self.weights,
            K=self.K, J=self.J, map=self.map,
            wronskian_scale=complex(wronskian_scale),
        )


@dataclass(frozen=True)
class PointState:
    s: complex
    chi1: complex
    chi1p: complex
    chi1pp: complex
    chi1ppp: complex
    z: complex
    sprime_z: complex


@dataclass(frozen=True)
class CurvatureFns:
    eta_s: object
    V2: object
    V3: object
    V4: object


@dataclass(frozen=True)
class RamanujanTriple:
    Phat: complex
    Qhat: complex
    Rhat: complex


_ORDER = 4  # jet order carried by every frame


class _Frame:
    """Jets of s, s-1, chi1, W and s'(z) at one point, plus d/dz."""

    __slots__ = ("inst", "s_jet", "sm1_jet", "chi1", "W", "sprime")

    def __init__(self, inst: ChazyInstance, s_jet: Jet, sm1_jet: Jet, chi_derivs):
        al, be, _ = (float(v) for v in inst.triangle.as_tuple())
        self.inst = inst
        self.s_jet = s_jet
        self.sm1_jet = sm1_jet
        self.chi1 = Jet(chi_derivs)
        const = inst.map.wronskian_constant * inst.wronskian_scale
        self.W = const * jet_cpow(s_jet, al - 1.0) * jet_cpow(sm1_jet, be - 1.0)
        self.sprime = self.chi1 * self.chi1 / self.W

    def dz(self, f: Jet) -> Jet:
        """The jet of df/dz (one s-order lower)."""
        return self.sprime.truncate(f.order - 1) * f.deriv()


def _frame_at(inst: ChazyInstance, s, order: int = _ORDER) -> _Frame:
    s = complex(s)
    if s == 0 or s == 1:
        raise VertexSingularity(f"s = {s} is a vertex")
    chi = hyp2f1_jet(inst.map.hyp, s, order)
    return _Frame(inst, Jet.variable(s, order), Jet.variable(s - 1.0, order), chi)


def _frame_near_one(inst: ChazyInstance, u, order: int = _ORDER) -> _Frame:
    """Frame at s = 1 - u with u the exact vertex distance (u > 0)."""
    u = complex(u)
    if u == 0:
        raise VertexSingularity("s = 1 is a vertex")
    chi = hyp2f1_jet_near_one(inst.map.hyp, u, order)
    s_jet = Jet.variable(1.0 - u if abs(u) > 1e-14 else 1.0, order)
    sm1_jet = Jet.variable(-u, order)
    return _Frame(inst, s_jet, sm1_jet, chi)


def point_state(inst: ChazyInstance, s) -> PointState:
    fr = _frame_at(inst, s, order=3)
    z = inst.map.z_of_s(s) * inst.wronskian_scale
    return PointState(
        s=complex(s),
        chi1=fr.chi1.d[0],
        chi1p=fr.chi1.d[1],
        chi1pp=fr.chi1.d[2],
        chi1ppp=fr.chi1.d[3],
        z=z,
        sprime_z=fr.sprime.d[0],
    )


# ---------------------------------------------------------------------------
# gDH variables


def _gdh_jets(fr: _Frame):
    """Jets of (w1, w2, w3): w_i = (1/2) d/dz log(s'(z) / f_i(s))."""
    dlog_sprime = fr.dz(fr.sprime) / fr.sprime.truncate(fr.sprime.order - 1)
    n = dlog_sprime.order
    ds = fr.sprime.truncate(n)  # dz(s) = s'(z)
    over_s = ds / fr.s_jet.truncate(n)
    over_sm1 = ds / fr.sm1_jet.truncate(n)
    w1 = (dlog_sprime - over_s) * 0.5
    w2 = (dlog_sprime - over_sm1) * 0.5
    w3 = (dlog_sprime - over_s - over_sm1) * 0.5
    return w1, w2, w3


def gdh_w(inst: ChazyInstance, s):
    """(w1, w2, w3) at s."""
    w1, w2, w3 = _gdh_jets(_frame_at(inst, s))
    return (w1.value, w2.value, w3.value)


def gdh_residual(inst: ChazyInstance, s, tau_triangle: TriangleParams | None = None):
    """max_i |w_i' - RHS_i| for the gDH system, plus the scale 1+max|w|^2.

    tau_triangle overrides the (alpha, beta, gamma) entering tau^2
    (a deliberately wrong triple is the negative control).
    """
    fr = _frame_at(inst, s)
    w1, w2, w3 = _gdh_jets(fr)
    t = tau_triangle if tau_triangle is not None else inst.triangle
    al2, be2, ga2 = (float(v) ** 2 for v in t.as_tuple())
    # alpha^2 pairs with the w2-centered product, beta^2 with w1, gamma^2
    # with w3 (the same vertex pairing as the weights a2 = 6 alpha1 etc.)
    tau2 = (
        al2 * (w2 - w1) * (w2 - w3)
        + be2 * (w1 - w2) * (w1 - w3)
        + ga2 * (w3 - w1) * (w3 - w2)
    )
    rhs1 = -(w2 * w3) + w1 * (w2 + w3) + tau2
    rhs2 = -(w3 * w1) + w2 * (w3 + w1) + tau2
    rhs3 = -(w1 * w2) + w3 * (w1 + w2) + tau2
    defect = max(
        abs(fr.dz(w1).value - rhs1.value),
        abs(fr.dz(w2).value - rhs2.value),
        abs(fr.dz(w3).value - rhs3.value),
    )
    scale = 1.0 + max(abs(w1.value), abs(w2.value), abs(w3.value)) ** 2
    return defect, scale


# ---------------------------------------------------------------------------
# the Chazy XII solution y


def _y_jet_implicit(fr: _Frame) -> Jet:
    """y = (3/W) [2 chi1 chi1' + ((a1-a)/s + (b1-b)/(s-1)) chi1^2]."""
    inst = fr.inst
    al, be, _ = inst.triangle.as_tuple()
    a1, b1, _g1 = inst.weights.as_tuple()
    n = fr.chi1.order - 1
    chi = fr.chi1.truncate(n)
    bracket = 2 * chi * fr.chi1.deriv() + (
        float(a1 - al) / fr.s_jet.truncate(n) + float(b1 - be) / fr.sm1_jet.truncate(n)
    ) * chi * chi
    return 3 * bracket / fr.W.truncate(n)


def _y_jet_gdh(fr: _Frame) -> Jet:
    a1c, a2c, a3c = (float(v) for v in fr.inst.weights.coefficients())
    w1, w2, w3 = _gdh_jets(fr)
    return a1c * w1 + a2c * w2 + a3c * w3


def _y_jet_logphi(fr: _Frame) -> Jet:
    """y = 3 phi'/phi, phi = s'(z) s^(alpha1 - 1) (s-1)^(beta1 - 1)."""
    a1, b1, _ = fr.inst.weights.as_tuple()
    n = fr.sprime.order - 1
    ds = fr.sprime.truncate(n)
    dlog_sprime = fr.dz(fr.sprime) / fr.sprime.truncate(n)
    dlog_s = ds / fr.s_jet.truncate(n)
    dlog_sm1 = ds / fr.sm1_jet.truncate(n)
    return 3 * (dlog_sprime + float(a1 - 1) * dlog_s + float(b1 - 1) * dlog_sm1)


def chazy_y(inst: ChazyInstance, s, formula: str = "implicit") -> complex:
    """The solution y at parameter s, by one of three equivalent formulas
    ("implicit", "gdh", "logphi")."""
    fr = _frame_at(inst, s)
    return _y_formula(fr, formula).value


def _y_formula(fr: _Frame, formula: str) -> Jet:
    if formula == "implicit":
        return _y_jet_implicit(fr)
    if formula == "gdh":
        return _y_jet_gdh(fr)
    if formula == "logphi":
        return _y_jet_logphi(fr)
    raise ValueError(f"unknown formula {formula!r}")


def chazy_y_all(inst: ChazyInstance, s):
    fr = _frame_at(inst, s)
    return tuple(_y_formula(fr, f).value for f in ("implicit", "gdh", "logphi"))


def _y_tower(fr: _Frame):
    """(y, y', y'', y''') with z-derivatives, from the implicit formula."""
    y = _y_jet_implicit(fr)
    y1 = fr.dz(y)
    y2 = fr.dz(y1)
    y3 = fr.dz(y2)
    return y.value, y1.value, y2.value, y3.value


def chazy_residual(inst: ChazyInstance, s, K_override=None):
    """|y''' - 2y y'' + 3y'^2 - K(6y' - y^2)^2| and the scale 1 + |y|^4."""
    fr = _frame_at(inst, s)
    y, y1, y2, y3 = _y_tower(fr)
    K = float(inst.K) if K_override is None else K_override
    defect = abs(y3 - 2 * y * y2 + 3 * y1 * y1 - K * (6 * y1 - y * y) ** 2)
    return defect, 1.0 + abs(y) ** 4


# ---------------------------------------------------------------------------
# curvature functions


def _eta_v_jets(triangle, weights, s_jet, sm1_jet):
    """Jets of eta(s), V2, V3, V4 over any field (complex or Fraction)."""
    a1, b1, _ = weights.as_tuple()
    abc = abc_from_params(triangle, weights)
    one = s_jet.value * 0 + 1

    def lift(q):
        # Fraction constant into the working field
        return q if isinstance(s_jet.value, Fraction) else float(q)

    eta = -lift(1 - a1) / s_jet - lift(1 - b1) / sm1_jet
    V2 = (
        lift(abc.A) / (s_jet * s_jet)
        + lift(abc.B) / (sm1_jet * sm1_jet)
        + lift(abc.C) / (s_jet * sm1_jet)
    ) * lift(F(1, 2))
    n2 = V2.order - 1
    V3 = V2.deriv() - 2 * eta.truncate(n2) * V2.truncate(n2)
    n3 = V3.order - 1
    V4 = V3.deriv() - 3 * eta.truncate(n3) * V3.truncate(n3)
    _ = one
    return eta, V2, V3, V4


def curvature(inst: ChazyInstance, s) -> CurvatureFns:
    """eta(s), V2, V3, V4 at s; exact when s is rational."""
    return curvature_from_params(inst.triangle, inst.weights, s)


def curvature_from_params(triangle, weights, s) -> CurvatureFns:
    if isinstance(s, (Fraction, int)):
        s0 = F(s)
        if s0 in (0, 1):
            raise VertexSingularity(f"s = {s0} is a vertex")
        s_jet = Jet.variable(s0, 2)
        sm1_jet = Jet.variable(s0 - 1, 2)
    else:
        s0 = complex(s)
        if s0 in (0, 1):
            raise VertexSingularity(f"s = {s0} is a vertex")
        s_jet = Jet.variable(s0, 2)
        sm1_jet = Jet.variable(s0 - 1.0, 2)
    eta, V2, V3, V4 = _eta_v_jets(triangle, weights, s_jet, sm1_jet)
    return CurvatureFns(eta_s=eta.value, V2=V2.value, V3=V3.value, V4=V4.value)


def veq_defect(triangle, weights, J, s) -> Fraction:
    """V4 - J V2^2 at rational s, exactly (zero iff the row is admissible)."""
    c = curvature_from_params(triangle, weights, F(s))
    return c.V4 - F(J) * c.V2 * c.V2


# ---------------------------------------------------------------------------
# the Ramanujan-type triple


def _pqr_jets(fr: _Frame):
    inst = fr.inst
    y = _y_jet_implicit(fr)
    n = y.order
    eta, V2, V3, _V4 = _eta_v_jets(inst.triangle, inst.weights, fr.s_jet, fr.sm1_jet)
    W = fr.W.truncate(n)
    chi2j = (fr.chi1 * fr.chi1).truncate(n)
    chi4 = chi2j * chi2j
    Phat = y * (1.0 / (1j * PI))
    Qhat = -2.0 * (3.0 / (PI * W)) ** 2 * V2.truncate(n) * chi4
    Rhat = (3j / (PI * W)) ** 3 * V3.truncate(n) * chi4 * chi2j
    return Phat, Qhat, Rhat


def ramanujan_triple(inst: ChazyInstance, s) -> RamanujanTriple:
    P, Q, R = _pqr_jets(_frame_at(inst, s))
    return RamanujanTriple(Phat=P.value, Qhat=Q.value, Rhat=R.value)


def dhpqr_residual(inst: ChazyInstance, s, J_override=None):
    """Max defect of the three first-order relations of the triple,
    plus the scale 1 + max(|P|,|Q|,|R|)^2."""
    fr = _frame_at(inst, s)
    P, Q, R = _pqr_jets(fr)
    J = float(inst.J) if J_override is None else J_override
    tw = 1.0 / (2j * PI)
    d1 = tw * fr.dz(P).value - (P.value**2 - Q.value) / 12.0
    d2 = tw * fr.dz(Q).value - (P.value * Q.value - R.value) / 3.0
    d3 = tw * fr.dz(R).value - (P.value * R.value / 2.0 - (J / 24.0) * Q.value**2)
    m = max(abs(P.value), abs(Q.value), abs(R.value))
    return max(abs(d1), abs(d2), abs(d3)), 1.0 + m * m


def dhpqr_defects(inst: ChazyInstance, s, J_override=None):
    """The three defects separately (the first two are J-independent)."""
    fr = _frame_at(inst, s)
    P, Q, R = _pqr_jets(fr)
    J = float(inst.J) if J_override is None else J_override
    tw = 1.0 / (2j * PI)
    return (
        abs(tw * fr.dz(P).value - (P.value**2 - Q.value) / 12.0),
        abs(tw * fr.dz(Q).value - (P.value * Q.value - R.value) / 3.0),
        abs(tw * fr.dz(R).value - (P.value * R.value / 2.0 - (J / 24.0) * Q.value**2)),
    )


# ---------------------------------------------------------------------------
# residues at the vertices z(0) and z(1)


def _neville_at_zero(xs, fs):
    """Polynomial extrapolation of f to x = 0."""
    n = len(xs)
    tab = list(fs)
    for level in range(1, n):
        for i in range(n - level):
            x0, x1 = xs[i], xs[i + level]
            tab[i] = (x1 * tab[i] - x0 * tab[i + 1]) / (x1 - x0)
    return tab[0]


def residue_at_zero(inst: ChazyInstance, n_points: int = 8) -> complex:
    """lim z(s) y(s) as s -> 0+ along the real axis, by extrapolation in
    the variable u = z(s) (Richardson on geometric u-levels)."""
    al = float(inst.triangle.alpha)
    # calibrate |z| ~ psi0 * s^alpha, then target u-levels 1e-7 .. ~1e-4
    s_probe = 1e-3
    z_probe = abs(inst.map.z_of_s(s_probe))
    us, fs = [], []
    for j in range(n_points):
        target = 1e-7 * (3.3**j)
        log_s = (math.log(target) - math.log(z_probe)) / al + math.log(s_probe)
        log_s = max(log_s, -690.0)
        s = math.exp(log_s)
        fr = _frame_at(inst, s, order=1)
        y = _y_jet_implicit(fr).value
        z = inst.map.z_of_s(s) * inst.wronskian_scale
        us.append(z)
        fs.append(z * y)
    return _neville_at_zero(us, fs)


def residue_at_one(inst: ChazyInstance, n_points: int = 8) -> complex:
    """lim (z(s) - z(1)) y(s) as s -> 1- along the real axis."""
    be = float(inst.triangle.beta)
    z1 = inst.map.vertices()[0] * inst.wronskian_scale
    u_probe = 1e-3
    dz_probe = abs(inst.map.z_near_one(u_probe) - inst.map.vertices()[0])
    us, fs = [], []
    for j in range(n_points):
        target = 1e-7 * (3.3**j)
        log_u = (math.log(target) - math.log(dz_probe)) / be + math.log(u_probe)
        log_u = max(log_u, -690.0)
        u = math.exp(log_u)
        fr = _frame_near_one(inst, u, order=1)
        y = _y_jet_implicit(fr).value
        z = inst.map.z_near_one(u) * inst.wronskian_scale
        us.append(z - z1)
        fs.append((z - z1) * y)
    return _neville_at_zero(us, fs)
