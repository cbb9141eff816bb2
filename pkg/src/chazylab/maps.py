"""Rational pull-back maps between the table's triangle functions.

Each catalog map theta sends the Schwarz function of one table row to
(a vertex permutation of) another: theta(s(z)) = s_target(eps*z) for a
single rescale constant eps.  Coefficients live in Q(omega) (omega a
primitive cube root of unity) so all structural checks - critical
values, ramification multiplicities, compositions, substitutions - are
exact.

Two independent verifications are provided:

- verify_differential_relation: the trivializing-form identity
  phi_target(theta(s)) theta'(s) = eps * phi_source(s) with
  phi_row(s) = s^(alpha1-1) (s-1)^(beta1-1); eps must be constant over a
  grid (for maps into row 1(a) the left side is the quoted
  theta^(-1/2) (theta-1)^(-2/3) theta').
- verify_map_on_schwarz: an exact formal-series identity.  The published
  forms send s=0 to 1 or oo, so each map carries a vertex-0-preserving
  variant (post-composition with t -> 1-t or t -> 1/t and the matching
  permutation of the target triangle); the variant composed with the
  source Puiseux series must reproduce the target series with a single
  scale E = eps^(1/alpha_target), solved from the leading coefficient
  and checked exactly on every higher one.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .classifier import CaseRow, TriangleParams, row_by_label
from .conformal import SchwarzMap, psi_series
from .exact import (
    OMEGA,
    QOmega,
    poly_degree,
    poly_derivative,
    poly_eval,
    poly_mul,
    poly_ord_at,
    poly_scale,
    poly_squarefree_multiplicities,
    poly_sub,
    poly_trim,
    ps_div,
    ps_mul,
    ps_pow_rational,
    ps_reversion,
    ps_trim,
)
from .specfun import principal_power

F = Fraction


class PoleOfMap(ArithmeticError):
    pass


class GridHitsPole(ValueError):
    pass


class NonInvertibleAtOrigin(ValueError):
    pass


def _q(x) -> QOmega:
    return x if isinstance(x, QOmega) else QOmega.of(F(x))


def _qpoly(coeffs):
    return [_q(c) for c in coeffs]


INFINITY = "oo"


@dataclass(frozen=True)
class RationalMap:
    """theta = num/den over Q(omega), with bookkeeping for verification."""

    name: str
    num: tuple
    den: tuple
    source_label: str
    target_label: str
    degree: int
    # (source point, image in {0,1,oo}, ramification index); points are
    # Fractions, QOmega values or INFINITY
    critical_table: tuple
    scale_epsilon: complex | None = None  # the quoted z-rescale, if any
    # vertex-0-preserving series variant: (kind, target permutation)
    series_variant: tuple | None = None

    def __call__(self, s):
        return self.apply(s)

    def apply(self, s) -> complex:
        num = poly_eval([c.to_complex() for c in self.num], complex(s))
        den = poly_eval([c.to_complex() for c in self.den], complex(s))
        if den == 0:
            raise PoleOfMap(f"{self.name} has a pole at s = {s!r}")
        return num / den

    def derivative_at(self, s) -> complex:
        n = [c.to_complex() for c in self.num]
        d = [c.to_complex() for c in self.den]
        s = complex(s)
        dv = poly_eval(d, s)
        if dv == 0:
            raise PoleOfMap(f"{self.name} has a pole at s = {s!r}")
        return (poly_eval(poly_derivative(n), s) * dv
                - poly_eval(n, s) * poly_eval(poly_derivative(d), s)) / (dv * dv)

    def compose_with(self, inner: "RationalMap", name: str,
                     source_label: str) -> "RationalMap":
        """self o inner (inner applied first)."""
        from .exact import poly_add

        p, q = list(inner.num), list(inner.den)
        deg = max(poly_degree(list(self.num)), poly_degree(list(self.den)))
        pow_p = [[_q(1)]]
        pow_q = [[_q(1)]]
        for _ in range(deg):
            pow_p.append(poly_mul(pow_p[-1], p))
            pow_q.append(poly_mul(pow_q[-1], q))

        def substitute(coeffs):
            out = [_q(0)]
            for i, c in enumerate(coeffs):
                if c == _q(0):
                    continue
                out = poly_add(out, poly_scale(poly_mul(pow_p[i], pow_q[deg - i]), c))
            return out

        num = substitute(list(self.num))
        den = substitute(list(self.den))
        return RationalMap(
            name=name,
            num=tuple(num),
            den=tuple(den),
            source_label=source_label,
            target_label=self.target_label,
            degree=self.degree * inner.degree,
            critical_table=(),
        )

    def post_mobius(self, sub: str) -> "RationalMap":
        """1-theta or 1/theta (target-side vertex swap)."""
        if sub == "one_minus":
            num = poly_sub(list(self.den), list(self.num))
            den = list(self.den)
        elif sub == "reciprocal":
            num = list(self.den)
            den = list(self.num)
        else:
            raise ValueError(sub)
        return replace(self, num=tuple(poly_trim(num)), den=tuple(poly_trim(den)))


# ---------------------------------------------------------------------------
# catalog


def _triangle_of(label: str, k: int) -> TriangleParams:
    return row_by_label(label).triangle_at(k)


def _permute(t: tuple, perm: tuple) -> tuple:
    return tuple(t[i] for i in perm)


def builtin_maps() -> list[RationalMap]:
    """The five catalog pull-back maps plus the two degree-6 compositions."""
    one = _q(1)
    m_1b = RationalMap(
        name="theta_1b",
        num=tuple(_qpoly([1, -4, 4])),  # (2s-1)^2
        den=(one,),
        source_label="1(b)", target_label="1(a)", degree=2,
        critical_table=((F(0), 1, 1), (F(1), 1, 1), (INFINITY, INFINITY, 2)),
        scale_epsilon=complex(4.0 ** (1.0 / 3.0)),
        series_variant=("one_minus", (1, 0, 2)),
    )
    m_2a = RationalMap(
        name="theta_2a",
        num=tuple(_qpoly([0, 81, -144, 64])),  # s(8s-9)^2
        den=tuple(_qpoly([27, -27])),  # 27(1-s)
        source_label="2(a)", target_label="1(a)", degree=3,
        critical_table=((F(0), 0, 1), (F(1), INFINITY, 1), (INFINITY, INFINITY, 2)),
        series_variant=("direct", (0, 1, 2)),
    )
    m_2b = RationalMap(
        name="theta_2b",
        num=tuple(poly_mul(_qpoly([8, -36, 27]), _qpoly([8, -36, 27]))),
        den=tuple(_qpoly([64, -64])),  # 64(1-s)
        source_label="2(b)", target_label="1(a)", degree=4,
        critical_table=((F(0), 1, 1), (F(1), INFINITY, 1), (INFINITY, INFINITY, 3)),
        series_variant=("one_minus", (1, 0, 2)),
    )
    m_2c = RationalMap(
        name="theta_2c",
        num=tuple(_qpoly([4, -4, 1])),  # (s-2)^2
        den=tuple(_qpoly([4, -4])),  # 4(1-s)
        source_label="2(c)", target_label="1(a)", degree=2,
        critical_table=((F(0), 1, 2), (F(1), INFINITY, 1), (INFINITY, INFINITY, 1)),
        scale_epsilon=principal_power(-0.25, F(1, 3)),
        series_variant=("one_minus", (1, 0, 2)),
    )
    # (s+omega)^3 / (A s(s-1)), A = 3(2 omega + 1)
    w = OMEGA
    A = 3 * (2 * w + 1)
    num_3bc = poly_mul(poly_mul([w, one], [w, one]), [w, one])
    m_3bc = RationalMap(
        name="theta_3b_cubic",
        num=tuple(num_3bc),
        den=tuple([_q(0), -A, A]),  # A(s^2 - s)
        source_label="3(b)", target_label="1(b)", degree=3,
        critical_table=((F(0), INFINITY, 1), (F(1), INFINITY, 1), (INFINITY, INFINITY, 1)),
        series_variant=("reciprocal", (2, 1, 0)),
    )
    m_3a = m_2a.compose_with(m_1b, name="theta_3a", source_label="3(a)")
    m_3a = replace(
        m_3a,
        critical_table=((F(0), 1, 1), (F(1), 1, 1), (INFINITY, INFINITY, 4)),
        series_variant=("reciprocal", (2, 1, 0)),
    )
    m_3b = m_1b.compose_with(m_3bc, name="theta_3b", source_label="3(b)")
    m_3b = replace(
        m_3b,
        critical_table=((F(0), INFINITY, 2), (F(1), INFINITY, 2), (INFINITY, INFINITY, 2)),
        series_variant=("reciprocal", (2, 1, 0)),
    )
    return [m_1b, m_2a, m_2b, m_2c, m_3bc, m_3a, m_3b]


def map_by_name(name: str) -> RationalMap:
    for m in builtin_maps():
        if m.name == name:
            return m
    raise KeyError(name)


# grids on which eps is single-branch (no theta in {0,1,oo} crossings)
DEFAULT_RELATION_GRIDS = {
    "theta_1b": (0.06, 0.44),
    "theta_2a": (0.06, 0.55),
    "theta_2b": (0.03, 0.25),
    "theta_2c": (0.06, 0.70),
    "theta_3b_cubic": (0.06, 0.44),
    "theta_3a": (0.06, 0.22),
    "theta_3b": (0.06, 0.20),
}


def relation_grid(m: RationalMap, n: int = 20):
    lo, hi = DEFAULT_RELATION_GRIDS[m.name]
    return [lo + (hi - lo) * (i + 0.5) / n for i in range(n)]


# ---------------------------------------------------------------------------
# structural checks


def verify_critical_table(m: RationalMap, k: int = 7) -> dict:
    """Exact ramification bookkeeping over Q(omega).

    For every source vertex v in {0, 1, oo}: theta(v) lies in {0, 1, oo}
    and the local multiplicity e satisfies
    e * (target exponent at theta(v)) = (source exponent at v).
    Also checks sum-of-multiplicity partitions via Yun factorization of
    num, num - den and den.
    """
    src = _triangle_of(m.source_label, k).as_tuple()
    tgt = _triangle_of(m.target_label, k).as_tuple()
    num, den = list(m.num), list(m.den)
    report = {"name": m.name, "vertices": []}

    def image_and_ord(v):
        if v == INFINITY:
            dn, dd = poly_degree(num), poly_degree(den)
            if dn > dd:
                return INFINITY, dn - dd
            if dn < dd:
                return 0 if poly_is_zero_at_inf(num, den) else 0, dd - dn
            ratio = num[-1] / den[-1]
            if ratio == _q(1):
                # order of (theta - 1) at infinity
                diff = poly_sub(num, den)
                return 1, dd - poly_degree(diff)
            return ("value", ratio), 0
        vq = _q(v)
        dv = poly_eval(den, vq)
        if dv == _q(0):
            return INFINITY, poly_ord_at(den, vq)
        val = poly_eval(num, vq) / dv
        if val == _q(0):
            return 0, poly_ord_at(num, vq)
        if val == _q(1):
            return 1, poly_ord_at(poly_sub(num, den), vq)
        return ("value", val), 0

    def poly_is_zero_at_inf(nu, de):
        return poly_degree(nu) < poly_degree(de)

    for v, img, e in m.critical_table:
        got_img, got_e = image_and_ord(v)
        assert got_img == img, f"{m.name}: theta({v}) = {got_img}, table says {img}"
        assert got_e == e, f"{m.name}: ord at {v} is {got_e}, table says {e}"
        src_exp = src[{F(0): 0, F(1): 1, INFINITY: 2}[v]]
        tgt_exp = tgt[{0: 0, 1: 1, INFINITY: 2}[img]]
        assert e * tgt_exp == src_exp, (
            f"{m.name}: ramification {e} * {tgt_exp} != {src_exp} at {v}"
        )
        report["vertices"].append({"point": str(v), "image": str(img), "e": e})

    # multiplicity partition of the fiber over each target vertex: the
    # root multiplicities of num (over 0), num - den (over 1), den (over oo)
    # plus the point at infinity; each partition must sum to the degree
    for label, poly in (("0", num), ("1", poly_sub(num, den)), ("oo", den)):
        partition = []
        for f, mult in poly_squarefree_multiplicities(poly):
            partition.extend([mult] * poly_degree(f))
        covered = sum(mult * poly_degree(f)
                      for f, mult in poly_squarefree_multiplicities(poly))
        # simple roots are not reported by Yun beyond multiplicity 1 parts;
        # account for any remaining degree as simple points
        partition.extend([1] * (poly_degree(poly) - covered))
        if m.degree > poly_degree(poly):
            partition.append(m.degree - poly_degree(poly))  # the fiber point at oo
        assert sum(partition) == m.degree, f"{m.name}: fiber over {label}"
        report[f"partition_over_{label}"] = sorted(partition)
    return report


# ---------------------------------------------------------------------------
# the differential relation


def verify_differential_relation(m: RationalMap, source: CaseRow, target: CaseRow,
                                 grid) -> dict:
    """eps(s) = theta^(a1t-1) (theta-1)^(b1t-1) theta' / [s^(a1s-1) (s-1)^(b1s-1)]
    must be constant over the grid (weights from the target/source rows)."""
    a1t, b1t, _ = (float(v) for v in target.weights.as_tuple())
    a1s, b1s, _ = (float(v) for v in source.weights.as_tuple())
    eps_vals = []
    for s in grid:
        try:
            th = m.apply(s)
            dth = m.derivative_at(s)
        except PoleOfMap as exc:
            raise GridHitsPole(str(exc)) from None
        if th == 0 or th == 1:
            raise GridHitsPole(f"theta({s}) lies on a target vertex")
        lhs = principal_power(th, a1t - 1.0) * principal_power(th - 1.0, b1t - 1.0) * dth
        rhs = principal_power(s, a1s - 1.0) * principal_power(complex(s) - 1.0, b1s - 1.0)
        eps_vals.append(lhs / rhs)
    mean = sum(eps_vals) / len(eps_vals)
    max_dev = max(abs(e - mean) for e in eps_vals) / abs(mean)
    return {
        "map": m.name,
        "epsilon_re": mean.real,
        "epsilon_im": mean.imag,
        "max_defect": max_dev,
        "checks_passed": bool(max_dev <= 1e-10),
        "n_grid": len(eps_vals),
    }


# ---------------------------------------------------------------------------
# the formal-series check


def _source_series(label: str, k: int, n_terms: int):
    """(nu, coefficients c_1..c_n of s = sum c_j u^j, u = z^nu) exactly."""
    tri = _triangle_of(label, k)
    al = tri.alpha
    if not (0 < al < 1):
        raise NonInvertibleAtOrigin(f"alpha = {al}")
    nu = 1 / al
    mp = SchwarzMap.from_triangle(tri)
    psi = psi_series(mp, n_terms)
    eta = [F(0)] + ps_pow_rational(psi, nu, n_terms)[: n_terms - 1]
    return nu, ps_reversion(eta, n_terms)


def _target_series_permuted(label: str, perm: tuple, k: int, n_terms: int):
    tri = _triangle_of(label, k)
    t = tuple(tri.as_tuple()[i] for i in perm)
    ptri = TriangleParams(*t)
    al = ptri.alpha
    nu = 1 / al
    mp = SchwarzMap.from_triangle(ptri)
    psi = psi_series(mp, n_terms)
    eta = [F(0)] + ps_pow_rational(psi, nu, n_terms)[: n_terms - 1]
    return nu, ps_reversion(eta, n_terms)


def series_variant(m: RationalMap) -> RationalMap:
    kind, _perm = m.series_variant
    if kind == "direct":
        return m
    return m.post_mobius(kind)


def verify_map_on_schwarz(m: RationalMap, k: int, order: int = 6) -> dict:
    """Exact series identity theta0(s_src(z)) = s_tgt(eps*z).

    theta0 is the vertex-0-preserving variant; both sides are series in
    fractional powers of z.  The single unknown E = eps^(nu_target) is
    solved from the leading coefficient; every other coefficient must
    match exactly (including the required vanishing of the exponents the
    target series cannot contain).
    """
    if m.series_variant is None:
        raise NonInvertibleAtOrigin(f"{m.name} has no series variant")
    kind, perm = m.series_variant
    theta0 = series_variant(m)
    nu_s, src = _source_series(m.source_label, k, order + 6)
    n = len(src)
    src_q = [_q(c) for c in src]
    num = ps_compose_poly(list(theta0.num), src_q, n)
    den = ps_compose_poly(list(theta0.den), src_q, n)
    comp = ps_div(num, den, n)  # series in u = z^(nu_s), QOmega coefficients
    nu_t, tgt = _target_series_permuted(m.target_label, perm, k, order + 6)
    assert comp[0] == _q(0), f"{m.name}: variant does not vanish at origin"

    # match exponents: u^j = z^(j nu_s) must equal z^(m nu_t)
    E = None
    defects = []
    matched = 0
    for j in range(1, n):
        mm = F(j) * nu_s / nu_t
        if mm.denominator != 1:
            defects.append(abs(comp[j].to_complex()))
            assert comp[j] == _q(0), (
                f"{m.name}: stray exponent z^{j * nu_s} with coefficient {comp[j]}"
            )
            continue
        mm = int(mm)
        if mm >= len(tgt):
            break
        want = _q(tgt[mm])
        if E is None:
            if want == _q(0):
                continue
            E = comp[j] / want
            assert mm == 1, f"{m.name}: leading coefficient not at m=1"
            continue
        predicted = want * _pow_q(E, mm)
        defects.append(abs((comp[j] - predicted).to_complex()))
        assert comp[j] == predicted, (
            f"{m.name}: coefficient mismatch at z^{j * nu_s}"
        )
        matched += 1
        if matched >= order:
            break
    eps_nu_t = E.to_complex()
    return {
        "map": m.name,
        "k": k,
        "E": E,
        "epsilon_abs": abs(eps_nu_t) ** (1.0 / float(nu_t)),
        "epsilon_pow_nu_target": eps_nu_t,
        "nu_target": nu_t,
        "max_defect": max(defects) if defects else 0.0,
        "checks_passed": True,
        "matched_coefficients": matched,
    }


def _pow_q(x: QOmega, n: int) -> QOmega:
    out = _q(1)
    for _ in range(n):
        out = out * x
    return out


def ps_compose_poly(coeffs, inner, n):
    """Polynomial(QOmega) evaluated on a series with zero constant term."""
    out = [_q(0)] * n
    for c in reversed(coeffs):
        out = ps_mul(out, inner, n)
        out[0] = out[0] + _q(c)
    return ps_trim(out, n)


def relation_report_json(report: dict) -> str:
    clean = {k: v for k, v in report.items() if k != "E"}
    return json.dumps(clean, default=str, sort_keys=True)
