"""Exact arithmetic helpers: truncated power series, dense polynomials,
rational functions of the table parameter k, and the field Q(omega) with
omega a primitive cube root of unity.

The power-series routines are generic over the coefficient field; they are
used with Fraction coefficients (Puiseux inversion, Schwarzian checks) and
with QOmega coefficients (pull-back map verification).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


# ---------------------------------------------------------------------------
# truncated power series as coefficient lists, index = power


def ps_trim(a, n):
    return list(a[:n]) + [a[0] * 0] * (n - len(a)) if len(a) < n else list(a[:n])


def ps_add(a, b, n):
    a, b = ps_trim(a, n), ps_trim(b, n)
    return [x + y for x, y in zip(a, b)]


def ps_mul(a, b, n):
    zero = a[0] * 0
    out = [zero] * n
    for i, ai in enumerate(a[:n]):
        if ai == zero:
            continue
        for j, bj in enumerate(b[: n - i]):
            out[i + j] += ai * bj
    return out


def ps_div(a, b, n):
    """a/b with b[0] invertible."""
    a, b = ps_trim(a, n), ps_trim(b, n)
    inv0 = 1 / b[0] if not isinstance(b[0], Fraction) else Fraction(1) / b[0]
    out = []
    for m in range(n):
        acc = a[m]
        for i in range(m):
            acc = acc - out[i] * b[m - i]
        out.append(acc * inv0)
    return out


def ps_compose(outer, inner, n):
    """outer(inner(x)) truncated to n terms; requires inner[0] == 0."""
    zero = inner[0] * 0
    if inner[0] != zero:
        raise ValueError("composition needs inner constant term 0")
    result = [zero] * n
    for coeff in reversed(ps_trim(outer, n)):
        result = ps_mul(result, inner, n)
        result[0] = result[0] + coeff
    return result


def ps_pow_rational(a, r: Fraction, n):
    """a**r for a series with a[0] == 1 and rational exponent r.

    Recurrence from a*h' = r*a'*h:  m*h_m = sum_{j=1..m} (j(r+1) - m) a_j h_{m-j}.
    """
    a = ps_trim(a, n)
    if a[0] != a[0] * 0 + 1:
        raise ValueError("ps_pow_rational needs unit constant term")
    h = [a[0] * 0 + 1] + [a[0] * 0] * (n - 1)
    for m in range(1, n):
        acc = a[0] * 0
        for j in range(1, m + 1):
            acc += (Fraction(j) * (r + 1) - m) * a[j] * h[m - j]
        h[m] = acc / m
    return h


def ps_reversion(a, n):
    """Functional inverse of a = x + a_2 x^2 + ... (a[0]=0, a[1]=1)."""
    a = ps_trim(a, n)
    zero = a[1] * 0
    if a[0] != zero or a[1] != zero + 1:
        raise ValueError("reversion needs a = x + O(x^2)")
    g = [zero, zero + 1] + [zero] * (n - 2)
    for m in range(2, n):
        comp = ps_compose(a, g, m + 1)
        g[m] = g[m] - comp[m]
    return g


def ps_derivative(a):
    return [a[i] * i for i in range(1, len(a))]


# ---------------------------------------------------------------------------
# dense polynomials over a field


def poly_trim(p):
    while len(p) > 1 and p[-1] == p[0] * 0:
        p = p[:-1]
    return list(p)


def poly_is_zero(p):
    return all(x == x * 0 for x in p)


def poly_degree(p):
    p = poly_trim(p)
    return -1 if poly_is_zero(p) else len(p) - 1


def poly_add(p, q):
    n = max(len(p), len(q))
    zero = p[0] * 0
    out = [(p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero) for i in range(n)]
    return poly_trim(out)


def poly_sub(p, q):
    return poly_add(p, [-x for x in q])


def poly_mul(p, q):
    zero = p[0] * 0
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == zero:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_scale(p, c):
    return poly_trim([x * c for x in p])


def poly_eval(p, x):
    acc = x * 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p):
    if len(p) <= 1:
        return [p[0] * 0]
    return poly_trim([p[i] * i for i in range(1, len(p))])


def poly_divmod(p, q):
    """Euclidean division over a field."""
    p, q = poly_trim(p), poly_trim(q)
    if poly_is_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    zero = p[0] * 0
    rem = list(p) + [zero] * max(0, len(q) - len(p))
    quot = [zero] * max(1, len(p) - len(q) + 1)
    dq = len(q) - 1
    lead_inv = 1 / q[-1] if not isinstance(q[-1], Fraction) else Fraction(1) / q[-1]
    for i in range(len(p) - len(q), -1, -1):
        coeff = rem[i + dq] * lead_inv
        quot[i] = coeff
        for j in range(len(q)):
            rem[i + j] -= coeff * q[j]
    return poly_trim(quot), poly_trim(rem)


def poly_gcd(p, q):
    """Monic gcd over a field."""
    p, q = poly_trim(p), poly_trim(q)
    while not poly_is_zero(q):
        _, r = poly_divmod(p, q)
        p, q = q, r
    if poly_is_zero(p):
        return p
    lead = p[-1]
    inv = 1 / lead if not isinstance(lead, Fraction) else Fraction(1) / lead
    return poly_scale(p, inv)


def poly_ord_at(p, r):
    """Multiplicity of the root r in p (0 if p(r) != 0)."""
    p = poly_trim(p)
    if poly_is_zero(p):
        raise ValueError("zero polynomial has no well-defined root order")
    ord_ = 0
    while True:
        if poly_eval(p, r) != r * 0:
            return ord_
        # synthetic (Horner) deflation by (x - r)
        q = []
        carry = p[-1]
        for c in reversed(p[:-1]):
            q.append(carry)
            carry = c + carry * r
        q.reverse()
        p = poly_trim(q)
        ord_ += 1


def poly_squarefree_multiplicities(p):
    """Yun's algorithm: returns [(factor, multiplicity)] with factors monic,
    squarefree, pairwise coprime, and p = lead * prod factor^multiplicity."""
    p = poly_trim(p)
    if poly_degree(p) < 1:
        return []
    d = poly_derivative(p)
    a = poly_gcd(p, d)
    b, _ = poly_divmod(p, a)
    c, _ = poly_divmod(d, a)
    out = []
    m = 1
    while poly_degree(b) >= 1:
        step = poly_sub(c, poly_derivative(b))
        g = poly_gcd(b, step)
        if poly_degree(g) >= 1:
            out.append((g, m))
        b, _ = poly_divmod(b, g)
        c, _ = poly_divmod(step, g)
        m += 1
    return out


# ---------------------------------------------------------------------------
# rational functions of the integer parameter k (Fraction coefficients)


@dataclass(frozen=True)
class RatK:
    """num(k)/den(k) with Fraction coefficients, low degree, exact."""

    num: tuple
    den: tuple

    @staticmethod
    def of(num, den=(Fraction(1),)) -> "RatK":
        num = tuple(Fraction(x) for x in num)
        den = tuple(Fraction(x) for x in den)
        if poly_is_zero(list(den)):
            raise ZeroDivisionError("RatK with zero denominator")
        return RatK(tuple(poly_trim(list(num))), tuple(poly_trim(list(den))))

    @staticmethod
    def const(value) -> "RatK":
        return RatK.of([Fraction(value)])

    @staticmethod
    def k() -> "RatK":
        return RatK.of([0, 1])

    def __call__(self, k) -> Fraction:
        kq = Fraction(k)
        den = poly_eval(list(self.den), kq)
        if den == 0:
            raise ZeroDivisionError(f"rational function undefined at k={k}")
        return poly_eval(list(self.num), kq) / den

    def is_zero(self) -> bool:
        return poly_is_zero(list(self.num))

    def __add__(self, other):
        other = _ratk(other)
        return RatK.of(
            poly_add(poly_mul(list(self.num), list(other.den)),
                     poly_mul(list(other.num), list(self.den))),
            poly_mul(list(self.den), list(other.den)),
        )

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RatK.of([-x for x in self.num], list(self.den))

    def __sub__(self, other):
        return self.__add__(-_ratk(other))

    def __rsub__(self, other):
        return (-self).__add__(_ratk(other))

    def __mul__(self, other):
        other = _ratk(other)
        return RatK.of(poly_mul(list(self.num), list(other.num)),
                       poly_mul(list(self.den), list(other.den)))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = _ratk(other)
        if other.is_zero():
            raise ZeroDivisionError
        return RatK.of(poly_mul(list(self.num), list(other.den)),
                       poly_mul(list(self.den), list(other.num)))

    def __rtruediv__(self, other):
        return _ratk(other).__truediv__(self)

    def __eq__(self, other):
        other = _ratk(other)
        return poly_is_zero(
            poly_sub(poly_mul(list(self.num), list(other.den)),
                     poly_mul(list(other.num), list(self.den)))
        )

    def __hash__(self):
        return hash((self.num, self.den))


def _ratk(x) -> RatK:
    if isinstance(x, RatK):
        return x
    return RatK.const(x)


def solve_ratk_equals(r: RatK, value: Fraction):
    """All k with r(k) == value: returns ('any', None), ('none', None) or
    ('some', [k...]) — r has degree <= 2 here, so the roots are radicals."""
    value = Fraction(value)
    p = poly_sub(list(r.num), poly_scale(list(r.den), value))
    p = poly_trim(p)
    if poly_is_zero(p):
        return ("any", None)
    deg = poly_degree(p)
    roots = []
    if deg == 1:
        roots = [-p[0] / p[1]]
    elif deg == 2:
        disc = p[1] * p[1] - 4 * p[0] * p[2]
        if disc >= 0:
            root = _fraction_sqrt(disc)
            if root is not None:
                roots = [(-p[1] + root) / (2 * p[2]), (-p[1] - root) / (2 * p[2])]
    elif deg == 0:
        return ("none", None)
    valid = [k for k in roots if poly_eval(list(r.den), k) != 0]
    return ("some", valid)


def _fraction_sqrt(x: Fraction):
    if x < 0:
        return None
    pn, pd = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


# ---------------------------------------------------------------------------
# the field Q(omega), omega = exp(2 pi i / 3), omega^2 = -1 - omega


@dataclass(frozen=True)
class QOmega:
    """a + b*omega with rational a, b."""

    a: Fraction
    b: Fraction = Fraction(0)

    @staticmethod
    def of(a, b=0) -> "QOmega":
        return QOmega(Fraction(a), Fraction(b))

    def __add__(self, other):
        other = _qomega(other)
        return QOmega(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QOmega(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_qomega(other))

    def __rsub__(self, other):
        return _qomega(other) + (-self)

    def __mul__(self, other):
        other = _qomega(other)
        # (a1 + b1 w)(a2 + b2 w) = a1 a2 + (a1 b2 + a2 b1) w + b1 b2 w^2,
        # w^2 = -1 - w
        a = self.a * other.a - self.b * other.b
        b = self.a * other.b + self.b * other.a - self.b * other.b
        return QOmega(a, b)

    __rmul__ = __mul__

    def conjugate(self) -> "QOmega":
        return QOmega(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "QOmega":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QOmega division by zero")
        conj = self.conjugate()
        return QOmega(conj.a / n, conj.b / n)

    def __truediv__(self, other):
        return self * _qomega(other).inverse()

    def __rtruediv__(self, other):
        return _qomega(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = _qomega(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_rational(self) -> bool:
        return self.b == 0

    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / 3)
        return float(self.a) + float(self.b) * w

    def __repr__(self):
        return f"QOmega({self.a}, {self.b})"


def _qomega(x) -> QOmega:
    if isinstance(x, QOmega):
        return x
    if isinstance(x, (int, Fraction)):
        return QOmega(Fraction(x))
    raise TypeError(f"cannot coerce {type(x).__name__} to QOmega")


OMEGA = QOmega(Fraction(0), Fraction(1))
