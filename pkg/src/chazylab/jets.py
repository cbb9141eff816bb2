"""Truncated Taylor jets: (f, f', ..., f^(n)) at a point.

A tiny forward-mode tower used to push s-derivatives through every
parametric formula exactly once, so z-derivatives can be formed as
d/dz = s'(z) d/ds without any numerical differentiation.  Generic over
the coefficient field: complex for the evaluators, Fraction for the
exact curvature checks.
"""

from __future__ import annotations

from math import comb

from .specfun import principal_power


class Jet:
    __slots__ = ("d",)

    def __init__(self, derivs):
        self.d = tuple(derivs)

    @classmethod
    def constant(cls, value, order):
        zero = value * 0
        return cls((value,) + (zero,) * order)

    @classmethod
    def variable(cls, value, order):
        zero = value * 0
        one = zero + 1
        if order == 0:
            return cls((value,))
        return cls((value, one) + (zero,) * (order - 1))

    @property
    def order(self):
        return len(self.d) - 1

    @property
    def value(self):
        return self.d[0]

    def deriv(self) -> "Jet":
        """The jet of f', one order lower."""
        if self.order == 0:
            raise ValueError("jet order exhausted")
        return Jet(self.d[1:])

    def truncate(self, order) -> "Jet":
        return Jet(self.d[: order + 1])

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        return Jet.constant(self.d[0] * 0 + other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return Jet(tuple(self.d[i] + other.d[i] for i in range(n + 1)))

    __radd__ = __add__

    def __neg__(self):
        return Jet(tuple(-x for x in self.d))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        out = []
        for m in range(n + 1):
            acc = self.d[0] * other.d[m]
            for i in range(1, m + 1):
                acc = acc + comb(m, i) * self.d[i] * other.d[m - i]
            out.append(acc)
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        b0 = other.d[0]
        out = []
        for m in range(n + 1):
            acc = self.d[m]
            for i in range(m):
                acc = acc - comb(m, i) * out[i] * other.d[m - i]
            out.append(acc / b0)
        return Jet(out)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("integer powers only; use jet_cpow for others")
        if n < 0:
            return 1 / (self ** (-n))
        result = Jet.constant(self.d[0] * 0 + 1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"Jet{self.d!r}"


def jet_cpow(f: Jet, p) -> Jet:
    """f**p for complex jets, principal branch at the base point.

    Built from h' = p * h * (f'/f), so only f(0) takes a branch choice.
    """
    h0 = principal_power(f.value, p)
    n = f.order
    if n == 0:
        return Jet((h0,))
    g = f.deriv() / f.truncate(n - 1)  # order n-1 jet of f'/f
    hd = [h0]
    for m in range(n):
        # h^(m+1) = p * (h*g)^(m)
        acc = hd[0] * g.d[m]
        for i in range(1, m + 1):
            acc = acc + comb(m, i) * hd[i] * g.d[m - i]
        hd.append(p * acc)
    return Jet(hd)
