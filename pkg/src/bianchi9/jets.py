"""Fixed-order truncated Taylor jets over the complex numbers.

A Jet stores the value and the first k mu-derivatives of a function at a
point.  Arithmetic propagates derivatives by the Leibniz and quotient rules;
this is how numeric evaluation of w_j, F and the heat-trace coefficients
carries their mu-derivatives along.
"""

from __future__ import annotations

import cmath
from math import comb


class Jet:
    """Value plus derivatives 1..order of a complex function at a point."""

    __slots__ = ("order", "comps")

    def __init__(self, comps, order: int | None = None):
        # plain reals are promoted to complex; richer numeric types (e.g.
        # arbitrary-precision complex numbers) pass through untouched
        comps = tuple(complex(c) if isinstance(c, (int, float)) else c for c in comps)
        if order is None:
            order = len(comps) - 1
        if len(comps) != order + 1:
            raise ValueError("component count must be order + 1")
        self.order = order
        self.comps = comps

    @classmethod
    def constant(cls, value, order: int = 4) -> "Jet":
        return cls((value,) + (0j,) * order)

    @classmethod
    def variable(cls, mu, order: int = 4) -> "Jet":
        """The coordinate function mu itself."""
        comps = [mu, 1.0 + 0j] + [0j] * (order - 1)
        return cls(comps[: order + 1])

    def __getitem__(self, j: int) -> complex:
        return self.comps[j]

    @property
    def value(self) -> complex:
        return self.comps[0]

    def lower(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError("cannot raise jet order")
        return Jet(self.comps[: order + 1])

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jet order mismatch")
            return other
        return Jet.constant(other, self.order)

    def __add__(self, other):
        o = self._coerce(other)
        return Jet(tuple(a + b for a, b in zip(self.comps, o.comps)))

    __radd__ = __add__

    def __neg__(self):
        return Jet(tuple(-a for a in self.comps))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        n = self.order
        out = []
        for j in range(n + 1):
            out.append(sum(comb(j, k) * self.comps[k] * o.comps[j - k] for k in range(j + 1)))
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        scale = max(abs(c) for c in o.comps) or 1.0
        if abs(o.comps[0]) < 1e-12 * scale:
            raise ZeroDivisionError("division by a jet with (near-)zero value")
        n = self.order
        d: list[complex] = []
        for j in range(n + 1):
            s = self.comps[j]
            for k in range(j):
                s -= comb(j, k) * d[k] * o.comps[j - k]
            d.append(s / o.comps[0])
        return Jet(d)

    def __rtruediv__(self, other):
        return Jet.constant(other, self.order) / self

    def __pow__(self, m: int):
        if m == 0:
            return Jet.constant(1.0, self.order)
        if m < 0:
            return (Jet.constant(1.0, self.order) / self) ** (-m)
        r = self
        for _ in range(m - 1):
            r = r * self
        return r

    def sqrt(self) -> "Jet":
        """Principal branch square root, propagated through the order."""
        z0 = self.comps[0]
        if isinstance(z0, complex):
            s0 = cmath.sqrt(z0)
        else:
            import mpmath

            s0 = mpmath.sqrt(z0)
        if s0 == 0:
            raise ZeroDivisionError("square root of a jet with zero value")
        s: list[complex] = [s0]
        for j in range(1, self.order + 1):
            acc = self.comps[j]
            for k in range(1, j):
                acc -= comb(j, k) * s[k] * s[j - k]
            s.append(acc / (2 * s0))
        return Jet(s)

    def __repr__(self):
        return f"Jet({list(self.comps)})"


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    """Dispatch wrapper: op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def jet_log_derivative(a: Jet) -> Jet:
    """The jet of a'/a, one order lower (the top derivative is unknown)."""
    k = a.order
    da = Jet(a.comps[1:])
    low = Jet(a.comps[:k])
    return da / low
