"""Truncated Puiseux series in the nome Q = e^{-2 pi mu}.

A series is a finite dict of terms ``{e: c}`` meaning ``sum c * Q^(e/D)`` with
cyclotomic-rational coefficients, known modulo ``Q^(trunc/D)``.  Each series
also carries a grade: an overall factor ``pi^a * Lambda^b`` tracked separately
so that the coefficient data stays rational.

Two interchangeable multiplication kernels are provided: a naive reference
convolution and a Kronecker-substitution kernel that packs the whole
convolution (exponent axis times cyclotomic power basis) into one big-integer
multiply.  Select with the ``SDW_SERIES_KERNEL`` environment variable
(``kronecker``, the default, or ``naive``).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Cyclotomic, Rational, euler_phi, _reduce


@dataclass(frozen=True)
class Grade:
    """Exponents of the overall pi^a * Lambda^b prefactor."""

    pi_exp: int = 0
    lambda_exp: int = 0

    def __add__(self, other: "Grade") -> "Grade":
        return Grade(self.pi_exp + other.pi_exp, self.lambda_exp + other.lambda_exp)

    def __neg__(self) -> "Grade":
        return Grade(-self.pi_exp, -self.lambda_exp)

    def __sub__(self, other: "Grade") -> "Grade":
        return self + (-other)

    def scale(self, n: int) -> "Grade":
        return Grade(self.pi_exp * n, self.lambda_exp * n)


def _as_cyc(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic.from_rational(Fraction(x))


class PuiseuxSeries:
    """Finite nome series with denominator-D exponents and a grade.

    ``terms`` maps integer e to a nonzero Cyclotomic coefficient of Q^(e/D).
    ``trunc`` is the knowledge horizon in the same 1/D units: terms with
    exponent >= trunc are unknown and never stored.  ``trunc=None`` marks an
    exact (polynomial) series.
    """

    __slots__ = ("exp_den", "terms", "trunc", "grade", "_flat")

    def __init__(self, exp_den, terms, trunc, grade=Grade()):
        self._flat = {}  # Kronecker-kernel packing cache; not part of the value
        if exp_den <= 0:
            raise ValueError("exp_den must be positive")
        clean = {}
        for e, c in terms.items():
            c = _as_cyc(c)
            if not c.is_zero() and (trunc is None or e < trunc):
                clean[int(e)] = c
        self.exp_den = int(exp_den)
        self.terms = clean
        self.trunc = None if trunc is None else int(trunc)
        self.grade = grade

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, exp_den=1, trunc=None, grade=Grade()):
        return cls(exp_den, {}, trunc, grade)

    @classmethod
    def constant(cls, value, grade=Grade()):
        return cls(1, {0: _as_cyc(value)}, None, grade)

    @classmethod
    def monomial(cls, exponent: Fraction, value, grade=Grade(), trunc=None):
        exponent = Fraction(exponent)
        d = exponent.denominator
        t = None if trunc is None else math.ceil(Fraction(trunc) * d)
        return cls(d, {exponent.numerator: _as_cyc(value)}, t, grade)

    # -- bookkeeping --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def valuation(self):
        """Order of vanishing in units of 1/exp_den (trunc if no terms)."""
        if self.terms:
            return min(self.terms)
        return self.trunc

    def valuation_frac(self) -> Fraction | None:
        v = self.valuation
        return None if v is None else Fraction(v, self.exp_den)

    def trunc_frac(self) -> Fraction | None:
        return None if self.trunc is None else Fraction(self.trunc, self.exp_den)

    def coefficient(self, exponent) -> Cyclotomic:
        """Coefficient of Q^exponent (a Fraction); errors past the horizon."""
        exponent = Fraction(exponent)
        e = exponent * self.exp_den
        if self.trunc is not None and exponent >= self.trunc_frac():
            raise ValueError(f"exponent {exponent} is beyond the truncation horizon")
        if e.denominator != 1:
            return Cyclotomic.zero()
        return self.terms.get(int(e), Cyclotomic.zero())

    def rescale(self, exp_den: int) -> "PuiseuxSeries":
        """Re-express on a finer exponent grid (exp_den must be a multiple)."""
        if exp_den == self.exp_den:
            return self
        if exp_den % self.exp_den != 0:
            raise ValueError("new exp_den must be a multiple of the old one")
        f = exp_den // self.exp_den
        t = None if self.trunc is None else self.trunc * f
        return PuiseuxSeries(exp_den, {e * f: c for e, c in self.terms.items()}, t, self.grade)

    def compact(self) -> "PuiseuxSeries":
        """Shrink exp_den to the gcd of all exponents (and trunc)."""
        g = 0
        for e in self.terms:
            g = math.gcd(g, e)
        g = math.gcd(g, self.exp_den)
        if g <= 1:
            return self
        t = self.trunc
        if t is not None:
            t = -((-t) // g)  # ceil division keeps the horizon honest
        return PuiseuxSeries(self.exp_den // g, {e // g: c for e, c in self.terms.items()}, t, self.grade)

    def truncate(self, horizon) -> "PuiseuxSeries":
        """Drop terms at or above the given Fraction exponent."""
        horizon = Fraction(horizon)
        t = horizon * self.exp_den
        t = int(t) if t.denominator == 1 else math.ceil(t)
        if self.trunc is not None:
            t = min(t, self.trunc)
        return PuiseuxSeries(self.exp_den, self.terms, t, self.grade)

    def with_grade(self, grade: Grade) -> "PuiseuxSeries":
        return PuiseuxSeries(self.exp_den, self.terms, self.trunc, grade)

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _aligned(a: "PuiseuxSeries", b: "PuiseuxSeries"):
        d = a.exp_den * b.exp_den // math.gcd(a.exp_den, b.exp_den)
        return a.rescale(d), b.rescale(d)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = PuiseuxSeries.constant(other, self.grade)
        if self.grade != other.grade:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError(f"grade mismatch in addition: {self.grade} vs {other.grade}")
        a, b = self._aligned(self, other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, Cyclotomic.zero()) + c
        if a.trunc is None:
            t = b.trunc
        elif b.trunc is None:
            t = a.trunc
        else:
            t = min(a.trunc, b.trunc)
        return PuiseuxSeries(a.exp_den, terms, t, a.grade)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.exp_den, {e: -c for e, c in self.terms.items()}, self.trunc, self.grade)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = PuiseuxSeries.constant(other, self.grade)
        return self + (-other)

    def scale(self, value, dpi: int = 0, dlam: int = 0) -> "PuiseuxSeries":
        """Multiply by a scalar, optionally shifting the grade."""
        c = _as_cyc(value)
        g = self.grade + Grade(dpi, dlam)
        if c.is_zero():
            return PuiseuxSeries(self.exp_den, {}, self.trunc, g)
        return PuiseuxSeries(self.exp_den, {e: v * c for e, v in self.terms.items()}, self.trunc, g)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n == 0:
            return PuiseuxSeries.constant(1)
        if n < 0:
            return self.invert() ** (-n)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def invert(self) -> "PuiseuxSeries":
        return series_invert(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(_as_cyc(1) / _as_cyc(other))
        return self * other.invert()

    def mu_derivative(self) -> "PuiseuxSeries":
        return series_mu_derivative(self)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = self._aligned(self, other)
        return a.terms == b.terms and a.trunc == b.trunc and a.grade == b.grade

    def __repr__(self):
        bits = []
        for e in sorted(self.terms)[:6]:
            bits.append(f"({self.terms[e]!r})Q^({Fraction(e, self.exp_den)})")
        if len(self.terms) > 6:
            bits.append("...")
        g = f" * pi^{self.grade.pi_exp} L^{self.grade.lambda_exp}" if self.grade != Grade() else ""
        t = "" if self.trunc is None else f" + O(Q^{Fraction(self.trunc, self.exp_den)})"
        return "[" + (" + ".join(bits) or "0") + t + "]" + g

    # -- numerics -----------------------------------------------------

    def evaluate(self, q: complex, lam: float = 1.0) -> complex:
        """Numeric value at nome q, including the pi/Lambda prefactor."""
        acc = 0j
        for e, c in self.terms.items():
            acc += complex(c) * q ** (e / self.exp_den)
        return acc * math.pi**self.grade.pi_exp * lam**self.grade.lambda_exp

    def evaluate_mu(self, mu: complex, lam: float = 1.0) -> complex:
        import cmath

        return self.evaluate(cmath.exp(-2 * cmath.pi * mu), lam)

    # -- rational views and serialization -----------------------------

    def as_q_expansion(self) -> dict[int, Fraction]:
        """Integer-exponent rational view; errors if the series is not one."""
        out = {}
        for e, c in self.terms.items():
            r = c.as_rational()  # raises if any coefficient is irrational
            if e % self.exp_den != 0:
                raise ValueError(f"non-integer exponent {Fraction(e, self.exp_den)} present")
            out[e // self.exp_den] = r
        return out

    def to_json(self) -> dict:
        terms = []
        for e in sorted(self.terms):
            c = self.terms[e]
            terms.append(
                {
                    "exp": f"{e}/{self.exp_den}",
                    "order": c.order,
                    "coeffs": [f"{x.numerator}/{x.denominator}" for x in c.coeffs],
                }
            )
        return {
            "exp_den": self.exp_den,
            "grade": {"pi": self.grade.pi_exp, "lambda": self.grade.lambda_exp},
            "terms": terms,
            "trunc": self.trunc,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PuiseuxSeries":
        d = data["exp_den"]
        terms = {}
        for t in data["terms"]:
            e = Fraction(t["exp"])
            terms[int(e * d)] = Cyclotomic(t["order"], [Fraction(x) for x in t["coeffs"]])
        grade = Grade(data["grade"]["pi"], data["grade"]["lambda"])
        return cls(d, terms, data["trunc"], grade)


# ---------------------------------------------------------------------------
# multiplication kernels
# ---------------------------------------------------------------------------


def _mul_setup(a: PuiseuxSeries, b: PuiseuxSeries):
    a, b = PuiseuxSeries._aligned(a, b)
    grade = a.grade + b.grade
    va, vb = a.valuation, b.valuation
    if not a.terms or not b.terms:
        # zero times anything: only the horizon matters
        if a.trunc is None and b.trunc is None:
            t = None
        else:
            cands = []
            if a.trunc is not None and vb is not None:
                cands.append(a.trunc + vb)
            if b.trunc is not None and va is not None:
                cands.append(b.trunc + va)
            t = min(cands) if cands else None
        return a, b, grade, t, True
    cands = []
    if a.trunc is not None:
        cands.append(a.trunc + vb)
    if b.trunc is not None:
        cands.append(b.trunc + va)
    t = min(cands) if cands else None
    return a, b, grade, t, False


def _series_mul_naive(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    a, b, grade, t, trivial = _mul_setup(a, b)
    if trivial:
        return PuiseuxSeries(a.exp_den, {}, t, grade)
    terms: dict[int, Cyclotomic] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = ea + eb
            if t is not None and e >= t:
                continue
            prod = ca * cb
            terms[e] = terms.get(e, Cyclotomic.zero(prod.order)) + prod
    return PuiseuxSeries(a.exp_den, terms, t, grade)


def _series_mul_kronecker(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    a, b, grade, t, trivial = _mul_setup(a, b)
    if trivial:
        return PuiseuxSeries(a.exp_den, {}, t, grade)

    # promote all coefficients to a common cyclotomic order
    order = 1
    for c in list(a.terms.values()) + list(b.terms.values()):
        order = order * c.order // math.gcd(order, c.order)
    phi = euler_phi(order)
    stride = 2 * phi - 1  # cyclotomic degrees never alias across exponents

    # pack on the coarsest common exponent grid, not the full 1/exp_den grid
    g = 0
    va, vb = a.valuation, b.valuation
    for s, v in ((a, va), (b, vb)):
        for e in s.terms:
            g = math.gcd(g, e - v)
    g = g or 1

    den_a, da, ma = _flatten_cached(a, order, stride, g)
    den_b, db, mb = _flatten_cached(b, order, stride, g)

    # one product digit sums at most min(len) cross terms
    bound = min(len(da), len(db)) * ma * mb
    bits = max(8, ((bound.bit_length() + 2 + 7) // 8) * 8)
    nbytes = bits // 8

    def pack(digits):
        buf = bytearray(len(digits) * nbytes)
        neg = 0
        for k, d in enumerate(digits):
            if d > 0:
                buf[k * nbytes : (k + 1) * nbytes] = d.to_bytes(nbytes, "little")
            elif d < 0:
                neg += (-d) << (bits * k)
        return int.from_bytes(bytes(buf), "little") - neg

    z = pack(da) * pack(db)
    nk = len(da) + len(db) - 1
    half = 1 << (bits - 1)
    offset = half * ((1 << (bits * nk)) - 1) // ((1 << bits) - 1)
    z += offset
    raw = z.to_bytes(nk * nbytes + 16, "little")

    den = den_a * den_b
    terms: dict[int, Cyclotomic] = {}
    for e in range(0, nk, stride):
        exp = va + vb + (e // stride) * g
        if t is not None and exp >= t:
            continue
        chunk = raw[e * nbytes : (min(e + stride, nk)) * nbytes]
        poly = [
            int.from_bytes(chunk[k * nbytes : (k + 1) * nbytes], "little") - half
            for k in range(len(chunk) // nbytes)
        ]
        if any(poly):
            terms[exp] = Cyclotomic.from_int_coeffs(order, poly, den)
    return PuiseuxSeries(a.exp_den, terms, t, grade)


def _flatten_cached(s: PuiseuxSeries, order: int, stride: int, grid: int):
    """Integer digit array for Kronecker packing, memoized on the series."""
    key = (order, grid)
    cache = s._flat
    got = cache.get(key)
    if got is not None:
        return got
    v = s.valuation
    den = 1
    rows = {}
    for e, c in s.terms.items():
        cs = c.embed(order).coeffs
        rows[(e - v) // grid] = cs
        for x in cs:
            den = den * x.denominator // math.gcd(den, x.denominator)
    width = max(rows) + 1
    digits = [0] * (width * stride)
    big = 0
    for e, cs in rows.items():
        for j, x in enumerate(cs):
            if x:
                n = x.numerator * (den // x.denominator)
                digits[e * stride + j] = n
                if -n > big or n > big:
                    big = abs(n)
    got = (den, digits, big)
    cache[key] = got
    return got


def series_mul(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    kernel = os.environ.get("SDW_SERIES_KERNEL", "kronecker")
    if kernel == "naive":
        return _series_mul_naive(a, b)
    if kernel == "kronecker":
        return _series_mul_kronecker(a, b)
    raise ValueError(f"unknown series kernel {kernel!r}")


def series_invert(a: PuiseuxSeries) -> PuiseuxSeries:
    """Multiplicative inverse as a truncated series.

    The leading coefficient must be invertible; the result is known to the
    same relative precision as the input.
    """
    if not a.terms:
        raise ZeroDivisionError("cannot invert a series with no known terms")
    v = a.valuation
    lead = a.terms[v]
    lead_inv = lead.inverse()
    grade = -a.grade
    if len(a.terms) == 1:
        t = None if a.trunc is None else a.trunc - 2 * v
        return PuiseuxSeries(a.exp_den, {-v: lead_inv}, t, grade)
    if a.trunc is None:
        raise ValueError("inverse of a multi-term exact series needs a truncation horizon")

    # rebase onto the integer grid generated by the exponent differences
    g = 0
    for e in a.terms:
        g = math.gcd(g, e - v)
    rel = a.trunc - v  # relative precision in 1/exp_den units
    kmax = (rel + g - 1) // g  # indices 0..kmax-1 are known
    f = [Cyclotomic.zero() for _ in range(kmax)]
    for e, c in a.terms.items():
        f[(e - v) // g] = c
    inv = [lead_inv]
    for k in range(1, kmax):
        s = Cyclotomic.zero()
        for j in range(1, k + 1):
            if not f[j].is_zero():
                s = s + f[j] * inv[k - j]
        inv.append(-lead_inv * s)
    terms = {-v + k * g: c for k, c in enumerate(inv)}
    return PuiseuxSeries(a.exp_den, terms, a.trunc - 2 * v, grade)


def series_mu_derivative(a: PuiseuxSeries) -> PuiseuxSeries:
    """d/dmu, using Q = e^{-2 pi mu}: each term picks up -2 pi e/D."""
    d = a.exp_den
    terms = {e: c * Fraction(-2 * e, d) for e, c in a.terms.items()}
    return PuiseuxSeries(d, terms, a.trunc, a.grade + Grade(pi_exp=1))
