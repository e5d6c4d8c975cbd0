"""Heat-trace coefficients a0, a2, a4 of the conformally rescaled Dirac square.

a0 = 4 F^2 w1 w2 w3; a2 and a4 are evaluated from the machine-readable term
tables in :mod:`bianchi9.seeley_terms`.  Both representations of an
InstantonFrame are supported: exact nome series (with grade bookkeeping
pi^{2n-3} Lambda^{n-2}) and numeric jets (Lambda set to 1).

Orbit sums collapse the cyclotomic phases: summed over a full PSL2(Z) orbit
of parameter points the series has rational coefficients at integer powers of
Q only; ``orbit_sum`` verifies this exactly and down-converts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .instanton import InstantonFrame, TwoParamPoint, frame_two_param_series
from .jets import Jet
from .series import Grade, PuiseuxSeries
from .seeley_terms import A2_TERMS, A4_TERMS


@dataclass(frozen=True)
class CoeffIndex:
    """Which coefficient: n in {0,1,2} meaning a0, a2, a4."""

    n: int

    def __post_init__(self):
        if self.n not in (0, 1, 2):
            raise ValueError("only a0, a2, a4 have closed forms; n must be 0, 1 or 2")

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def grade(self) -> Grade:
        return Grade(2 * self.n - 3, self.n - 2)


@dataclass(frozen=True)
class CoeffResult:
    index: CoeffIndex
    representation: object  # PuiseuxSeries or complex
    source: object = None

    @property
    def is_series(self) -> bool:
        return isinstance(self.representation, PuiseuxSeries)

    def to_json(self) -> dict:
        if self.is_series:
            return {"order": self.index.order, "series": self.representation.to_json()}
        v = complex(self.representation)
        return {"order": self.index.order, "value": [v.real, v.imag]}


def _term_environment(frame: InstantonFrame, max_deriv: int):
    """Map variable names to series (series mode) or jets (jet mode).

    In jet mode each derivative variable is the shifted jet, and everything is
    lowered to the common order frame.order - max_deriv so products line up.
    """
    env = {}
    if frame.mode == "series":
        for j in (1, 2, 3):
            env[f"w{j}"] = frame.w[j - 1][0]
            for k in range(1, max_deriv + 1):
                env[f"w{j}d{k}"] = frame.w[j - 1][k]
        env["F"] = frame.F_[0]
        for k in range(1, max_deriv + 1):
            env[f"Fd{k}"] = frame.F_[k]
        return env
    target = frame.order - max_deriv
    if target < 0:
        raise ValueError(f"frame order {frame.order} too low for derivative depth {max_deriv}")
    for j in (1, 2, 3):
        w = frame.w[j - 1]
        env[f"w{j}"] = Jet(w.comps[: target + 1])
        for k in range(1, max_deriv + 1):
            env[f"w{j}d{k}"] = Jet(w.comps[k : k + target + 1])
    F = frame.F_
    env["F"] = Jet(F.comps[: target + 1])
    for k in range(1, max_deriv + 1):
        env[f"Fd{k}"] = Jet(F.comps[k : k + target + 1])
    return env


def _eval_terms(rows, env):
    """Sum the table rows with a per-variable power cache."""
    cache: dict[tuple[str, int], object] = {}

    def power(var, n):
        key = (var, n)
        if key not in cache:
            if n >= 2:
                cache[key] = power(var, n - 1) * env[var]
            elif n <= -2:
                cache[key] = power(var, n + 1) * power(var, -1)
            else:
                cache[key] = env[var] ** n
        return cache[key]

    parts = []
    for coeff, mono in rows:
        cur = None
        for var, n in mono.items():
            p = power(var, n)
            cur = p if cur is None else cur * p
        if isinstance(cur, PuiseuxSeries):
            cur = cur * coeff
        elif isinstance(cur.comps[0], complex):
            cur = cur * complex(coeff)
        else:
            import mpmath

            cur = cur * mpmath.mpmathify(coeff)
        parts.append(cur)
    if isinstance(parts[0], PuiseuxSeries) or not isinstance(parts[0].comps[0], complex):
        total = parts[0]
        for cur in parts[1:]:
            total = total + cur
        return total
    # float jet mode: the monomials cancel massively (sums ~1e3 x the result),
    # so an exactly rounded final summation per component buys several digits
    order = parts[0].order
    comps = tuple(
        complex(
            math.fsum(p.comps[k].real for p in parts),
            math.fsum(p.comps[k].imag for p in parts),
        )
        for k in range(order + 1)
    )
    return Jet(comps)


def a0(frame: InstantonFrame) -> CoeffResult:
    """a0 = 4 F^2 w1 w2 w3."""
    idx = CoeffIndex(0)
    if frame.mode == "series":
        F, w1, w2, w3 = frame.F_[0], frame.w[0][0], frame.w[1][0], frame.w[2][0]
        series = (F * F * w1 * w2 * w3) * 4
        assert series.grade == idx.grade
        return CoeffResult(idx, series)
    env = _term_environment(frame, 0)
    return CoeffResult(idx, 4 * env["F"] ** 2 * env["w1"] * env["w2"] * env["w3"])


def a2(frame: InstantonFrame) -> CoeffResult:
    idx = CoeffIndex(1)
    result = _eval_terms(A2_TERMS, _term_environment(frame, 2))
    if frame.mode == "series":
        assert result.grade == idx.grade
    return CoeffResult(idx, result)


def a4(frame: InstantonFrame) -> CoeffResult:
    idx = CoeffIndex(2)
    result = _eval_terms(A4_TERMS, _term_environment(frame, 4))
    if frame.mode == "series":
        assert result.grade == idx.grade
    return CoeffResult(idx, result)


_COEFF_FUNCS = {0: a0, 1: a2, 2: a4}


def coefficient(frame: InstantonFrame, index: CoeffIndex) -> CoeffResult:
    return _COEFF_FUNCS[index.n](frame)


def orbit_sum(orbit, index: CoeffIndex, trunc: int = 6) -> CoeffResult:
    """Exact sum of the coefficient series over all points of an orbit.

    The sum must come out with rational coefficients at integer exponents
    only; anything else signals a bug and raises.  The result is returned on
    the integer exponent grid.
    """
    points = getattr(orbit, "points", orbit)
    # a_{2n}[p,q] = a_{2n}[-p,-q] exactly: under (p,q) -> (-p,-q) the frame
    # maps to (-w1, w2, -w3, F) and every table monomial has even total degree
    # in the (w1, w3) block, so conjugate pairs contribute identical series.
    todo: dict[tuple, int] = {}
    for pt in points:
        p, q = (Fraction(pt.p), Fraction(pt.q)) if hasattr(pt, "p") else (Fraction(pt[0]), Fraction(pt[1]))
        partner = ((-p) % 1, (-q) % 1)
        if partner in todo and partner != (p, q):
            todo[partner] += 1
        else:
            todo[(p, q)] = todo.get((p, q), 0) + 1
    total = None
    for (p, q), mult in todo.items():
        frame = frame_two_param_series(TwoParamPoint(p, q), trunc)
        res = coefficient(frame, index)
        contrib = res.representation if mult == 1 else res.representation * mult
        total = contrib if total is None else total + contrib
    rational = {}
    for e, c in total.terms.items():
        if not c.is_rational():
            raise ValueError(f"orbit sum left a non-rational coefficient at exponent {e}/{total.exp_den}: {c!r}")
        if e % total.exp_den != 0:
            raise ValueError(f"orbit sum left a non-integer exponent {e}/{total.exp_den}")
        rational[e // total.exp_den] = c.as_rational()
    t = total.trunc
    if t is not None:
        t = t // total.exp_den  # floor: integer horizon
    series = PuiseuxSeries(1, rational, t, total.grade)
    return CoeffResult(index, series, source=points)
