from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bianchi9.cyclotomic import Cyclotomic, cyc_arith, cyclotomic_poly, euler_phi

F = Fraction


def test_roots_of_unity_basics():
    i = Cyclotomic.i()
    assert i * i == F(-1)
    z8 = Cyclotomic.root(8, 1)
    acc = Cyclotomic.one(8)
    for _ in range(8):
        acc = acc * z8
    assert acc == Cyclotomic.one(8)


def test_cyclotomic_poly_small_cases():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert euler_phi(12) == 4


def test_primitive_root_sums_vanish():
    # sum of all n-th roots of unity is zero for n > 1
    for n in (3, 5, 8, 12):
        acc = Cyclotomic.zero(n)
        for k in range(n):
            acc = acc + Cyclotomic.root(n, k)
        assert acc.is_zero()


def test_from_turns():
    assert Cyclotomic.from_turns(F(1, 4), 12) == Cyclotomic.i(12)
    assert Cyclotomic.from_turns(F(1, 2), 4) == F(-1)
    with pytest.raises(ValueError):
        Cyclotomic.from_turns(F(1, 5), 12)


def test_embed_round_trip():
    z3 = Cyclotomic.root(3, 1)
    assert z3.embed(12) == Cyclotomic.root(12, 4)
    x = Cyclotomic(3, [F(2), F(-1, 3)])
    assert abs(complex(x.embed(12)) - complex(x)) < 1e-12


def test_conjugate_gives_modulus_squared():
    x = Cyclotomic(12, [F(1), F(2), F(0), F(-1, 2)])
    norm = x * x.conjugate()
    assert abs(complex(norm) - abs(complex(x)) ** 2) < 1e-12


def test_rational_detection():
    x = Cyclotomic.from_rational(F(7, 3), 8)
    assert x.is_rational()
    assert x.as_rational() == F(7, 3)
    with pytest.raises(ValueError):
        Cyclotomic.root(8, 1).as_rational()


def test_numeric_embedding():
    z = Cyclotomic.from_turns(F(1, 8), 8)
    assert abs(complex(z) - cmath.exp(2j * cmath.pi / 8)) < 1e-12


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.zero(4).inverse()


@st.composite
def _elements(draw, orders=(1, 3, 4, 8, 12)):
    order = draw(st.sampled_from(orders))
    phi = euler_phi(order)
    nums = draw(st.lists(st.integers(-9, 9), min_size=phi, max_size=phi))
    dens = draw(st.lists(st.integers(1, 7), min_size=phi, max_size=phi))
    return Cyclotomic(order, [F(n, d) for n, d in zip(nums, dens)])


@given(_elements(), _elements())
@settings(max_examples=60, deadline=None)
def test_arithmetic_matches_numeric_embedding(a, b):
    for op, f in (("add", complex.__add__), ("sub", complex.__sub__), ("mul", complex.__mul__)):
        got = complex(cyc_arith(a, b, op))
        want = f(complex(a), complex(b))
        assert abs(got - want) <= 1e-9 * (1 + abs(want))


@given(_elements())
@settings(max_examples=40, deadline=None)
def test_inverse_is_two_sided(a):
    if a.is_zero():
        return
    assert a * a.inverse() == Cyclotomic.one(a.order)
    assert a.inverse() * a == Cyclotomic.one(a.order)
