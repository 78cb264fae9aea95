from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spindex.scalars import I, GaussianRational, TrigScalar, as_fraction

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, rationals, rationals)


def trig_polys(k=2):
    mono = st.tuples(*[st.integers(0, 3) for _ in range(2 * k)])
    return st.dictionaries(mono, gaussians, max_size=4).map(TrigScalar)


def test_as_fraction_accepts_exact_inputs():
    assert as_fraction(3) == 3
    assert as_fraction("-3/4") == Fraction(-3, 4)
    assert as_fraction(Fraction(1, 2)) == Fraction(1, 2)


@pytest.mark.parametrize("bad", [0.5, True, None, 1j])
def test_as_fraction_refuses_inexact(bad):
    with pytest.raises(TypeError):
        as_fraction(bad)


def test_i_squared():
    assert I * I == -1
    assert I**4 == 1
    assert (1 / I) == -I


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a


@given(gaussians, gaussians)
def test_conjugation(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a * a.conjugate() == a.norm2()


def test_gaussian_zero_division():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_trig_reduction_is_eager():
    c, s = TrigScalar.cos(1), TrigScalar.sin(1)
    assert s * s == 1 - c * c
    assert s * s * s == s - c * c * s
    # canonical form has no s_j power above one
    assert all(e <= 1 for m in (s**5).terms for e in m[1::2])


def test_trig_double_angle_identity():
    c, s = TrigScalar.cos(2), TrigScalar.sin(2)
    cos_phi, sin_phi = c * c - s * s, 2 * c * s
    assert cos_phi * cos_phi + sin_phi * sin_phi == 1


@given(trig_polys(), trig_polys(), trig_polys())
def test_trig_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == TrigScalar.zero()


@given(trig_polys(), trig_polys())
def test_specialize_is_a_ring_map(a, b):
    # Pythagorean points keep s^2 = 1 - c^2 exact
    point = {1: (Fraction(3, 5), Fraction(4, 5)), 2: (Fraction(-5, 13), Fraction(12, 13))}
    assert (a * b).specialize(point) == a.specialize(point) * b.specialize(point)
    assert (a + b).specialize(point) == a.specialize(point) + b.specialize(point)


def test_specialize_missing_index():
    with pytest.raises(KeyError):
        TrigScalar.cos(2).specialize({1: (1, 0)})


def test_constant_value():
    assert TrigScalar.coerce(I).constant_value() == I
    assert TrigScalar.cos(1).constant_value() is None
