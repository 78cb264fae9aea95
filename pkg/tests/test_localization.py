import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spindex.laurent import HalfIntLaurent, RationalFunction
from spindex.localization import (
    FixedPointDatum,
    IntegralityError,
    contribution,
    equivariant_index,
    generate_tangent_exponents,
    generate_twist_exponents,
    limits,
    satisfies_inequality,
)
from spindex.suites import bound_profiles, random_isolated_assignment, random_strict_fixed_point
from spindex.twist import PowerProfile
from spindex.weights import RepDescriptor

W = HalfIntLaurent.monomial(1)
ONE = HalfIntLaurent.constant(1)
H = Fraction(1, 2)


def direct(qs, ns):
    """Oracle: sum_k z^(-n_k) prod_j 1 / (z^(-q_j/2) - z^(q_j/2)) evaluated at z = w^2."""

    def f(w):
        w = Fraction(w)
        total = Fraction(0)
        for n in ns or [0]:
            term = w ** int(-2 * n)
            for q in qs:
                term /= w ** int(-q) - w ** int(q)
            total += term
        return total

    return f


def test_contribution_examples():
    assert contribution(FixedPointDatum("P", [1])) == RationalFunction(ONE, W**-1 - W)
    assert contribution(FixedPointDatum("P", [1, 1])) == RationalFunction(ONE, (W**-1 - W) ** 2)
    assert contribution(FixedPointDatum("P", [1], [0])) == contribution(FixedPointDatum("P", [1]))


@given(
    st.lists(st.integers(-6, 6).filter(bool), min_size=1, max_size=4),
    st.lists(st.integers(-6, 6), max_size=3),
    st.sampled_from([2, 3, Fraction(1, 2), Fraction(-5, 3)]),
)
def test_contribution_matches_direct_formula(qs, twice_ns, w):
    ns = [Fraction(k, 2) for k in twice_ns]
    if sum(qs) % 2:  # keep exponents integral in w
        qs = qs + [1]
    ns = [n for n in ns if (sum(qs) - 2 * n).denominator == 1 and int(sum(qs) - 2 * n) % 2 == int(sum(qs)) % 2]
    fp = FixedPointDatum("P", qs, ns)
    assert contribution(fp)(w) == direct(qs, ns)(w)


def test_orientation_sign():
    a = contribution(FixedPointDatum("P", [1, 2]))
    b = contribution(FixedPointDatum("P", [1, -2]))
    assert a == -b


def test_zero_exponent_rejected():
    with pytest.raises(ValueError):
        FixedPointDatum("P", [1, 0])
    with pytest.raises(ValueError):
        FixedPointDatum("P", [Fraction(1, 3)])


def test_integrality_gate():
    with pytest.raises(IntegralityError):
        contribution(FixedPointDatum("P", [1, H], [0]))
    with pytest.raises(IntegralityError):
        contribution(FixedPointDatum("P", [1, 1], [0, H]))


def test_inequality_examples():
    v = satisfies_inequality(FixedPointDatum("P", [1, 1], [0]))
    assert v.all_strict and v.bound == 1
    v = satisfies_inequality(FixedPointDatum("P", [1, 1], [1]))
    assert not v.all_strict and v.all_nonstrict
    assert satisfies_inequality(FixedPointDatum("P", [3, -1], [Fraction(3, 2)])).all_strict


def test_index_examples():
    s4 = [FixedPointDatum("P1", [1, 1]), FixedPointDatum("P2", [1, -1])]
    res = equivariant_index(s4)
    assert res.classification == "zero" and res.verdict() == "vanishes: ind(z) = 0"
    res = equivariant_index(s4[:1])
    assert res.classification == "not-laurent"
    assert res.verdict() == "inconsistent: sum is not a Laurent polynomial"
    assert equivariant_index([]).classification == "zero"


def test_rigid_verdict():
    # 1/(1 - w^4) + 1/(1 - w^-4) = 1
    fps = [FixedPointDatum("N", [2], [1]), FixedPointDatum("S", [-2], [-1])]
    res = equivariant_index(fps)
    assert res.classification == "rigid" and res.constant == 1
    assert res.verdict() == "rigid constant 1"


def test_twisted_s4_datum_vanishes():
    fps = [FixedPointDatum("P1", [1, 1], [1]), FixedPointDatum("P2", [1, -1], [1])]
    assert equivariant_index(fps).classification == "zero"


def test_circle_on_s2_vanishes():
    # S^2 rotation: q = 1 at the north pole, q = -1 at the south pole; index of the
    # spin Dirac operator on S^2 vanishes
    res = equivariant_index([FixedPointDatum("N", [1]), FixedPointDatum("S", [-1])])
    assert res.classification == "zero"


def test_nonrigid_example():
    # twist by the line with n = 2 at both poles of S^2 with q = +-2
    fps = [FixedPointDatum("N", [2], [2]), FixedPointDatum("S", [-2], [-2])]
    res = equivariant_index(fps)
    assert res.classification == "laurent"
    assert res.verdict() == "not rigid: ind(z) = z + z^(-1)"


@pytest.mark.parametrize("seed", range(20))
def test_strict_fixed_points_have_zero_limits(seed):
    rng = random.Random(seed)
    for _ in range(10):
        fp = random_strict_fixed_point(rng)
        assert satisfies_inequality(fp).all_strict
        lo, hi = limits(contribution(fp))
        assert lo.is_zero and hi.is_zero


def test_tangent_exponent_examples():
    assert sorted(generate_tangent_exponents(RepDescriptor(3, m=1), [3], [1]), reverse=True) == [2, 1]
    q7 = generate_tangent_exponents(RepDescriptor(7, m=1), [], [1, 1, 1])
    assert sorted(q7, reverse=True) == [Fraction(3, 2), -H, -H, -H]
    q4 = generate_tangent_exponents(RepDescriptor(4, m1=0, m2=1), [], [1, 1], t_prime=[2])
    assert sorted(q4, reverse=True) == [2, 0]


def test_exponent_length_mismatch():
    with pytest.raises(ValueError):
        generate_tangent_exponents(RepDescriptor(3, m=1), [1, 2], [1])
    with pytest.raises(TypeError):
        generate_tangent_exponents(RepDescriptor(3, m=1), [1.5], [1])


def test_twist_exponent_examples():
    d = RepDescriptor(3, m=1)
    assert generate_twist_exponents(d, PowerProfile(s=1), [0], [1]) == [H, -H]
    assert generate_twist_exponents(d, PowerProfile(u=1), [3], [0]) == [Fraction(3, 2), Fraction(-3, 2)]
    assert generate_twist_exponents(d, PowerProfile(), [3], [1]) == [0]


@pytest.mark.parametrize("r", [3, 5, 7])
@pytest.mark.parametrize("symmetric", [False, True])
def test_twist_bounds(r, symmetric):
    rng = random.Random(f"bounds-{r}-{symmetric}")
    for m in (1, 2, 3):
        desc = RepDescriptor(r, m=m)
        for _ in range(25):
            t, f, qs = random_isolated_assignment(rng, desc)
            bound = sum(abs(q) for q in qs) / 2
            for prof in bound_profiles(desc, symmetric):
                assert all(abs(n) < bound for n in generate_twist_exponents(desc, prof, t, f))


def test_degenerate_assignment_breaks_strictness():
    # a non-isolated fixed point (some q = 0) can reach the bound
    desc = RepDescriptor(3, m=2)
    qs = generate_tangent_exponents(desc, [2, 0], [0])
    assert 0 in qs
    bound = sum(abs(q) for q in qs) / 2
    ns = generate_twist_exponents(desc, PowerProfile(u=1), [2, 0], [0])
    assert max(abs(n) for n in ns) == bound


def test_symmetric_power_extreme_exponent():
    # u t_1 / 2 is the largest symmetric-power exponent and stays below the bound
    desc = RepDescriptor(5, m=3)
    t, f = [5, 1, 1], [1, 2]
    qs = generate_tangent_exponents(desc, t, f)
    ns = generate_twist_exponents(desc, PowerProfile(u=2, symmetric=True), t, f)
    assert max(ns) == Fraction(2 * 5, 2)
    assert max(ns) < sum(abs(q) for q in qs) / 2
