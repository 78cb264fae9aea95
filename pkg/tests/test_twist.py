import pytest
from hypothesis import given
from hypothesis import strategies as st

from spindex.twist import (
    CrossValidation,
    PowerProfile,
    UncoveredCase,
    closed_form_condition,
    cross_validate,
    descriptor_sweep,
    oracle_condition,
    profile_sweep,
)
from spindex.weights import EnumerationGuardError, Factor, RepDescriptor

P = PowerProfile


def test_closed_form_examples():
    assert not closed_form_condition(RepDescriptor(3, m=1), P(u=1, s=1))
    assert closed_form_condition(RepDescriptor(3, m=2), P(u=1, s=1))


@given(st.integers(1, 3).map(lambda j: 8 * j + 1), st.integers(0, 2).map(lambda j: 2 * j + 1), st.integers(0, 5), st.integers(0, 5))
def test_r1_odd_m_always_true(r, m, u, s):
    assert closed_form_condition(RepDescriptor(r, m=m), P(u=u, s=s))


def test_oracle_examples():
    assert not oracle_condition(RepDescriptor(3, m=1), P(u=1, s=1))
    d4 = RepDescriptor(4, m1=1, m2=1)
    assert not oracle_condition(d4, P(u1=1, t=1))
    assert not oracle_condition(d4, P(u1=1))
    assert oracle_condition(d4, P(u1=1, u2=1))
    assert oracle_condition(RepDescriptor(5, m=2), P())


def test_r3_classical_rule():
    for m in range(1, 5):
        for u in range(3):
            for s in range(4):
                assert closed_form_condition(RepDescriptor(3, m=m), P(u=u, s=s)) == ((m + u + s) % 2 == 0)


def test_r8_parity_split():
    assert closed_form_condition(RepDescriptor(8, m1=1, m2=2), P(u2=1))
    assert not closed_form_condition(RepDescriptor(8, m1=1, m2=2), P())
    assert closed_form_condition(RepDescriptor(8, m1=1, m2=1), P())


def test_extra_factors_are_oracle_only():
    prof = P(u=1, extra=(Factor("symmetric", 1, "E"),))
    d = RepDescriptor(3, m=2)
    with pytest.raises(UncoveredCase):
        closed_form_condition(d, prof)
    # Lambda^1 E (x) S^1 E has the same parity as u = 2, so it descends iff m is even
    assert oracle_condition(d, prof)
    assert not oracle_condition(RepDescriptor(3, m=1), prof)


def test_profile_validation():
    with pytest.raises(ValueError):
        closed_form_condition(RepDescriptor(3, m=1), P(u1=1))
    with pytest.raises(ValueError):
        closed_form_condition(RepDescriptor(6, m=1), P(u=1))
    with pytest.raises(ValueError):
        closed_form_condition(RepDescriptor(8, m1=0, m2=1), P(u1=1))
    with pytest.raises(ValueError):
        P(u=-1)


def _mod2_cases():
    for r in (3, 5, 7, 9, 4, 12, 8, 16):
        yield from descriptor_sweep(r, 3)


@pytest.mark.parametrize("desc", list(_mod2_cases()), ids=str)
def test_stability_under_adding_two(desc):
    for prof in profile_sweep(desc, 2):
        base = closed_form_condition(desc, prof)
        for name in ("u", "u1", "u2", "s", "t"):
            if not getattr(prof, name):
                continue
            bumped = P(**{k: getattr(prof, k) + (2 if k == name else 0) for k in ("u", "u1", "u2", "s", "t")})
            assert closed_form_condition(desc, bumped) == base


def test_cross_validate_r3():
    sweep = [(RepDescriptor(3, m=m), P(u=u, s=s)) for m in range(1, 5) for u in range(4) for s in range(4)]
    cv = cross_validate(sweep)
    assert cv.agreed
    # Lambda^3 of the rank-2 bundle for m = 1 is out of domain
    assert cv.points == 60 and len(cv.skipped) == 4
    assert all(d.m == 1 and p.u == 3 for d, p, _ in cv.skipped)


def test_cross_validate_r6():
    sweep = [(d, p) for d in (RepDescriptor(6, m=1), RepDescriptor(6, m=2)) for p in profile_sweep(d, 2)]
    cv = cross_validate(sweep)
    assert cv.agreed and cv.points + len(cv.skipped) == 2 * 81
    # E has rank m, so Lambda^2 E is out of domain for m = 1
    assert all(d.m == 1 and "exceeds dim" in why for d, _, why in cv.skipped)


def test_empty_sweep():
    cv = cross_validate([])
    assert cv.agreed and cv.points == 0


def test_merge():
    a = CrossValidation(2, 2, [], [])
    b = CrossValidation(3, 2, [("x",)], [("y",)])
    m = a.merge(b)
    assert (m.points, m.agreements, len(m.disagreements), len(m.skipped)) == (5, 4, 1, 1)


def test_guard_is_reported_as_skip():
    d = RepDescriptor(9, m=2)
    prof = P(u=2, s=2)
    with pytest.raises(EnumerationGuardError):
        oracle_condition(d, prof, max_steps=10)
    cv = cross_validate([(d, prof)], max_steps=10)
    assert cv.points == 0 and len(cv.skipped) == 1


@pytest.mark.parametrize("r", range(3, 10))
@pytest.mark.parametrize("symmetric", [False, True])
def test_full_sweep_agreement(r, symmetric):
    sweep = ((d, p) for d in descriptor_sweep(r, 3) for p in profile_sweep(d, 3, symmetric))
    cv = cross_validate(sweep)
    assert cv.disagreements == []
    assert cv.points > 0


@pytest.mark.parametrize("r", [10, 12, 14, 16, 17])
def test_higher_rank_agreement(r):
    sweep = ((d, p) for d in descriptor_sweep(r, 2) for p in profile_sweep(d, 1))
    assert cross_validate(sweep).agreed
