import itertools

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from spindex.clifford import CliffordElement, reversal, volume_element
from spindex.scalars import I, GaussianRational, TrigScalar
from spindex.spin import (
    SpinMatrix,
    chirality_split,
    eigenfactor,
    kappa,
    kappa_generator,
    kernel_check,
    sign_vectors,
    torus_spin_element,
    weight_eigencheck,
    weight_spinor,
)


def to_sympy(m: SpinMatrix) -> sp.Matrix:
    return sp.Matrix([[sp.Rational(v.re.numerator, v.re.denominator) + sp.I * sp.Rational(v.im.numerator, v.im.denominator) for v in row] for row in m.tolist()])


# oracle: the generator table written out with sympy's own Kronecker product
_ID = sp.eye(2)
_G1 = sp.Matrix([[sp.I, 0], [0, -sp.I]])
_G2 = sp.Matrix([[0, sp.I], [sp.I, 0]])
_T = sp.Matrix([[0, -sp.I], [sp.I, 0]])


def oracle_generator(n, i):
    k = n // 2
    if k == 0:
        return sp.Matrix([[sp.I]])
    if i == 2 * k + 1:
        return sp.I * sp.kronecker_product(*([_T] * k)) if k > 1 else sp.I * _T
    j = (i + 1) // 2
    facs = [_ID] * (k - j) + [_G1 if i % 2 else _G2] + [_T] * (j - 1)
    return sp.kronecker_product(*facs) if len(facs) > 1 else facs[0]


@pytest.mark.parametrize("n", range(1, 8))
def test_generators_match_sympy_oracle(n):
    for i in range(1, n + 1):
        assert to_sympy(kappa_generator(n, i)) == oracle_generator(n, i)


def test_generator_examples():
    assert kappa_generator(2, 1).tolist() == [[I, 0], [0, -I]]
    assert kappa_generator(3, 3).tolist() == [[0, 1], [-1, 0]]
    m = kappa_generator(4, 1)
    assert [m.tolist()[j][j] for j in range(4)] == [I, -I, I, -I]
    assert all(m.tolist()[a][b] == 0 for a in range(4) for b in range(4) if a != b)


def test_kappa_examples():
    e1 = CliffordElement.basis(3, 1)
    assert kappa(e1) @ kappa(e1) == SpinMatrix.identity(2).scale(GaussianRational(-1))
    assert kappa(volume_element(2)).tolist() == [[0, -1], [1, 0]]
    assert kappa(CliffordElement.scalar(5, 1)) == SpinMatrix.identity(4)


def test_generator_index_errors():
    with pytest.raises(ValueError):
        kappa_generator(3, 4)
    with pytest.raises(ValueError):
        kappa_generator(3, 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_matrix_anticommutation(n):
    ident = SpinMatrix.identity(2 ** (n // 2))
    gens = [kappa_generator(n, i) for i in range(1, n + 1)]
    for a, b in itertools.product(range(n), repeat=2):
        want = ident.scale(GaussianRational(-2 if a == b else 0))
        assert gens[a] @ gens[b] + gens[b] @ gens[a] == want


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1))))
def test_kappa_multiplicative_on_monomials(case):
    n, a, b = case
    x, y = CliffordElement(n, {a: 1}), CliffordElement(n, {b: 1})
    assert kappa(x * y) == kappa(x) @ kappa(y)


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(*[st.dictionaries(st.integers(0, (1 << n) - 1), st.integers(-3, 3), max_size=3).map(lambda t, n=n: CliffordElement(n, t)) for _ in range(2)])))
def test_kappa_multiplicative_general(pair):
    x, y = pair
    assert kappa(x * y) == kappa(x) @ kappa(y)
    assert kappa(x + y) == kappa(x) + kappa(y)


@pytest.mark.parametrize("n,plus,minus", [(2, I, -I), (4, -1, 1), (6, -I, I), (8, 1, -1)])
def test_volume_eigenvalue_table(n, plus, minus):
    split = chirality_split(n)
    assert split.vol_on_plus == plus
    assert split.vol_on_minus == minus


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_chirality_ranks_and_basis(n):
    split = chirality_split(n)
    half = 2 ** (n // 2 - 1)
    assert split.plus.trace() == half and split.minus.trace() == half
    assert split.plus @ split.plus == split.plus
    for eps in sign_vectors(n // 2):
        u = weight_spinor(eps)
        even = sum(1 for x in eps if x < 0) % 2 == 0
        target = split.plus if even else split.minus
        assert target.apply(u) == u


def test_u_plus_in_delta_plus():
    assert chirality_split(2).plus.apply([GaussianRational(1), -I]) == [1, -I]


def test_chirality_needs_even_n():
    with pytest.raises(ValueError):
        chirality_split(3)


def test_kernel_r8():
    rep = kernel_check(8)
    assert rep.passed
    assert rep.on_plus == {"1": "identity", "-1": "minus identity", "vol": "identity", "-vol": "minus identity"}
    assert rep.on_minus["vol"] == "minus identity"
    assert rep.on_minus["-vol"] == "identity"


def test_kernel_r12_swaps():
    rep = kernel_check(12)
    assert rep.passed
    assert rep.kernel_plus == {"1", "-vol"}


@pytest.mark.parametrize("r", [4, 6])
def test_kernel_check_domain(r):
    with pytest.raises(ValueError):
        kernel_check(r)


def test_torus_element_k1():
    t = torus_spin_element(1)
    assert t == CliffordElement(2, {0: TrigScalar.cos(1), 0b11: TrigScalar.sin(1)}, TrigScalar)
    # phi_1 = 2 pi: (cos pi, sin pi) = (-1, 0)
    assert {b: c.specialize({1: (-1, 0)}) for b, c in t.terms.items()} == {0: -1, 0b11: 0}


def test_torus_element_k2():
    c1, s1, c2, s2 = TrigScalar.cos(1), TrigScalar.sin(1), TrigScalar.cos(2), TrigScalar.sin(2)
    want = CliffordElement(4, {0: c1 * c2, 0b0011: c2 * s1, 0b1100: c1 * s2, 0b1111: s1 * s2}, TrigScalar)
    assert torus_spin_element(2) == want


@pytest.mark.parametrize("k", [1, 2, 3])
def test_torus_element_is_unit(k):
    t = torus_spin_element(k)
    assert t * reversal(t) == CliffordElement.scalar(2 * k, 1, TrigScalar)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8])
def test_weight_eigencheck(n):
    assert weight_eigencheck(n) == []


def test_eigenfactor_examples():
    c1, s1, c2, s2 = TrigScalar.cos(1), TrigScalar.sin(1), TrigScalar.cos(2), TrigScalar.sin(2)
    assert eigenfactor((1,)) == c1 + s1 * I
    assert eigenfactor((1, 1)) == (c1 + s1 * I) * (c2 + s2 * I)
    # index reversal: eps = (1, -1) pairs phi_1 with eps_2 = -1
    assert eigenfactor((1, -1)) == (c1 - s1 * I) * (c2 + s2 * I)


def test_reversed_indexing_is_needed():
    # the unreversed factor fails on a mixed-sign spinor
    kt = kappa(torus_spin_element(2))
    u = weight_spinor((1, -1))
    c1, s1, c2, s2 = TrigScalar.cos(1), TrigScalar.sin(1), TrigScalar.cos(2), TrigScalar.sin(2)
    wrong = (c1 + s1 * I) * (c2 - s2 * I)
    assert kt.apply(u) != [wrong * v for v in u]


def test_weight_eigencheck_limit():
    with pytest.raises(ValueError):
        weight_eigencheck(10)
