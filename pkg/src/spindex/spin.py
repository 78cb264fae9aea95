"""Explicit complex spin representation built from 2x2 tensor factors.

kappa sends the generators of Cl_n to Kronecker products of

    Id = [[1, 0], [0, 1]]     g1 = [[i, 0], [0, -i]]
    g2 = [[0, i], [i, 0]]     T  = [[0, -i], [i, 0]]

with e_{2j-1}, e_{2j} carrying g1, g2 in tensor slot k+1-j (T to its right,
Id to its left), and e_{2k+1} -> i T x ... x T when n = 2k+1 is odd.
Matrices are dense numpy object arrays of exact scalars.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .clifford import CliffordElement, indices_of, max_dim, reversal, volume_element
from .scalars import GaussianRational, I, TrigScalar

__all__ = [
    "SpinMatrix",
    "kappa_generator",
    "kappa",
    "weight_spinor",
    "sign_vectors",
    "ChiralitySplit",
    "chirality_split",
    "KernelReport",
    "kernel_check",
    "torus_spin_element",
    "EigenFailure",
    "weight_eigencheck",
]

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)

ID2 = ((_ONE, _ZERO), (_ZERO, _ONE))
G1 = ((I, _ZERO), (_ZERO, -I))
G2 = ((_ZERO, I), (I, _ZERO))
T = ((_ZERO, -I), (I, _ZERO))


def _array(rows) -> np.ndarray:
    arr = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            arr[i, j] = v
    return arr


class SpinMatrix:
    """Square matrix of exact scalars whose size is a power of two."""

    __slots__ = ("entries", "ring")

    def __init__(self, entries, ring=GaussianRational):
        arr = entries if isinstance(entries, np.ndarray) else _array(entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("spin matrices are square")
        dim = arr.shape[0]
        if dim < 1 or dim & (dim - 1):
            raise ValueError(f"matrix size {dim} is not a power of two")
        self.entries = np.vectorize(ring.coerce, otypes=[object])(arr)
        self.entries.flags.writeable = False
        self.ring = ring

    @classmethod
    def _wrap(cls, arr: np.ndarray, ring) -> SpinMatrix:
        obj = cls.__new__(cls)
        arr.flags.writeable = False
        obj.entries = arr
        obj.ring = ring
        return obj

    @classmethod
    def identity(cls, dim: int, ring=GaussianRational) -> SpinMatrix:
        arr = np.empty((dim, dim), dtype=object)
        arr[...] = ring.zero()
        for i in range(dim):
            arr[i, i] = ring.one()
        return cls._wrap(arr, ring)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other):
        if not isinstance(other, SpinMatrix):
            return NotImplemented
        ring = self._join(other)
        # row-by-row over the nonzero entries of self: generator images are
        # monomial matrices, so this is O(dim^2) in the cases that matter
        a, b = self.entries, other.entries
        zero = ring.zero()
        out = np.empty(a.shape, dtype=object)
        for i in range(a.shape[0]):
            row = None
            for k in range(a.shape[1]):
                c = a[i, k]
                if not c:
                    continue
                term = b[k] if c == 1 else (-b[k] if c == -1 else np.array([c * v for v in b[k]], dtype=object))
                row = term if row is None else row + term
            if row is None:
                out[i, :] = zero
            else:
                out[i, :] = row
        return SpinMatrix._wrap(out, ring)

    def apply(self, vector) -> list:
        vec = np.empty(len(vector), dtype=object)
        vec[:] = list(vector)
        return list(self.entries @ vec)

    def _join(self, other: SpinMatrix):
        if self.dim != other.dim:
            raise ValueError(f"size mismatch {self.dim} vs {other.dim}")
        return TrigScalar if TrigScalar in (self.ring, other.ring) else GaussianRational

    def __add__(self, other):
        if not isinstance(other, SpinMatrix):
            return NotImplemented
        ring = self._join(other)
        return SpinMatrix._wrap(self.entries + other.entries, ring)

    def __sub__(self, other):
        if not isinstance(other, SpinMatrix):
            return NotImplemented
        ring = self._join(other)
        return SpinMatrix._wrap(self.entries - other.entries, ring)

    def __neg__(self):
        return SpinMatrix._wrap(-self.entries, self.ring)

    def scale(self, c) -> SpinMatrix:
        ring = TrigScalar if isinstance(c, TrigScalar) or self.ring is TrigScalar else GaussianRational
        c = ring.coerce(c)
        return SpinMatrix._wrap(np.vectorize(lambda v: c * v, otypes=[object])(self.entries), ring)

    def trace(self):
        total = self.ring.zero()
        for i in range(self.dim):
            total = total + self.entries[i, i]
        return total

    def kron(self, other: SpinMatrix) -> SpinMatrix:
        ring = TrigScalar if TrigScalar in (self.ring, other.ring) else GaussianRational
        return SpinMatrix._wrap(np.kron(self.entries, other.entries), ring)

    def __eq__(self, other):
        if not isinstance(other, SpinMatrix):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(a == b for a, b in zip(self.entries.flat, other.entries.flat))

    def __hash__(self):
        return hash(tuple(self.entries.flat))

    def tolist(self) -> list[list]:
        return self.entries.tolist()

    def __repr__(self):
        rows = ["[" + ", ".join(str(v) for v in row) + "]" for row in self.entries]
        return "SpinMatrix([" + ", ".join(rows) + "])"


def _kron_all(factors) -> np.ndarray:
    out = _array(factors[0])
    for f in factors[1:]:
        out = np.kron(out, _array(f))
    return out


@lru_cache(maxsize=None)
def kappa_generator(n: int, i: int) -> SpinMatrix:
    """Image of e_i in End(C^(2^k)), k = n // 2."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} out of range 1..{n}")
    k = n // 2
    if k == 0:
        # Cl_1 acts on C^1 by e_1 -> i
        return SpinMatrix._wrap(_array([[I]]), GaussianRational)
    if i == 2 * k + 1:
        arr = _kron_all([T] * k)
        return SpinMatrix._wrap(np.vectorize(lambda v: I * v, otypes=[object])(arr), GaussianRational)
    j = (i + 1) // 2
    g = G1 if i % 2 else G2
    return SpinMatrix._wrap(_kron_all([ID2] * (k - j) + [g] + [T] * (j - 1)), GaussianRational)


@lru_cache(maxsize=None)
def _kappa_blade(n: int, blade: int) -> SpinMatrix:
    idx = indices_of(blade)
    if not idx:
        return SpinMatrix.identity(2 ** (n // 2))
    m = kappa_generator(n, idx[0])
    for i in idx[1:]:
        m = m @ kappa_generator(n, i)
    return m


def kappa(x: CliffordElement) -> SpinMatrix:
    """Linear extension of the generator images; an algebra homomorphism."""
    dim = 2 ** (x.n // 2)
    acc = np.empty((dim, dim), dtype=object)
    acc[...] = x.ring.zero()
    for blade, coef in x.terms.items():
        m = _kappa_blade(x.n, blade).entries
        if coef == 1:
            acc = acc + m
        else:
            acc = acc + np.vectorize(lambda v: coef * v, otypes=[object])(m)
    if x.ring is TrigScalar:
        acc = np.vectorize(TrigScalar.coerce, otypes=[object])(acc)
    return SpinMatrix._wrap(acc, x.ring)


def sign_vectors(k: int):
    """All eps in {+1,-1}^k, eps_1 varying fastest, starting from (1, ..., 1)."""
    for rev in product((1, -1), repeat=k):
        yield tuple(reversed(rev))


def weight_spinor(eps) -> list[GaussianRational]:
    """u_eps = u_{eps_1} x ... x u_{eps_k}, unnormalized: u_{+1} = (1, -i), u_{-1} = (1, i)."""
    vec = [_ONE]
    for e in eps:
        if e not in (1, -1):
            raise ValueError(f"signs must be +1 or -1, got {e}")
        second = -I if e == 1 else I
        vec = [v * w for v in vec for w in (_ONE, second)]
    return vec


@dataclass(frozen=True)
class ChiralitySplit:
    n: int
    plus: SpinMatrix
    minus: SpinMatrix
    vol_on_plus: GaussianRational
    vol_on_minus: GaussianRational


def _scalar_on_image(op: SpinMatrix, proj: SpinMatrix):
    """The scalar by which op acts on the image of proj, or None if it is not a scalar."""
    prod = op @ proj
    col = None
    for j in range(proj.dim):
        if any(not proj.entries[i, j].is_zero() for i in range(proj.dim)):
            col = j
            break
    if col is None:
        return None
    row = next(i for i in range(proj.dim) if not proj.entries[i, col].is_zero())
    lam = prod.entries[row, col] / proj.entries[row, col]
    return lam if prod == proj.scale(lam) else None


@lru_cache(maxsize=None)
def chirality_split(n: int) -> ChiralitySplit:
    """Eigenprojectors of the involution psi -> (-i)^(n/2) vol_n . psi and the vol_n eigenvalues."""
    if n < 2 or n % 2:
        raise ValueError("chirality splitting needs an even n >= 2")
    vol = kappa(volume_element(n))
    inv = vol.scale((-I) ** (n // 2))
    ident = SpinMatrix.identity(vol.dim)
    if inv @ inv != ident:
        raise ArithmeticError(f"chirality operator does not square to the identity for n={n}")
    half = GaussianRational(1, 0) / 2
    plus = (ident + inv).scale(half)
    minus = (ident - inv).scale(half)
    on_plus = _scalar_on_image(vol, plus)
    on_minus = _scalar_on_image(vol, minus)
    if on_plus is None or on_minus is None:
        raise ArithmeticError("vol_n is not scalar on a chirality half")
    return ChiralitySplit(n, plus, minus, on_plus, on_minus)


@dataclass
class KernelReport:
    r: int
    # element label -> ("identity" | "minus identity" | "other") on each half
    on_plus: dict = field(default_factory=dict)
    on_minus: dict = field(default_factory=dict)
    kernel_plus: frozenset = frozenset()
    kernel_minus: frozenset = frozenset()
    expected_plus: frozenset = frozenset()
    expected_minus: frozenset = frozenset()
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _classify(op: SpinMatrix, proj: SpinMatrix) -> str:
    prod = op @ proj
    if prod == proj:
        return "identity"
    if prod == -proj:
        return "minus identity"
    return "other"


def kernel_check(r: int) -> KernelReport:
    """Evaluate the half-spin representations on {1, -1, vol_r, -vol_r} and compare
    with the kernels {1, vol_r} / {1, -vol_r} (r = 0 mod 8) and the swapped
    sets for r = 4 mod 8.
    """
    if r % 4:
        raise ValueError("kernel check needs r divisible by 4")
    if r == 4:
        raise ValueError("r = 4 is exempt: Spin(4) half-spin kernels are not finite")
    split = chirality_split(r)
    vol = volume_element(r)
    elements = {
        "1": CliffordElement.scalar(r, 1),
        "-1": CliffordElement.scalar(r, -1),
        "vol": vol,
        "-vol": -vol,
    }
    if r % 8 == 0:
        exp_plus, exp_minus = frozenset({"1", "vol"}), frozenset({"1", "-vol"})
    else:
        exp_plus, exp_minus = frozenset({"1", "-vol"}), frozenset({"1", "vol"})
    report = KernelReport(r, expected_plus=exp_plus, expected_minus=exp_minus)
    for label, x in elements.items():
        m = kappa(x)
        report.on_plus[label] = _classify(m, split.plus)
        report.on_minus[label] = _classify(m, split.minus)
    report.kernel_plus = frozenset(k for k, v in report.on_plus.items() if v == "identity")
    report.kernel_minus = frozenset(k for k, v in report.on_minus.items() if v == "identity")
    for half, got, want in (("+", report.kernel_plus, exp_plus), ("-", report.kernel_minus, exp_minus)):
        for label in sorted(got ^ want):
            report.failures.append((half, label, kappa(elements[label])))
    return report


def torus_spin_element(k: int, n: int | None = None) -> CliffordElement:
    """prod_j (c_j + s_j e_{2j-1} e_{2j}) in Cl_n over TrigScalar (n defaults to 2k)."""
    n = 2 * k if n is None else n
    if k < 1 or 2 * k > n:
        raise ValueError(f"need 1 <= k and 2k <= n, got k={k}, n={n}")
    if n > max_dim():
        raise ValueError(f"dimension {n} exceeds the cap {max_dim()}")
    t = CliffordElement.scalar(n, 1, TrigScalar)
    for j in range(1, k + 1):
        blade = (1 << (2 * j - 2)) | (1 << (2 * j - 1))
        t = t * CliffordElement(n, {0: TrigScalar.cos(j), blade: TrigScalar.sin(j)}, TrigScalar)
    return t


@dataclass(frozen=True)
class EigenFailure:
    eps: tuple
    lhs: tuple
    rhs: tuple


def eigenfactor(eps) -> TrigScalar:
    """prod_j (c_j + i eps_{k+1-j} s_j): the character e^{(i/2) sum_j eps_{k+1-j} phi_j}."""
    k = len(eps)
    out = TrigScalar.one()
    for j in range(1, k + 1):
        out = out * (TrigScalar.cos(j) + TrigScalar.sin(j) * (I * eps[k - j]))
    return out


def weight_eigencheck(n: int) -> list[EigenFailure]:
    """Check kappa(t) u_eps = eigenfactor(eps) u_eps for every sign vector; returns failures."""
    if n > 8:
        raise ValueError("weight_eigencheck is limited to n <= 8")
    k = n // 2
    if k == 0:
        raise ValueError("n must be at least 2")
    t = torus_spin_element(k, n)
    assert t * reversal(t) == CliffordElement.scalar(n, 1, TrigScalar)
    kt = kappa(t)
    failures = []
    for eps in sign_vectors(k):
        u = weight_spinor(eps)
        lhs = kt.apply(u)
        lam = eigenfactor(eps)
        rhs = [lam * v for v in u]
        if any(a != b for a, b in zip(lhs, rhs)):
            failures.append(EigenFailure(eps, tuple(lhs), tuple(rhs)))
    return failures
