"""Exact Clifford algebra Cl_n with e_i e_j + e_j e_i = -2 delta_ij.

Basis monomials e_{i_1} ... e_{i_k} (i_1 < ... < i_k) are stored as bit
patterns: bit ``i - 1`` is set when e_i occurs.  Coefficients live in one of
the rings from :mod:`spindex.scalars`.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Mapping

from .scalars import GaussianRational, TrigScalar

__all__ = [
    "DEFAULT_MAX_DIM",
    "max_dim",
    "CliffordElement",
    "blade_sign",
    "clifford_product",
    "reversal",
    "volume_element",
    "vector_conjugation",
    "indices_of",
    "blade_of",
]

DEFAULT_MAX_DIM = 12


def max_dim() -> int:
    """Dimension cap; ``SPINDEX_MAX_DIM`` in the environment overrides the default."""
    raw = os.environ.get("SPINDEX_MAX_DIM")
    if raw is None or raw == "":
        return DEFAULT_MAX_DIM
    value = int(raw)
    if value < 1:
        raise ValueError("SPINDEX_MAX_DIM must be a positive integer")
    return value


def indices_of(blade: int) -> tuple[int, ...]:
    """1-based generator indices present in a bit pattern."""
    out = []
    i = 1
    while blade:
        if blade & 1:
            out.append(i)
        blade >>= 1
        i += 1
    return tuple(out)


def blade_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"generator index must be positive, got {i}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated generator index {i}; use the product instead")
        mask |= bit
    return mask


def blade_sign(a: int, b: int) -> int:
    """Sign of e_A e_B relative to e_{A xor B}.

    Counts the transpositions needed to merge the sorted index lists and
    adds one factor -1 for every shared generator (e_i^2 = -1).
    """
    swaps = 0
    x = a >> 1
    while x:
        swaps += (x & b).bit_count()
        x >>= 1
    swaps += (a & b).bit_count()
    return -1 if swaps & 1 else 1


class CliffordElement:
    """Immutable element of Cl_n (complexified) over a coefficient ring."""

    __slots__ = ("n", "terms", "ring")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None, ring=GaussianRational):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"dimension must be a positive integer, got {n!r}")
        cap = max_dim()
        if n > cap:
            raise ValueError(f"dimension {n} exceeds the cap {cap} (set SPINDEX_MAX_DIM)")
        full = (1 << n) - 1
        clean = {}
        for blade, coef in (terms or {}).items():
            if blade & ~full or blade < 0:
                raise ValueError(f"basis index {indices_of(blade)} does not fit in Cl_{n}")
            coef = ring.coerce(coef)
            if coef.is_zero():
                continue
            clean[blade] = coef
        self.n = n
        self.terms = clean
        self.ring = ring

    # constructors
    @classmethod
    def scalar(cls, n: int, value=1, ring=GaussianRational) -> CliffordElement:
        return cls(n, {0: value}, ring)

    @classmethod
    def basis(cls, n: int, *indices: int, coef=1, ring=GaussianRational) -> CliffordElement:
        """The monomial coef * e_{i_1} ... e_{i_k}, indices given in any order."""
        elt = cls.scalar(n, coef, ring)
        for i in indices:
            if not 1 <= i <= n:
                raise ValueError(f"generator index {i} out of range 1..{n}")
            elt = elt * cls(n, {1 << (i - 1): 1}, ring)
        return elt

    @classmethod
    def vector(cls, coeffs: Iterable, ring=GaussianRational) -> CliffordElement:
        coeffs = list(coeffs)
        return cls(len(coeffs), {1 << i: c for i, c in enumerate(coeffs)}, ring)

    def with_ring(self, ring) -> CliffordElement:
        return CliffordElement(self.n, {b: ring.coerce(c) for b, c in self.terms.items()}, ring)

    # queries
    def grades(self) -> set[int]:
        return {b.bit_count() for b in self.terms}

    def is_even(self) -> bool:
        return all(b.bit_count() % 2 == 0 for b in self.terms)

    def is_vector(self) -> bool:
        return all(b.bit_count() == 1 for b in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, *indices: int):
        return self.terms.get(blade_of(indices), self.ring.zero())

    # arithmetic
    def _check(self, other: CliffordElement) -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: Cl_{self.n} vs Cl_{other.n}")
        if self.ring is not other.ring:
            raise TypeError(
                f"coefficient ring mismatch: {self.ring.__name__} vs {other.ring.__name__}"
            )

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.n, other, self.ring)
        self._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out[b] + c if b in out else c
        return CliffordElement(self.n, out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.n, {b: -c for b, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.n, other, self.ring)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_product(self, other)
        c = self.ring.coerce(other)
        return CliffordElement(self.n, {b: v * c for b, v in self.terms.items()}, self.ring)

    def __rmul__(self, other):
        c = self.ring.coerce(other)
        return CliffordElement(self.n, {b: c * v for b, v in self.terms.items()}, self.ring)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            try:
                other = CliffordElement.scalar(self.n, other, self.ring)
            except TypeError:
                return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"CliffordElement(n={self.n}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for b in sorted(self.terms, key=lambda x: (x.bit_count(), indices_of(x))):
            name = "".join(f"e{i}" for i in indices_of(b))
            coef = self.terms[b]
            if not name:
                parts.append(str(coef))
            elif coef == 1:
                parts.append(name)
            elif coef == -1:
                parts.append("-" + name)
            else:
                parts.append(f"({coef}){name}")
        return " + ".join(parts)


def clifford_product(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    x._check(y)
    zero = x.ring.zero()
    out: dict[int, object] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c = ca * cb
            if blade_sign(a, b) < 0:
                c = -c
            key = a ^ b
            out[key] = out.get(key, zero) + c
    return CliffordElement(x.n, out, x.ring)


def reversal(x: CliffordElement) -> CliffordElement:
    out = {}
    for b, c in x.terms.items():
        k = b.bit_count()
        out[b] = -c if (k * (k - 1) // 2) % 2 else c
    return CliffordElement(x.n, out, x.ring)


def volume_element(n: int, ring=GaussianRational) -> CliffordElement:
    """e_1 e_2 ... e_n."""
    return CliffordElement(n, {(1 << n) - 1: 1}, ring)


def vector_conjugation(g: CliffordElement, y: CliffordElement) -> CliffordElement:
    """g y reversal(g) for an even unit g and a vector y.

    Raises ValueError if g is not even, g reversal(g) != 1, or y is not a vector.
    """
    if g.ring is not y.ring:
        if y.ring is GaussianRational and g.ring is TrigScalar:
            y = y.with_ring(TrigScalar)
        else:
            g._check(y)
    if not g.is_even():
        raise ValueError("g must lie in the even subalgebra")
    if not y.is_vector():
        raise ValueError("y must be a vector (degree 1)")
    g_rev = reversal(g)
    if g * g_rev != CliffordElement.scalar(g.n, 1, g.ring):
        raise ValueError("g * reversal(g) != 1, so g is not a unit spin element")
    out = g * y * g_rev
    if not out.is_vector():
        raise ArithmeticError("conjugation left the vector subspace")
    return out
