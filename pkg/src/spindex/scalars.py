"""Exact coefficient rings for Clifford elements and spin matrices.

Two rings ship here:

``GaussianRational``
    a + b i with a, b rational.

``TrigScalar``
    polynomials in commuting indeterminates c_1, s_1, ..., c_K, s_K standing
    for cos(phi_j/2), sin(phi_j/2), with Gaussian-rational coefficients.  The
    relation s_j^2 = 1 - c_j^2 is applied eagerly, so every element has a
    unique canonical form and equality is decidable by comparing dicts.

Both classes expose ``zero()``, ``one()`` and ``coerce(x)`` class methods,
which is all the Clifford and matrix code needs from a coefficient ring.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational

__all__ = ["GaussianRational", "TrigScalar", "I", "as_fraction"]


def as_fraction(x) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a Fraction; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not exact scalars")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class GaussianRational:
    """Exact complex number re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    # ring protocol
    @classmethod
    def zero(cls) -> GaussianRational:
        return cls(0, 0)

    @classmethod
    def one(cls) -> GaussianRational:
        return cls(1, 0)

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, TrigScalar):
            c = x.constant_value()
            if c is None:
                raise TypeError("TrigScalar with indeterminates is not a GaussianRational")
            return c
        return cls(as_fraction(x), 0)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def _other(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        d = o.norm2()
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational.one() / (self ** (-k))
        result = GaussianRational.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TrigScalar):
            return other == self
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        im = "i" if mag == 1 else f"{mag}i"
        return f"({self.re}{sign}{im})"


I = GaussianRational(0, 1)


# A TrigScalar monomial is a tuple of exponents (c_1, s_1, c_2, s_2, ...),
# trailing zeros stripped so that () is the constant monomial.


def _strip(mono: tuple) -> tuple:
    end = len(mono)
    while end and mono[end - 1] == 0:
        end -= 1
    return mono[:end]


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


def _reduce_monomial(mono: tuple) -> dict:
    """Rewrite s_j^e as s_j^(e mod 2) * (1 - c_j^2)^(e // 2)."""
    base = list(mono)
    pending = []
    for pos in range(1, len(base), 2):
        a = base[pos] // 2
        if a:
            base[pos] -= 2 * a
            pending.append((pos - 1, a))
    result = {_strip(tuple(base)): 1}
    for cpos, a in pending:
        expanded = {}
        for m, coef in result.items():
            for i in range(a + 1):
                factor = [0] * (cpos + 1)
                factor[cpos] = 2 * i
                nm = _strip(_mono_mul(m, tuple(factor)))
                expanded[nm] = expanded.get(nm, 0) + coef * comb(a, i) * (-1) ** i
        result = {m: c for m, c in expanded.items() if c}
    return result


class TrigScalar:
    """Polynomial in c_j = cos(phi_j/2), s_j = sin(phi_j/2) in canonical form."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, coef in (terms or {}).items():
            coef = GaussianRational.coerce(coef)
            for m, k in _reduce_monomial(_strip(tuple(mono))).items():
                acc = clean.get(m, GaussianRational.zero()) + coef * k
                clean[m] = acc
        self.terms = {m: c for m, c in clean.items() if not c.is_zero()}

    @classmethod
    def _raw(cls, terms: dict) -> TrigScalar:
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    # ring protocol
    @classmethod
    def zero(cls) -> TrigScalar:
        return cls._raw({})

    @classmethod
    def one(cls) -> TrigScalar:
        return cls._raw({(): GaussianRational.one()})

    @classmethod
    def coerce(cls, x) -> TrigScalar:
        if isinstance(x, TrigScalar):
            return x
        g = GaussianRational.coerce(x)
        return cls._raw({} if g.is_zero() else {(): g})

    @classmethod
    def cos(cls, j: int) -> TrigScalar:
        """The indeterminate c_j (1-based)."""
        mono = [0] * (2 * j - 1)
        mono[2 * j - 2] = 1
        return cls._raw({tuple(mono): GaussianRational.one()})

    @classmethod
    def sin(cls, j: int) -> TrigScalar:
        """The indeterminate s_j (1-based)."""
        mono = [0] * (2 * j)
        mono[2 * j - 1] = 1
        return cls._raw({tuple(mono): GaussianRational.one()})

    def conjugate(self) -> TrigScalar:
        return TrigScalar._raw({m: c.conjugate() for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self):
        """The GaussianRational value if no indeterminate occurs, else None."""
        if not self.terms:
            return GaussianRational.zero()
        if set(self.terms) == {()}:
            return self.terms[()]
        return None

    def specialize(self, values: dict) -> GaussianRational:
        """Substitute ``{j: (cos_value, sin_value)}`` for every occurring index j."""
        total = GaussianRational.zero()
        for mono, coef in self.terms.items():
            term = coef
            for pos, e in enumerate(mono):
                if not e:
                    continue
                j = pos // 2 + 1
                if j not in values:
                    raise KeyError(f"no value given for index {j}")
                v = GaussianRational.coerce(values[j][pos % 2])
                term = term * v**e
            total = total + term
        return total

    def _other(self, other):
        if isinstance(other, TrigScalar):
            return other
        try:
            return TrigScalar.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            acc = out.get(m)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                out.pop(m, None)
            else:
                out[m] = acc
        return TrigScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return TrigScalar._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                coef = ca * cb
                for m, k in _reduce_monomial(_mono_mul(ma, mb)).items():
                    acc = out.get(m)
                    add = coef * k
                    out[m] = add if acc is None else acc + add
        return TrigScalar._raw({m: c for m, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        g = GaussianRational.coerce(other)
        inv = GaussianRational.one() / g
        return TrigScalar._raw({m: c * inv for m, c in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = TrigScalar.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        c = self.constant_value()
        if c is not None:
            return hash(c)
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"TrigScalar({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            coef = self.terms[mono]
            names = []
            for pos, e in enumerate(mono):
                if e:
                    name = ("c" if pos % 2 == 0 else "s") + str(pos // 2 + 1)
                    names.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(names)
            if not body:
                parts.append(str(coef))
            elif coef == 1:
                parts.append(body)
            elif coef == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{coef}*{body}")
        return " + ".join(parts).replace("+ -", "- ")
