"""Laurent polynomials and rational functions in w = z^(1/2) over Q."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .scalars import as_fraction

__all__ = ["HalfIntLaurent", "RationalFunction", "Limit"]


class HalfIntLaurent:
    """Finite sum of c_k w^k, k in Z, c_k rational and nonzero."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        clean = {}
        for k, c in (coeffs or {}).items():
            if not isinstance(k, int):
                raise TypeError(f"w-exponents must be integers, got {k!r}")
            c = as_fraction(c)
            if c:
                clean[k] = clean.get(k, 0) + c
        self.coeffs = {k: c for k, c in clean.items() if c}

    @classmethod
    def _raw(cls, coeffs: dict) -> HalfIntLaurent:
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def constant(cls, c) -> HalfIntLaurent:
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> HalfIntLaurent:
        return cls({k: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def low(self) -> int:
        if not self.coeffs:
            raise ValueError("zero has no degree")
        return min(self.coeffs)

    def high(self) -> int:
        if not self.coeffs:
            raise ValueError("zero has no degree")
        return max(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def all_even(self) -> bool:
        return all(k % 2 == 0 for k in self.coeffs)

    def shift(self, k: int) -> HalfIntLaurent:
        return HalfIntLaurent._raw({e + k: c for e, c in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, HalfIntLaurent):
            other = HalfIntLaurent.constant(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return HalfIntLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfIntLaurent._raw({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, HalfIntLaurent):
            other = HalfIntLaurent.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, HalfIntLaurent):
            c = as_fraction(other)
            return HalfIntLaurent._raw({k: v * c for k, v in self.coeffs.items() if v * c})
        out: dict[int, Fraction] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + ca * cb
        return HalfIntLaurent._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            # only a monomial is a unit
            if len(self.coeffs) != 1:
                raise ValueError("negative powers need a monomial")
            ((k, c),) = self.coeffs.items()
            return HalfIntLaurent._raw({-k * -n: 1 / c ** -n})
        out = HalfIntLaurent.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def divmod_exact(self, other: HalfIntLaurent) -> HalfIntLaurent | None:
        """The Laurent quotient self / other if it exists, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return HalfIntLaurent()
        a, b = self.low(), other.low()
        num = {k - a: c for k, c in self.coeffs.items()}
        den = {k - b: c for k, c in other.coeffs.items()}
        dhigh = max(den)
        lead = den[dhigh]
        quot: dict[int, Fraction] = {}
        while num:
            nhigh = max(num)
            if nhigh < dhigh:
                return None
            c = num[nhigh] / lead
            e = nhigh - dhigh
            quot[e] = c
            for k, v in den.items():
                nv = num.get(k + e, 0) - c * v
                if nv:
                    num[k + e] = nv
                else:
                    num.pop(k + e, None)
        return HalfIntLaurent._raw(quot).shift(a - b)

    def __call__(self, w):
        w = as_fraction(w)
        return sum((c * w**k for k, c in self.coeffs.items()), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, HalfIntLaurent):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == HalfIntLaurent.constant(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return f"HalfIntLaurent({self})"

    def __str__(self):
        return self.format("w")

    def format(self, var: str = "w", halve: bool = False) -> str:
        """Render; with halve=True the exponents are divided by two (w^2 -> var)."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            e = Fraction(k, 2) if halve else Fraction(k)
            if e == 0:
                mono = ""
            elif e == 1:
                mono = var
            else:
                mono = f"{var}^{e}" if e.denominator == 1 and e > 0 else f"{var}^({e})"
            if not mono:
                term = str(abs(c))
            elif abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


@dataclass(frozen=True)
class Limit:
    """Limit of a rational function at 0 or infinity: a value, or divergence."""

    value: Fraction | None

    @property
    def divergent(self) -> bool:
        return self.value is None

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return "divergent" if self.value is None else str(self.value)


class RationalFunction:
    """num / den with Laurent numerator and nonzero Laurent denominator.

    Normalized so that the denominator has lowest w-degree 0 and leading
    coefficient 1; no polynomial gcd is taken.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: HalfIntLaurent, den: HalfIntLaurent | None = None):
        den = HalfIntLaurent.constant(1) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        shift = -den.low()
        lead = den.coeffs[den.high()]
        self.num = num.shift(shift) * (1 / lead)
        self.den = den.shift(shift) * (1 / lead)

    @classmethod
    def from_laurent(cls, p: HalfIntLaurent) -> RationalFunction:
        return cls(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(HalfIntLaurent.constant(other))
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(HalfIntLaurent.constant(other) if not isinstance(other, HalfIntLaurent) else other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(HalfIntLaurent.constant(other) if not isinstance(other, HalfIntLaurent) else other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, HalfIntLaurent):
                other = RationalFunction(other)
            else:
                try:
                    other = RationalFunction(HalfIntLaurent.constant(other))
                except TypeError:
                    return NotImplemented
        return self.num * other.den == other.num * self.den

    # equal functions have many representations, so no hash
    __hash__ = None

    def as_laurent(self) -> HalfIntLaurent | None:
        """The Laurent polynomial equal to self, or None if there is none."""
        return self.num.divmod_exact(self.den)

    def limits(self) -> tuple[Limit, Limit]:
        """Limits as w -> 0 and w -> infinity (equivalently z -> 0, infinity)."""
        if self.num.is_zero():
            return Limit(Fraction(0)), Limit(Fraction(0))
        nl, dl = self.num.low(), self.den.low()
        nh, dh = self.num.high(), self.den.high()
        if nl > dl:
            at0 = Limit(Fraction(0))
        elif nl == dl:
            at0 = Limit(self.num.coeffs[nl] / self.den.coeffs[dl])
        else:
            at0 = Limit(None)
        if nh < dh:
            atinf = Limit(Fraction(0))
        elif nh == dh:
            atinf = Limit(self.num.coeffs[nh] / self.den.coeffs[dh])
        else:
            atinf = Limit(None)
        return at0, atinf

    def __call__(self, w):
        d = self.den(w)
        if d == 0:
            raise ZeroDivisionError(f"pole at w = {w}")
        return self.num(w) / d

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == HalfIntLaurent.constant(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"
