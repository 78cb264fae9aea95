"""Truncated multivariate power series for A-hat and Chern-character expansions."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .scalars import as_fraction
from .weights import Factor, RepDescriptor, Weight, factor_weights, tangent_weight_assignment

__all__ = [
    "TruncatedSeries",
    "ahat_factor_series",
    "formal_genus_truncation",
    "MAX_AHAT_DEGREE",
    "MAX_GENUS_DEGREE",
    "MAX_GENUS_VARIABLES",
]

MAX_AHAT_DEGREE = 16
MAX_GENUS_DEGREE = 6
MAX_GENUS_VARIABLES = 6


class TruncatedSeries:
    """Polynomial in named variables with rational coefficients, truncated at total degree D."""

    __slots__ = ("variables", "degree", "coeffs")

    def __init__(self, variables: Sequence[str], degree: int, coeffs: Mapping[tuple, object] | None = None):
        if degree < 0:
            raise ValueError("truncation degree must be non-negative")
        self.variables = tuple(variables)
        self.degree = degree
        n = len(self.variables)
        clean = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"exponent tuple {exps} does not match variables {self.variables}")
            c = as_fraction(c)
            if c and sum(exps) <= degree:
                clean[exps] = clean.get(exps, 0) + c
        self.coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def constant(cls, variables, degree, c=1) -> TruncatedSeries:
        return cls(variables, degree, {(0,) * len(tuple(variables)): c})

    @classmethod
    def linear(cls, variables, degree, form: Mapping[str, object]) -> TruncatedSeries:
        variables = tuple(variables)
        coeffs = {}
        for name, c in form.items():
            if name not in variables:
                raise ValueError(f"unknown variable {name}")
            e = [0] * len(variables)
            e[variables.index(name)] = 1
            coeffs[tuple(e)] = c
        return cls(variables, degree, coeffs)

    def _check(self, other: TruncatedSeries) -> None:
        if self.variables != other.variables:
            raise ValueError("series in different variables")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.variables, self.degree, other)
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return TruncatedSeries(self.variables, min(self.degree, other.degree), out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.variables, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = as_fraction(other)
            return TruncatedSeries(self.variables, self.degree, {k: v * c for k, v in self.coeffs.items()})
        self._check(other)
        d = min(self.degree, other.degree)
        out: dict[tuple, Fraction] = {}
        for a, ca in self.coeffs.items():
            da = sum(a)
            for b, cb in other.coeffs.items():
                if da + sum(b) > d:
                    continue
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, 0) + ca * cb
        return TruncatedSeries(self.variables, d, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = TruncatedSeries.constant(self.variables, self.degree)
        for _ in range(n):
            out = out * self
        return out

    def compose_univariate(self, coeffs: Sequence[Fraction]) -> TruncatedSeries:
        """sum_i coeffs[i] * self^i, for self without constant term."""
        if self.coeffs.get((0,) * len(self.variables)):
            raise ValueError("substitution needs a series without constant term")
        out = TruncatedSeries(self.variables, self.degree)
        power = TruncatedSeries.constant(self.variables, self.degree)
        for i, c in enumerate(coeffs):
            if i > self.degree:
                break
            if c:
                out = out + power * c
            power = power * self
        return out

    def coefficient(self, exps: Iterable[int] | Mapping[str, int]) -> Fraction:
        if isinstance(exps, Mapping):
            exps = tuple(exps.get(v, 0) for v in self.variables)
        return self.coeffs.get(tuple(exps), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.variables == other.variables and self.degree == other.degree and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.degree, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"TruncatedSeries({self}; deg<={self.degree})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exps in sorted(self.coeffs, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.coeffs[exps]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _ahat_coeffs(D: int) -> tuple[Fraction, ...]:
    # x / (e^{x/2} - e^{-x/2}) = 1 / d(x), d(x) = sum_i (x/2)^{2i} / (2i+1)!
    d = [Fraction(0)] * (D + 1)
    for i in range(0, D // 2 + 1):
        d[2 * i] = Fraction(1, 4**i * factorial(2 * i + 1))
    inv = [Fraction(0)] * (D + 1)
    inv[0] = Fraction(1)
    for n in range(1, D + 1):
        inv[n] = -sum(d[j] * inv[n - j] for j in range(1, n + 1))
    return tuple(inv)


def ahat_factor_series(D: int, variable: str = "x") -> TruncatedSeries:
    """x / (e^{x/2} - e^{-x/2}) through degree D."""
    if not 0 <= D <= MAX_AHAT_DEGREE:
        raise ValueError(f"degree must lie in 0..{MAX_AHAT_DEGREE}")
    return TruncatedSeries((variable,), D, {(i,): c for i, c in enumerate(_ahat_coeffs(D))})


def _exp_coeffs(D: int) -> list[Fraction]:
    return [Fraction(1, factorial(i)) for i in range(D + 1)]


def _linear(variables, D, w: Weight) -> TruncatedSeries:
    return TruncatedSeries.linear(variables, D, w.as_dict())


def formal_genus_truncation(desc: RepDescriptor, factors: Sequence[Factor] | None, D: int) -> TruncatedSeries:
    """prod_eta A-hat(eta), optionally times ch(F) = sum exp(weights of F), through degree D."""
    if not 0 <= D <= MAX_GENUS_DEGREE:
        raise ValueError(f"degree must lie in 0..{MAX_GENUS_DEGREE}")
    variables = tuple(desc.coordinates())
    if len(variables) > MAX_GENUS_VARIABLES:
        raise ValueError(f"{len(variables)} formal variables exceed the limit {MAX_GENUS_VARIABLES}")
    ahat = _ahat_coeffs(D)
    out = TruncatedSeries.constant(variables, D)
    for eta in tangent_weight_assignment(desc):
        out = out * _linear(variables, D, eta).compose_univariate(ahat)
    if factors:
        expc = _exp_coeffs(D)
        for f in factors:
            ch = TruncatedSeries(variables, D)
            for w, mult in factor_weights(f, desc).items():
                term = TruncatedSeries.constant(variables, D) if w.is_zero() else _linear(variables, D, w).compose_univariate(expc)
                ch = ch + term * mult
            out = out * ch
    return out
