"""Fixed-point contributions to the circle-equivariant index of a twisted Dirac operator.

At an isolated fixed point with tangent exponents q_j and twist exponents n_k,

    mu(P, z) = sum_k z^(-n_k) prod_j 1 / (z^(-q_j/2) - z^(q_j/2)),

computed exactly in w = z^(1/2).  Signs follow the listed order of the q_j:
negating one q_j negates the contribution.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .laurent import HalfIntLaurent, Limit, RationalFunction
from .scalars import as_fraction
from .twist import PowerProfile
from .weights import (
    Factor,
    GroupElementParams,
    RepDescriptor,
    Weight,
    tangent_weight_assignment,
    tensor_weights,
)

__all__ = [
    "FixedPointDatum",
    "IntegralityError",
    "InequalityVerdict",
    "IndexResult",
    "contribution",
    "limits",
    "satisfies_inequality",
    "equivariant_index",
    "generate_tangent_exponents",
    "generate_twist_exponents",
]


class IntegralityError(ValueError):
    """The contribution cannot lie in Z[z, 1/z] after summation (inconsistent data)."""


def _half_integer(x, what: str) -> Fraction:
    x = as_fraction(x)
    if 2 % x.denominator:
        raise ValueError(f"{what} {x} must have denominator dividing 2")
    return x


@dataclass(frozen=True)
class FixedPointDatum:
    name: str
    tangent_exponents: tuple
    twist_exponents: tuple = ()

    def __init__(self, name: str, tangent_exponents: Sequence = (), twist_exponents: Sequence = ()):
        qs = tuple(_half_integer(q, "tangent exponent") for q in tangent_exponents)
        if any(q == 0 for q in qs):
            raise ValueError(
                f"fixed point {name!r} has a zero tangent exponent; only isolated fixed points are supported"
            )
        ns = tuple(_half_integer(n, "twist exponent") for n in twist_exponents)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "tangent_exponents", qs)
        object.__setattr__(self, "twist_exponents", ns)

    def effective_twist(self) -> tuple:
        """An empty twist list stands for the trivial line (single exponent 0)."""
        return self.twist_exponents or (Fraction(0),)


def contribution(fp: FixedPointDatum) -> RationalFunction:
    """mu(P, z) = sum_k w^(sum q - 2 n_k) / prod_j (1 - w^(2 q_j))."""
    qs = fp.tangent_exponents
    if any(q == 0 for q in qs):
        raise ValueError("zero tangent exponent: the fixed point is not isolated")
    total_q = sum(qs, Fraction(0))
    den = HalfIntLaurent.constant(1)
    for q in qs:
        two_q = 2 * q
        if two_q.denominator != 1:
            raise IntegralityError(f"{fp.name}: tangent exponent {q} is not a half-integer")
        den = den * (HalfIntLaurent.constant(1) - HalfIntLaurent.monomial(int(two_q)))
    num = HalfIntLaurent()
    parity = None
    for n in fp.effective_twist():
        e = total_q - 2 * n
        if e.denominator != 1:
            raise IntegralityError(
                f"{fp.name}: exponent sum {total_q} - 2*({n}) is not an integer power of w"
            )
        e = int(e)
        if parity is None:
            parity = e % 2
        elif e % 2 != parity:
            raise IntegralityError(f"{fp.name}: twist exponents mix integral and half-integral powers of z")
        num = num + HalfIntLaurent.monomial(e)
    return RationalFunction(num, den)


def limits(f: RationalFunction) -> tuple[Limit, Limit]:
    return f.limits()


@dataclass(frozen=True)
class InequalityVerdict:
    bound: Fraction  # (1/2) sum |q_i|
    strict: tuple
    nonstrict: tuple

    @property
    def all_strict(self) -> bool:
        return all(self.strict)

    @property
    def all_nonstrict(self) -> bool:
        return all(self.nonstrict)


def satisfies_inequality(fp: FixedPointDatum) -> InequalityVerdict:
    """|n_k| < (1/2) sum |q_i| for each twist exponent, plus the non-strict variant."""
    bound = sum((abs(q) for q in fp.tangent_exponents), Fraction(0)) / 2
    ns = fp.effective_twist()
    return InequalityVerdict(
        bound,
        tuple(abs(n) < bound for n in ns),
        tuple(abs(n) <= bound for n in ns),
    )


@dataclass
class IndexResult:
    total: RationalFunction | None
    classification: str  # zero | rigid | laurent | not-laurent
    laurent: HalfIntLaurent | None = None
    reason: str = ""
    contributions: list = field(default_factory=list)

    @property
    def constant(self) -> Fraction | None:
        if self.classification in ("zero", "rigid"):
            return self.laurent.coeffs.get(0, Fraction(0))
        return None

    def verdict(self, variable: str = "z") -> str:
        if self.classification == "zero":
            return f"vanishes: ind({variable}) = 0"
        if self.classification == "rigid":
            return f"rigid constant {self.constant}"
        if self.classification == "laurent":
            return f"not rigid: ind({variable}) = {self.laurent.format(variable, halve=True)}"
        return "inconsistent: sum is not a Laurent polynomial"


class VanishingViolation(AssertionError):
    """Every fixed point satisfies the strict inequality yet the index is a nonzero Laurent polynomial."""


def equivariant_index(fps: Sequence[FixedPointDatum]) -> IndexResult:
    """Sum the contributions and classify the result."""
    contribs = []
    try:
        for fp in fps:
            contribs.append(contribution(fp))
    except IntegralityError as exc:
        return IndexResult(None, "not-laurent", reason=str(exc), contributions=contribs)
    total = RationalFunction(HalfIntLaurent())
    for c in contribs:
        total = total + c
    lap = total.as_laurent()
    if lap is None:
        return IndexResult(total, "not-laurent", reason="the sum has poles", contributions=contribs)
    if not lap.all_even():
        return IndexResult(total, "not-laurent", lap, "odd powers of w = z^(1/2) remain", contribs)
    if lap.is_zero():
        return IndexResult(total, "zero", lap, contributions=contribs)
    if all(satisfies_inequality(fp).all_strict for fp in fps):
        raise VanishingViolation(f"nonzero Laurent index {lap} although every fixed point satisfies the strict inequality")
    kind = "rigid" if lap.is_constant() else "laurent"
    return IndexResult(total, kind, lap, contributions=contribs)


# ---------------------------------------------------------- exponent tables


def _params(desc: RepDescriptor, t: Sequence, f: Sequence, t_prime: Sequence) -> GroupElementParams:
    th, thp, ph = desc.theta_names(), desc.theta_prime_names(), desc.phi_names()
    for label, values, names in (("t", t, th), ("t_prime", t_prime, thp), ("f", f, ph)):
        if len(values) != len(names):
            raise ValueError(f"{label} needs {len(names)} values for {desc}, got {len(values)}")
    angles = {}
    for names, values, scale in ((th, t, Fraction(1, 2)), (thp, t_prime, Fraction(1, 2)), (ph, f, Fraction(1))):
        for n, v in zip(names, values):
            if isinstance(v, float):
                raise TypeError("exponent values must be exact integers")
            angles[n] = scale * as_fraction(v)
    return GroupElementParams(angles)


def _linear_value(w: Weight, p: GroupElementParams) -> Fraction:
    vals = p.as_dict()
    return sum((c * vals[name] for name, c in w.coeffs), Fraction(0))


def generate_tangent_exponents(desc: RepDescriptor, t: Sequence = (), f: Sequence = (), t_prime: Sequence = ()) -> list[Fraction]:
    """q_i = eta_i with theta_j -> t_j / 2, theta'_j -> t'_j / 2 and phi_j -> f_j."""
    p = _params(desc, t, f, t_prime)
    return [_linear_value(eta, p) for eta in tangent_weight_assignment(desc)]


def generate_twist_exponents(
    desc: RepDescriptor,
    prof: PowerProfile | Sequence[Factor],
    t: Sequence = (),
    f: Sequence = (),
    t_prime: Sequence = (),
) -> list[Fraction]:
    """n_k over all weights of the twisting representation, with multiplicity."""
    p = _params(desc, t, f, t_prime)
    factors = prof.factors(desc) if isinstance(prof, PowerProfile) else list(prof)
    out = []
    for w, mult in tensor_weights(factors, desc).items():
        out.extend([_linear_value(w, p)] * mult)
    return sorted(out, reverse=True)
