"""Congruence conditions for twisted spinor representations to descend.

closed_form_condition transcribes the mod 2 / mod 4 rules case by case;
oracle_condition decides the same question by evaluating every generator of
the finite central subgroup on the weights of Delta_N (x) F.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import product

from .weights import EnumerationGuardError, Factor, RepDescriptor, descends

__all__ = [
    "PowerProfile",
    "UncoveredCase",
    "closed_form_condition",
    "oracle_condition",
    "CrossValidation",
    "cross_validate",
    "ORACLE_GUARD",
]

ORACLE_GUARD = 2**22


class UncoveredCase(ValueError):
    """The requested (r, multiplicities, profile) is outside the transcribed tables."""


@dataclass(frozen=True)
class PowerProfile:
    """Powers of the twisting factors.

    r odd uses u (power of E) and s (power of Delta_r).  r even uses u1, u2
    (E and Ebar for r = 2, 6 mod 8; E1 and E2 for r = 0, 4 mod 8), s for
    Delta_r^+ and t for Delta_r^-.  ``symmetric`` swaps exterior for
    symmetric powers.  ``extra`` holds further factors (mixed products); those
    are only decided by the oracle.
    """

    u: int = 0
    u1: int = 0
    u2: int = 0
    s: int = 0
    t: int = 0
    symmetric: bool = False
    extra: tuple = field(default=())

    def __post_init__(self):
        for name in ("u", "u1", "u2", "s", "t"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer")
        object.__setattr__(self, "extra", tuple(self.extra))
        for f in self.extra:
            if not isinstance(f, Factor):
                raise TypeError("extra entries must be Factor instances")

    def validate(self, desc: RepDescriptor) -> None:
        if desc.r % 2:
            if self.u1 or self.u2 or self.t:
                raise ValueError(f"{desc}: odd rank uses only u and s")
            return
        if self.u:
            raise ValueError(f"{desc}: even rank uses u1, u2 rather than u")
        if desc.r % 4 == 0:
            if self.u1 and desc.m1 == 0:
                raise ValueError("u1 > 0 but E1 is absent (m1 = 0)")
            if self.u2 and desc.m2 == 0:
                raise ValueError("u2 > 0 but E2 is absent (m2 = 0)")

    def factors(self, desc: RepDescriptor) -> list[Factor]:
        self.validate(desc)
        kind = "symmetric" if self.symmetric else "exterior"
        out: list[Factor] = []
        if desc.r % 2:
            if self.u:
                out.append(Factor(kind, self.u, "E"))
            if self.s:
                out.append(Factor("spinor", self.s))
        else:
            b1, b2 = ("E", "Ebar") if desc.residue in (2, 6) else ("E1", "E2")
            if self.u1:
                out.append(Factor(kind, self.u1, b1))
            if self.u2:
                out.append(Factor(kind, self.u2, b2))
            if self.s:
                out.append(Factor("spinor+", self.s))
            if self.t:
                out.append(Factor("spinor-", self.t))
        return out + list(self.extra)

    def __str__(self):
        parts = [f"{k}={getattr(self, k)}" for k in ("u", "u1", "u2", "s", "t") if getattr(self, k)]
        if self.symmetric:
            parts.append("symmetric")
        if self.extra:
            parts.append("extra=" + "*".join(map(str, self.extra)))
        return "(" + ", ".join(parts) + ")" if parts else "(trivial)"


def _even(x: int) -> bool:
    return x % 2 == 0


def closed_form_condition(desc: RepDescriptor, prof: PowerProfile) -> bool:
    """Transcribed descent conditions for Lambda/S powers times spinor powers."""
    if prof.extra:
        raise UncoveredCase("no closed form is stated for mixed products; use oracle_condition")
    prof.validate(desc)
    r, res = desc.r, desc.residue
    u, u1, u2, s, t = prof.u, prof.u1, prof.u2, prof.s, prof.t
    if res in (3, 5):
        if r == 3:
            return _even(desc.m + u + s)
        return _even(u + s)
    if res in (1, 7):
        return _even(u + s) if _even(desc.m) else True
    if res == 4:
        if r == 4:
            return _even(desc.m1 + u1 + t) and _even(desc.m2 + u2 + s)
        return _even(u2 + s) and _even(u1 + t)
    if res == 6:
        extra = 2 * desc.m if r == 6 else 0
        return (
            _even(u1 + u2 + s + t)
            and (extra + u1 + 3 * u2 + s + 3 * t) % 4 == 0
            and (extra + 3 * u1 + u2 + 3 * s + t) % 4 == 0
        )
    if res == 2:
        return (
            _even(u1 + u2 + s + t)
            and (u1 + 3 * u2 + 3 * s + t) % 4 == 0
            and (3 * u1 + u2 + s + 3 * t) % 4 == 0
        )
    # r = 0 mod 8; a zero multiplicity counts as even
    odd1, odd2 = desc.m1 % 2, desc.m2 % 2
    if r == 8:
        if not odd1 and not odd2:
            return _even(u2 + t) and _even(u1 + s)
        if odd1 and not odd2:
            return not _even(u2 + t)
        if not odd1 and odd2:
            return not _even(u1 + s)
        return True
    if not odd1 and not odd2:
        return _even(u2 + t) and _even(u1 + s)
    if odd1 and not odd2:
        return _even(u2 + t)
    if not odd1 and odd2:
        return _even(u1 + s)
    return True


def oracle_condition(desc: RepDescriptor, prof: PowerProfile, max_steps: int = ORACLE_GUARD) -> bool:
    """Weight-level decision: every generator acts as 1 on Delta_N (x) F."""
    return descends(desc, prof.factors(desc), max_steps=max_steps).ok


@dataclass
class CrossValidation:
    points: int = 0
    agreements: int = 0
    disagreements: list = field(default_factory=list)
    # (desc, profile, reason) for points outside the domain or the guard
    skipped: list = field(default_factory=list)

    @property
    def agreed(self) -> bool:
        return not self.disagreements

    def merge(self, other: CrossValidation) -> CrossValidation:
        return CrossValidation(
            self.points + other.points,
            self.agreements + other.agreements,
            self.disagreements + other.disagreements,
            self.skipped + other.skipped,
        )


def cross_validate(sweep: Iterable[tuple[RepDescriptor, PowerProfile]], max_steps: int = ORACLE_GUARD) -> CrossValidation:
    """Evaluate both deciders on every point of a sweep and collect disagreements."""
    report = CrossValidation()
    for desc, prof in sweep:
        try:
            oracle = oracle_condition(desc, prof, max_steps)
        except (ValueError, EnumerationGuardError) as exc:
            report.skipped.append((desc, prof, str(exc)))
            continue
        closed = closed_form_condition(desc, prof)
        report.points += 1
        if closed == oracle:
            report.agreements += 1
        else:
            report.disagreements.append((desc, prof, closed, oracle))
    return report


def profile_sweep(desc: RepDescriptor, max_power: int, symmetric: bool = False):
    """All profiles with every relevant power in 0..max_power."""
    rng = range(max_power + 1)
    if desc.r % 2:
        for u, s in product(rng, rng):
            yield PowerProfile(u=u, s=s, symmetric=symmetric)
        return
    u1_range = rng if (desc.r % 4 or desc.m1) else range(1)
    u2_range = rng if (desc.r % 4 or desc.m2) else range(1)
    for u1, u2, s, t in product(u1_range, u2_range, rng, rng):
        yield PowerProfile(u1=u1, u2=u2, s=s, t=t, symmetric=symmetric)


def descriptor_sweep(r: int, max_mult: int = 3):
    """Descriptors of rank r with multiplicities up to max_mult (zero allowed for r = 0 mod 4)."""
    if r % 4:
        for m in range(1, max_mult + 1):
            yield RepDescriptor(r, m=m)
        return
    for m1, m2 in product(range(max_mult + 1), repeat=2):
        if m1 + m2:
            yield RepDescriptor(r, m1=m1, m2=m2)
