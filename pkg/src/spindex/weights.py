"""Torus weights for the structure groups of rank-r even Clifford structures.

Coordinates are named ``theta{j}`` (first classical factor), ``theta'{j}``
(second factor, r = 0, 4 mod 8) and ``phi{j}`` (maximal torus of Spin(r)).
Group elements on a torus are recorded as angles in units of pi, so a weight
w evaluates at p to the root of unity exp(i pi w(p)).
"""

from __future__ import annotations

import re
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product

from .scalars import as_fraction
from .spin import sign_vectors

__all__ = [
    "Weight",
    "GroupElementParams",
    "RootOfUnity",
    "Factor",
    "RepDescriptor",
    "SpinWeights",
    "ActionResult",
    "DescentResult",
    "EnumerationGuardError",
    "delta_weights",
    "tangent_weight_assignment",
    "standard_weights",
    "factor_weights",
    "evaluate_weight",
    "group_element",
    "structure_group_generators",
    "element_action_on_rep",
    "delta_n_action",
    "iter_delta_n_weights",
    "descends",
]

_NAME = re.compile(r"^(theta'|theta|phi)([1-9][0-9]*)$")
_KIND_ORDER = {"theta": 0, "theta'": 1, "phi": 2}


def _coord_key(name: str) -> tuple[int, int]:
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"bad torus coordinate name {name!r}")
    return _KIND_ORDER[m.group(1)], int(m.group(2))


def _fmt_coef(c: Fraction, name: str, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if mag == 1:
        body = name
    elif mag.denominator == 1:
        body = f"{mag.numerator}{name}"
    elif mag.numerator == 1:
        body = f"{name}/{mag.denominator}"
    else:
        body = f"{mag.numerator}{name}/{mag.denominator}"
    return (sign + body) if first else f" {sign} {body}"


class Weight:
    """Linear form on a torus: coordinate name -> rational coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[str, object] | None = None):
        clean = {}
        for name, c in (coeffs or {}).items():
            _coord_key(name)
            c = as_fraction(c)
            if c:
                clean[name] = c
        self.coeffs = tuple(sorted(clean.items(), key=lambda kv: _coord_key(kv[0])))

    @classmethod
    def _raw(cls, items: dict) -> Weight:
        obj = cls.__new__(cls)
        obj.coeffs = tuple(sorted(((k, v) for k, v in items.items() if v), key=lambda kv: _coord_key(kv[0])))
        return obj

    @classmethod
    def zero(cls) -> Weight:
        return cls._raw({})

    @classmethod
    def coordinate(cls, name: str, coef=1) -> Weight:
        return cls({name: coef})

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.coeffs)

    def __getitem__(self, name: str) -> Fraction:
        return dict(self.coeffs).get(name, Fraction(0))

    def coordinates(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: Weight) -> Weight:
        if not isinstance(other, Weight):
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs:
            out[k] = out.get(k, 0) + v
        return Weight._raw(out)

    def __neg__(self) -> Weight:
        return Weight._raw({k: -v for k, v in self.coeffs})

    def __sub__(self, other: Weight) -> Weight:
        return self + (-other)

    def __mul__(self, c) -> Weight:
        c = as_fraction(c)
        return Weight._raw({k: c * v for k, v in self.coeffs})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Weight({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        return "".join(_fmt_coef(c, k, i == 0) for i, (k, c) in enumerate(self.coeffs))


@dataclass(frozen=True)
class RootOfUnity:
    """exp(i pi q) with q a rational reduced into [0, 2)."""

    q: Fraction

    def __init__(self, q=0):
        object.__setattr__(self, "q", as_fraction(q) % 2)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        return RootOfUnity(self.q + other.q)

    def __pow__(self, k: int) -> RootOfUnity:
        return RootOfUnity(self.q * k)

    def inverse(self) -> RootOfUnity:
        return RootOfUnity(-self.q)

    def is_one(self) -> bool:
        return self.q == 0

    def is_sign(self) -> bool:
        return self.q in (0, 1)

    def __str__(self):
        names = {Fraction(0): "1", Fraction(1): "-1", Fraction(1, 2): "i", Fraction(3, 2): "-i"}
        return names.get(self.q, f"exp(i pi {self.q})")


@dataclass(frozen=True)
class GroupElementParams:
    """Torus element: coordinate -> angle in units of pi."""

    angles: tuple = ()
    label: str = ""

    def __init__(self, angles: Mapping[str, object] | Iterable = (), label: str = ""):
        items = angles.items() if isinstance(angles, Mapping) else angles
        clean = {}
        for name, a in items:
            _coord_key(name)
            clean[name] = as_fraction(a)
        object.__setattr__(self, "angles", tuple(sorted(clean.items(), key=lambda kv: _coord_key(kv[0]))))
        object.__setattr__(self, "label", label)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.angles)

    def __add__(self, other: GroupElementParams) -> GroupElementParams:
        out = self.as_dict()
        for k, v in other.angles:
            out[k] = out.get(k, 0) + v
        label = f"{self.label}*{other.label}" if self.label and other.label else ""
        return GroupElementParams(out, label)

    def __str__(self):
        body = ", ".join(f"{k}={v}pi" for k, v in self.angles)
        return f"{self.label} ({body})" if self.label else f"({body})"


def evaluate_weight(w: Weight, p: GroupElementParams) -> RootOfUnity:
    angles = p.as_dict()
    total = Fraction(0)
    for name, c in w.coeffs:
        if name not in angles:
            raise ValueError(f"coordinate {name} is not assigned in {p}")
        total += c * angles[name]
    return RootOfUnity(total)


# ---------------------------------------------------------------- descriptors

_BUNDLES = {"E", "Ebar", "E1", "E2"}
_KINDS = {"exterior", "symmetric", "spinor", "spinor+", "spinor-", "delta_N", "trivial"}


@dataclass(frozen=True)
class Factor:
    """One tensor factor: exterior/symmetric power of a standard bundle,
    a tensor power of Delta_r or Delta_r^+-, Delta_N itself, or the trivial line."""

    kind: str
    power: int = 1
    bundle: str | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if not isinstance(self.power, int) or self.power < 0:
            raise ValueError("factor powers are non-negative integers")
        if self.kind in ("exterior", "symmetric"):
            if self.bundle not in _BUNDLES:
                raise ValueError(f"{self.kind} power needs a bundle among {sorted(_BUNDLES)}")
        elif self.bundle is not None:
            raise ValueError(f"{self.kind} factor takes no bundle")

    def __str__(self):
        if self.kind == "exterior":
            return f"L^{self.power}{self.bundle}"
        if self.kind == "symmetric":
            return f"S^{self.power}{self.bundle}"
        if self.kind == "spinor":
            return f"Delta_r^{self.power}"
        if self.kind in ("spinor+", "spinor-"):
            return f"Delta_r{self.kind[-1]}^{self.power}"
        return self.kind


@dataclass(frozen=True)
class RepDescriptor:
    """Rank r and multiplicities of an almost even-Clifford Hermitian structure.

    r = 1, 2, 3, 5, 6, 7 mod 8 take a single multiplicity m; r = 0, 4 mod 8 take
    (m1, m2), either of which may be zero but not both.
    """

    r: int
    m: int | None = None
    m1: int | None = None
    m2: int | None = None

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 3:
            raise ValueError("rank r must be an integer >= 3")
        if self.r % 4 == 0:
            if self.m is not None:
                raise ValueError(f"r = {self.r} takes multiplicities m1, m2, not m")
            m1 = 0 if self.m1 is None else self.m1
            m2 = 0 if self.m2 is None else self.m2
            if not (isinstance(m1, int) and isinstance(m2, int)) or m1 < 0 or m2 < 0 or m1 + m2 == 0:
                raise ValueError("multiplicities m1, m2 must be non-negative and not both zero")
            object.__setattr__(self, "m1", m1)
            object.__setattr__(self, "m2", m2)
        else:
            if self.m1 is not None or self.m2 is not None:
                raise ValueError(f"r = {self.r} takes a single multiplicity m")
            if not isinstance(self.m, int) or self.m < 1:
                raise ValueError("multiplicity m must be a positive integer")

    @property
    def residue(self) -> int:
        return self.r % 8

    @property
    def k(self) -> int:
        return self.r // 2

    @property
    def groups(self) -> tuple[str, ...]:
        """Classical factors in order: 'SO', 'U' or 'Sp', one or two of them."""
        res = self.residue
        if res in (1, 7):
            return ("SO",)
        if res in (2, 6):
            return ("U",)
        if res in (3, 5):
            return ("Sp",)
        if res == 4:
            return ("Sp", "Sp")
        return ("SO", "SO")

    def multiplicities(self) -> tuple[int, ...]:
        return (self.m,) if self.m is not None else (self.m1, self.m2)

    def theta_names(self) -> list[str]:
        return self._names("theta", 0)

    def theta_prime_names(self) -> list[str]:
        return self._names("theta'", 1) if len(self.groups) == 2 else []

    def _names(self, prefix: str, slot: int) -> list[str]:
        group = self.groups[slot]
        mult = self.multiplicities()[slot]
        count = mult // 2 if group == "SO" else mult
        return [f"{prefix}{j}" for j in range(1, count + 1)]

    def phi_names(self) -> list[str]:
        return [f"phi{j}" for j in range(1, self.k + 1)]

    def coordinates(self) -> list[str]:
        return self.theta_names() + self.theta_prime_names() + self.phi_names()

    @property
    def N(self) -> int:
        """Real dimension of the manifold."""
        return 2 * len(tangent_weight_assignment(self))

    def bundles(self) -> tuple[str, ...]:
        if self.residue in (2, 6):
            return ("E", "Ebar")
        if len(self.groups) == 2:
            return tuple(b for b, mult in (("E1", self.m1), ("E2", self.m2)) if mult > 0)
        return ("E",)

    def __str__(self):
        if self.m is not None:
            return f"r={self.r}, m={self.m}"
        return f"r={self.r}, m1={self.m1}, m2={self.m2}"


# ------------------------------------------------------------ spinor weights


@dataclass(frozen=True)
class SpinWeights:
    r: int
    lam: tuple = ()  # r odd
    plus: tuple = ()  # r even
    minus: tuple = ()

    def all(self) -> tuple:
        return self.lam if self.r % 2 else self.plus + self.minus


def _spin_weight(eps: Sequence[int]) -> Weight:
    return Weight._raw({f"phi{j + 1}": Fraction(e, 2) for j, e in enumerate(eps)})


def _reflection_order(signs: list[tuple]) -> list[tuple]:
    """First half: sign vectors with eps_k = +1; second half: their negations, same order."""
    first = [e for e in signs if e[-1] == 1]
    return first + [tuple(-x for x in e) for e in first]


@lru_cache(maxsize=None)
def delta_weights(r: int) -> SpinWeights:
    """Weights (+-phi_1 +- ... +- phi_k)/2 of Delta_r (r odd) or Delta_r^+- (r even)."""
    if r < 2:
        raise ValueError("delta_weights needs r >= 2")
    k = r // 2
    signs = list(sign_vectors(k))
    even = [e for e in signs if sum(1 for x in e if x < 0) % 2 == 0]
    odd = [e for e in signs if sum(1 for x in e if x < 0) % 2 == 1]
    if r % 2:
        return SpinWeights(r, lam=tuple(_spin_weight(e) for e in even + odd))
    if r % 4 == 0:
        even, odd = _reflection_order(even), _reflection_order(odd)
    return SpinWeights(r, plus=tuple(map(_spin_weight, even)), minus=tuple(map(_spin_weight, odd)))


def _bare_tail(weights: Sequence[Weight]) -> list[Weight]:
    """One weight from each +- pair, keeping the first seen."""
    seen: set[Weight] = set()
    out = []
    for w in weights:
        if w in seen or -w in seen:
            continue
        seen.add(w)
        out.append(w)
    return out


def _paired(thetas: Sequence[str], lams: Sequence[Weight]) -> list[Weight]:
    return [Weight.coordinate(t) + lam for t in thetas for lam in lams]


@lru_cache(maxsize=None)
def _r4_pairing(r: int) -> str:
    """Decide which Sp factor pairs with Delta_r^+ by requiring every structure
    group generator to act trivially on the tangent weights."""
    probe = RepDescriptor(r, m1=1, m2=1)
    for choice in ("complexified", "literal"):
        etas = _r4_weights(probe, choice)
        if all(evaluate_weight(eta, p).is_one() for p in structure_group_generators(probe) for eta in etas):
            return choice
    raise ArithmeticError(f"no chirality pairing is consistent for r = {r}")


def _r4_weights(desc: RepDescriptor, choice: str) -> list[Weight]:
    sw = delta_weights(desc.r)
    th, thp = desc.theta_names(), desc.theta_prime_names()
    if choice == "literal":
        return _paired(th, sw.plus) + _paired(thp, sw.minus)
    return _paired(thp, sw.plus) + _paired(th, sw.minus)


@lru_cache(maxsize=None)
def tangent_weight_assignment(desc: RepDescriptor) -> tuple[Weight, ...]:
    """Formal roots eta_1..eta_{N/2} of the complexified tangent bundle."""
    sw = delta_weights(desc.r)
    res = desc.residue
    th = desc.theta_names()
    if res in (1, 7):
        out = _paired(th, sw.lam)
        if desc.m % 2:
            if res == 7:
                tail = list(sw.lam[: len(sw.lam) // 2])
            else:
                # the even half is closed under negation when k is even
                tail = [w for w in sw.lam if w[f"phi{desc.k}"] > 0]
            out += tail
        return tuple(out)
    if res == 2:
        return tuple(_paired(th, sw.plus))
    if res == 6:
        return tuple(_paired(th, sw.minus))
    if res in (3, 5):
        return tuple(_paired(th, sw.lam))
    if res == 4:
        return tuple(_r4_weights(desc, _r4_pairing(desc.r)))
    # r = 0 mod 8
    thp = desc.theta_prime_names()
    half = len(sw.plus) // 2
    out = _paired(th, sw.plus)
    if desc.m1 % 2:
        out += list(sw.plus[:half])
    out += _paired(thp, sw.minus)
    if desc.m2 % 2:
        out += list(sw.minus[:half])
    return tuple(out)


def standard_weights(desc: RepDescriptor, bundle: str) -> list[Weight]:
    """Weights of the standard representation behind E, Ebar, E1 or E2."""
    if bundle not in desc.bundles():
        raise ValueError(f"bundle {bundle} does not exist for {desc}")
    res = desc.residue
    if res in (2, 6):
        sign = 1 if bundle == "E" else -1
        return [Weight.coordinate(t, sign) for t in desc.theta_names()]
    if bundle == "E2":
        names, group, mult = desc.theta_prime_names(), desc.groups[1], desc.m2
    else:
        names, group, mult = desc.theta_names(), desc.groups[0], desc.multiplicities()[0]
    out = [Weight.coordinate(t) for t in names] + [Weight.coordinate(t, -1) for t in names]
    if group == "SO" and mult % 2:
        out.append(Weight.zero())
    return out


def _spinor_list(desc: RepDescriptor, kind: str) -> tuple[Weight, ...]:
    sw = delta_weights(desc.r)
    if kind == "spinor":
        if desc.r % 2 == 0:
            raise ValueError("Delta_r factors for even r must be chiral (spinor+ / spinor-)")
        return sw.lam
    if desc.r % 2:
        raise ValueError("chiral spinor factors need an even rank")
    return sw.plus if kind == "spinor+" else sw.minus


def _tuples(weights: Sequence[Weight], power: int, symmetric: bool):
    pick = combinations_with_replacement if symmetric else combinations
    for combo in pick(range(len(weights)), power):
        total = Weight.zero()
        for i in combo:
            total = total + weights[i]
        yield total


def factor_weights(factor: Factor, desc: RepDescriptor) -> Counter:
    """Multiset of weights of a single factor."""
    kind = factor.kind
    if kind == "trivial":
        return Counter({Weight.zero(): 1})
    if kind == "delta_N":
        return Counter(iter_delta_n_weights(desc))
    if kind in ("exterior", "symmetric"):
        base = standard_weights(desc, factor.bundle)
        if kind == "exterior" and factor.power > len(base):
            raise ValueError(
                f"exterior power {factor.power} exceeds dim {len(base)} of {factor.bundle}"
            )
        return Counter(_tuples(base, factor.power, kind == "symmetric"))
    base = _spinor_list(desc, kind)
    out = Counter({Weight.zero(): 1})
    for _ in range(factor.power):
        nxt = Counter()
        for w, c in out.items():
            for b in base:
                nxt[w + b] += c
        out = nxt
    return out


def tensor_weights(factors: Iterable[Factor], desc: RepDescriptor) -> Counter:
    out = Counter({Weight.zero(): 1})
    for f in factors:
        fw = factor_weights(f, desc)
        nxt = Counter()
        for a, ca in out.items():
            for b, cb in fw.items():
                nxt[a + b] += ca * cb
        out = nxt
    return out


def iter_delta_n_weights(desc: RepDescriptor) -> Iterator[Weight]:
    """Lazily enumerate the 2^(N/2) weights (+-eta_1 +- ... +- eta_{N/2})/2."""
    halves = [eta * Fraction(1, 2) for eta in tangent_weight_assignment(desc)]
    for signs in product((1, -1), repeat=len(halves)):
        total = Weight.zero()
        for s, h in zip(signs, halves):
            total = total + h if s > 0 else total - h
        yield total


# ------------------------------------------------------ structure group data

_SPIN_PARTS = ("1", "-1", "vol", "-vol")
_GROUP_PARTS = {"Id": Fraction(0), "-Id": Fraction(1), "iId": Fraction(1, 2), "-iId": Fraction(-1, 2)}


def group_element(desc: RepDescriptor, parts: Sequence[str]) -> GroupElementParams:
    """Torus parameters of an element given as (group parts..., spin part).

    Group parts are 'Id', '-Id' (and 'iId', '-iId' on U(m)); one entry per
    classical factor, absent factors (multiplicity 0) included.  The spin part
    is '1', '-1', 'vol' or '-vol'.
    """
    groups = desc.groups
    if len(parts) != len(groups) + 1:
        raise ValueError(f"expected {len(groups) + 1} parts for {desc}, got {len(parts)}")
    *gparts, spart = parts
    if spart not in _SPIN_PARTS:
        raise ValueError(f"unknown Spin(r) element {spart!r}")
    angles: dict[str, Fraction] = {}
    name_lists = (desc.theta_names(), desc.theta_prime_names())
    mults = desc.multiplicities()
    for slot, (group, part) in enumerate(zip(groups, gparts)):
        if part not in _GROUP_PARTS:
            raise ValueError(f"unknown group element {part!r}")
        if part in ("iId", "-iId") and group != "U":
            raise ValueError(f"{part} only makes sense on U(m)")
        if part == "-Id" and group == "SO" and mults[slot] % 2:
            raise ValueError("-Id does not lie in SO(m) for odd m")
        for name in name_lists[slot]:
            angles[name] = _GROUP_PARTS[part]
    phis = desc.phi_names()
    for i, name in enumerate(phis):
        if spart == "1":
            angles[name] = Fraction(0)
        elif spart == "-1":
            angles[name] = Fraction(2 if i == 0 else 0)
        elif spart == "vol":
            angles[name] = Fraction(1)
        else:
            angles[name] = Fraction(-1 if i == 0 else 1)
    return GroupElementParams(angles, "(" + ", ".join(parts) + ")")


def _generator_parts(desc: RepDescriptor) -> list[tuple[str, ...]]:
    res = desc.residue
    if res in (1, 7):
        return [("-Id", "-1")] if desc.m % 2 == 0 else []
    if res in (3, 5):
        return [("-Id", "-1")]
    if res in (2, 6):
        return [("-Id", "-1"), ("iId", "-vol")]
    if res == 4:
        return [("-Id", "-Id", "-1"), ("Id", "-Id", "vol")]
    odd1, odd2 = desc.m1 % 2, desc.m2 % 2
    if not odd1 and not odd2:
        return [("-Id", "-Id", "-1"), ("Id", "-Id", "vol")]
    if not odd1 and odd2:
        return [("-Id", "Id", "-vol")]
    if odd1 and not odd2:
        return [("Id", "-Id", "vol")]
    return []


def structure_group_generators(desc: RepDescriptor) -> list[GroupElementParams]:
    """Generators of the finite central subgroup dividing G x Spin(r)."""
    return [group_element(desc, parts) for parts in _generator_parts(desc)]


# ------------------------------------------------------------------- actions


class EnumerationGuardError(RuntimeError):
    """Raised when an oracle enumeration would exceed its work budget."""


@dataclass(frozen=True)
class ActionResult:
    value: RootOfUnity | None
    # for a non-scalar action: (weight_a, value_a, weight_b, value_b)
    witness: tuple | None = None

    @property
    def is_scalar(self) -> bool:
        return self.value is not None


def _result(values: dict) -> ActionResult:
    items = list(values.items())
    if len(items) == 1:
        return ActionResult(items[0][0])
    (va, wa), (vb, wb) = items[0], items[1]
    return ActionResult(None, (wa, va, wb, vb))


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def spend(self, n: int) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise EnumerationGuardError(f"enumeration exceeded {self.limit} steps")


def _value_map_delta_n(desc: RepDescriptor, p: GroupElementParams, budget: _Budget) -> dict:
    """Value -> representative weight over all (+-eta_1 +- ...)/2, by a sweep
    over the achievable values (exact; no sign pattern is skipped in effect)."""
    current = {RootOfUnity(0): Weight.zero()}
    for eta in tangent_weight_assignment(desc):
        half = eta * Fraction(1, 2)
        val = evaluate_weight(half, p)
        nxt: dict = {}
        for v, w in current.items():
            for vv, ww in ((v * val, w + half), (v * val.inverse(), w - half)):
                nxt.setdefault(vv, ww)
        budget.spend(2 * len(current))
        current = nxt
    return current


@lru_cache(maxsize=4096)
def _cached_delta_n(desc: RepDescriptor, p: GroupElementParams) -> tuple:
    return tuple(_value_map_delta_n(desc, p, _Budget(None)).items())


def delta_n_action(desc: RepDescriptor, p: GroupElementParams) -> ActionResult:
    """Action of a torus element on Delta_N."""
    return _result(dict(_cached_delta_n(desc, p)))


def _value_map_factor(factor: Factor, desc: RepDescriptor, p: GroupElementParams, budget: _Budget) -> dict:
    kind = factor.kind
    if kind == "trivial":
        return {RootOfUnity(0): Weight.zero()}
    if kind == "delta_N":
        return dict(_cached_delta_n(desc, p))
    if kind in ("exterior", "symmetric"):
        base = standard_weights(desc, factor.bundle)
        if kind == "exterior" and factor.power > len(base):
            raise ValueError(
                f"exterior power {factor.power} exceeds dim {len(base)} of {factor.bundle}"
            )
        out: dict = {}
        for w in _tuples(base, factor.power, kind == "symmetric"):
            budget.spend(1)
            out.setdefault(evaluate_weight(w, p), w)
        return out
    # the values of an s-fold tensor power are the s-fold products of values
    single: dict = {}
    for w in _spinor_list(desc, kind):
        budget.spend(1)
        single.setdefault(evaluate_weight(w, p), w)
    out = {RootOfUnity(0): Weight.zero()}
    for _ in range(factor.power):
        out = _combine(out, single, budget)
    return out


def _combine(a: dict, b: dict, budget: _Budget) -> dict:
    out: dict = {}
    budget.spend(len(a) * len(b))
    for va, wa in a.items():
        for vb, wb in b.items():
            out.setdefault(va * vb, wa + wb)
    return out


def element_action_on_rep(
    p: GroupElementParams,
    desc: RepDescriptor,
    factors: Sequence[Factor] | None = None,
    max_steps: int | None = None,
) -> ActionResult:
    """Action of p on a tensor product of factors (Delta_N when factors is None)."""
    budget = _Budget(max_steps)
    if factors is None:
        return delta_n_action(desc, p)
    values = {RootOfUnity(0): Weight.zero()}
    for f in factors:
        values = _combine(values, _value_map_factor(f, desc, p, budget), budget)
    return _result(values)


@dataclass(frozen=True)
class DescentResult:
    ok: bool
    generator: GroupElementParams | None = None
    value: RootOfUnity | None = None
    weight: Weight | None = None
    steps: int = 0
    actions: tuple = field(default=(), compare=False)

    def __bool__(self):
        return self.ok


def descends(desc: RepDescriptor, factors: Sequence[Factor], max_steps: int | None = None) -> DescentResult:
    """Whether every generator of the finite subgroup acts as 1 on Delta_N (x) factors."""
    budget = _Budget(max_steps)
    actions = []
    for p in structure_group_generators(desc):
        values = dict(_cached_delta_n(desc, p))
        budget.spend(len(tangent_weight_assignment(desc)))
        for f in factors:
            values = _combine(values, _value_map_factor(f, desc, p, budget), budget)
        actions.append((p, tuple(sorted(values, key=lambda v: v.q))))
        bad = [(v, w) for v, w in values.items() if not v.is_one()]
        if bad:
            v, w = bad[0]
            return DescentResult(False, p, v, w, budget.used, tuple(actions))
    return DescentResult(True, steps=budget.used, actions=tuple(actions))
