"""Machine-checked suites behind ``spindex verify``.

Every suite returns a list of CheckRecord in a fixed order.  Randomized suites
draw from a ``random.Random`` seeded by (seed, suite name), so a suite gives the
same records whether it runs alone or inside ``all``.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .clifford import CliffordElement, blade_of, max_dim, reversal, volume_element
from .laurent import HalfIntLaurent, RationalFunction
from .localization import (
    FixedPointDatum,
    contribution,
    equivariant_index,
    generate_tangent_exponents,
    generate_twist_exponents,
    satisfies_inequality,
)
from .report import CheckRecord
from .scalars import GaussianRational, I
from .series import ahat_factor_series, formal_genus_truncation
from .spin import (
    chirality_split,
    kappa,
    kappa_generator,
    kernel_check,
    weight_eigencheck,
    weight_spinor,
)
from .twist import PowerProfile, cross_validate, descriptor_sweep, profile_sweep
from .weights import (
    RepDescriptor,
    _generator_parts,
    delta_n_action,
    evaluate_weight,
    group_element,
    tangent_weight_assignment,
)

__all__ = ["SuiteOptions", "SUITES", "SUITE_NAMES", "run_suite"]


@dataclass(frozen=True)
class SuiteOptions:
    seed: int = 7
    samples: int = 200
    r: int | None = None
    m: int | None = None
    m1: int | None = None
    m2: int | None = None

    def rng(self, suite: str) -> random.Random:
        return random.Random(f"{self.seed}:{suite}")

    def descriptor(self) -> RepDescriptor | None:
        if self.r is None:
            if any(v is not None for v in (self.m, self.m1, self.m2)):
                raise ValueError("multiplicities given without --r")
            return None
        return RepDescriptor(self.r, m=self.m, m1=self.m1, m2=self.m2)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _too_big(name: str, anchor: str, n: int) -> CheckRecord | None:
    if n > max_dim():
        return CheckRecord(name, anchor, "skip", {"reason": f"n = {n} exceeds the dimension cap {max_dim()}"})
    return None


# ------------------------------------------------------------------ clifford

A_CLIFFORD = "Clifford relations"


def _random_gaussian(rng: random.Random) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))


def _random_element(rng: random.Random, n: int, max_terms: int = 4) -> CliffordElement:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.randrange(1 << n)] = _random_gaussian(rng)
    return CliffordElement(n, terms)


def suite_clifford(opts: SuiteOptions) -> list[CheckRecord]:
    rng = opts.rng("clifford")
    out = []
    for n in range(1, 11):
        name = f"generator relations n={n}"
        if (skip := _too_big(name, A_CLIFFORD, n)) is not None:
            out.append(skip)
            continue
        bad = []
        for i in range(1, n + 1):
            ei = CliffordElement.basis(n, i)
            for j in range(1, n + 1):
                ej = CliffordElement.basis(n, j)
                want = CliffordElement.scalar(n, -2 if i == j else 0)
                if ei * ej + ej * ei != want:
                    bad.append((i, j))
        out.append(CheckRecord(name, A_CLIFFORD, _status(not bad), {"pairs": n * n, "failures": bad[:5]}))
    for n in range(3, 9):
        bad = 0
        for _ in range(opts.samples):
            x, y, z = (_random_element(rng, n) for _ in range(3))
            if (x * y) * z != x * (y * z):
                bad += 1
        out.append(CheckRecord(f"associativity n={n}", A_CLIFFORD, _status(bad == 0), {"triples": opts.samples, "failures": bad}))
    for n in range(1, 11):
        if n > max_dim():
            continue
        vol = volume_element(n)
        want = CliffordElement.scalar(n, (-1) ** (n * (n + 1) // 2))
        out.append(CheckRecord(f"volume square n={n}", A_CLIFFORD, _status(vol * vol == want), {"vol^2": str(vol * vol)}))
    bad = 0
    for _ in range(opts.samples):
        n = rng.randint(2, 8)
        x, y = _random_element(rng, n), _random_element(rng, n)
        if reversal(x * y) != reversal(y) * reversal(x):
            bad += 1
    out.append(CheckRecord("reversal is an anti-automorphism", A_CLIFFORD, _status(bad == 0), {"pairs": opts.samples, "failures": bad}))
    return out


# ---------------------------------------------------------------------- spin

A_SPIN = "spinor representation"


def suite_spin(opts: SuiteOptions) -> list[CheckRecord]:
    rng = opts.rng("spin")
    out = []
    for n in range(1, 9):
        gens = [kappa_generator(n, i) for i in range(1, n + 1)]
        dim = gens[0].dim
        ident = kappa(CliffordElement.scalar(n, 1))
        bad = []
        for i in range(n):
            for j in range(n):
                lhs = gens[i] @ gens[j] + gens[j] @ gens[i]
                want = ident.scale(GaussianRational(-2)) if i == j else ident.scale(GaussianRational(0))
                if lhs != want:
                    bad.append((i + 1, j + 1))
        out.append(CheckRecord(f"matrix anticommutation n={n}", A_SPIN, _status(not bad), {"dim": dim, "failures": bad[:5]}))
        bad_mult = 0
        for _ in range(opts.samples):
            a = rng.randrange(1 << n)
            b = rng.randrange(1 << n)
            x, y = CliffordElement(n, {a: 1}), CliffordElement(n, {b: 1})
            if kappa(x * y) != kappa(x) @ kappa(y):
                bad_mult += 1
        out.append(CheckRecord(f"multiplicativity n={n}", A_SPIN, _status(bad_mult == 0), {"pairs": opts.samples, "failures": bad_mult}))
    return out


# -------------------------------------------------------------- volume table

A_VOLUME = "volume element eigenvalues"
_VOLUME_TABLE = {0: (GaussianRational(1), GaussianRational(-1)), 2: (I, -I), 4: (GaussianRational(-1), GaussianRational(1)), 6: (-I, I)}


def suite_volume_table(opts: SuiteOptions) -> list[CheckRecord]:
    out = []
    for n in (2, 4, 6, 8):
        split = chirality_split(n)
        want = _VOLUME_TABLE[n % 8]
        u = weight_spinor((1,) * (n // 2))
        top_in_plus = split.plus.apply(u) == u
        ok = (split.vol_on_plus, split.vol_on_minus) == want and top_in_plus
        out.append(
            CheckRecord(
                f"volume table n={n}",
                A_VOLUME,
                _status(ok),
                {"on_plus": str(split.vol_on_plus), "on_minus": str(split.vol_on_minus), "u_top_in_plus": top_in_plus},
            )
        )
    return out


# ------------------------------------------------------------------- kernels

A_KERNEL = "half-spin kernels"


def suite_kernels(opts: SuiteOptions) -> list[CheckRecord]:
    out = []
    for r in (8, 12):
        name = f"half-spin kernels r={r}"
        if (skip := _too_big(name, A_KERNEL, r)) is not None:
            out.append(skip)
            continue
        rep = kernel_check(r)
        out.append(
            CheckRecord(
                name,
                A_KERNEL,
                _status(rep.passed),
                {"ker_plus": sorted(rep.kernel_plus), "ker_minus": sorted(rep.kernel_minus)},
            )
        )
    return out


# ------------------------------------------------------------- torus weights

A_TORUS = "torus weights"


def suite_torus_weights(opts: SuiteOptions) -> list[CheckRecord]:
    out = []
    for n in (2, 4, 6, 8):
        failures = weight_eigencheck(n)
        out.append(
            CheckRecord(
                f"weight eigencheck n={n}",
                A_TORUS,
                _status(not failures),
                {"spinors": 2 ** (n // 2), "failures": [f.eps for f in failures]},
            )
        )
    return out


# -------------------------------------------------------- structure actions

A_ACTION = "structure group signs"
A_TANGENT = "tangent triviality"


def _sign_expectations() -> list[tuple[RepDescriptor, tuple, int]]:
    """(descriptor, element parts, expected sign on Delta_N)."""
    rows = []
    for m in (1, 2, 3):
        rows.append((RepDescriptor(3, m=m), ("-Id", "-1"), (-1) ** m))
    for m1 in (1, 2):
        for m2 in (1, 2):
            d = RepDescriptor(4, m1=m1, m2=m2)
            rows.append((d, ("-Id", "-Id", "-1"), (-1) ** (m1 + m2)))
            rows.append((d, ("Id", "-Id", "vol"), (-1) ** m2))
            rows.append((d, ("-Id", "Id", "-vol"), (-1) ** m1))
    for m in (1, 2):
        d = RepDescriptor(6, m=m)
        rows.append((d, ("-Id", "-1"), 1))
        rows.append((d, ("iId", "-vol"), (-1) ** m))
    for m1, m2 in ((1, 2), (1, 0), (3, 2)):
        rows.append((RepDescriptor(8, m1=m1, m2=m2), ("Id", "-Id", "vol"), -1))
    for m1, m2 in ((2, 1), (0, 1), (2, 3)):
        rows.append((RepDescriptor(8, m1=m1, m2=m2), ("-Id", "Id", "-vol"), -1))
    return rows


def _tangent_failures(desc: RepDescriptor) -> list:
    bad = []
    for parts in _generator_parts(desc):
        p = group_element(desc, parts)
        for eta in tangent_weight_assignment(desc):
            if not evaluate_weight(eta, p).is_one():
                bad.append((parts, str(eta)))
    return bad


def _action_records(desc: RepDescriptor) -> list[CheckRecord]:
    out = []
    gens = _generator_parts(desc)
    if not gens:
        return [CheckRecord(f"structure actions {desc}", A_ACTION, "pass", {"generators": 0})]
    tangent_bad = _tangent_failures(desc)
    for parts in gens:
        act = delta_n_action(desc, group_element(desc, parts))
        ok = act.is_scalar and not [b for b in tangent_bad if b[0] == parts]
        witness = {"element": "(" + ", ".join(parts) + ")", "value": str(act.value) if act.is_scalar else "not scalar"}
        out.append(CheckRecord(f"structure action {desc} {witness['element']}", A_ACTION, _status(ok), witness))
    return out


def suite_structure_actions(opts: SuiteOptions) -> list[CheckRecord]:
    desc = opts.descriptor()
    if desc is not None:
        return _action_records(desc)
    out = []
    for d, parts, sign in _sign_expectations():
        act = delta_n_action(d, group_element(d, parts))
        ok = act.is_scalar and act.value.is_sign() and (act.value.is_one() == (sign == 1))
        elem = "(" + ", ".join(parts) + ")"
        out.append(
            CheckRecord(
                f"sign {d} {elem}",
                A_ACTION,
                _status(ok),
                {"value": str(act.value) if act.is_scalar else "not scalar", "expected": str(sign)},
            )
        )
    for r in range(3, 10):
        cases = list(descriptor_sweep(r, 3))
        bad = {str(d): _tangent_failures(d)[:2] for d in cases}
        bad = {k: v for k, v in bad.items() if v}
        nonscalar = []
        for d in cases:
            for parts in _generator_parts(d):
                if not delta_n_action(d, group_element(d, parts)).is_scalar:
                    nonscalar.append((str(d), parts))
        out.append(
            CheckRecord(
                f"tangent triviality r={r}",
                A_TANGENT,
                _status(not bad and not nonscalar),
                {"descriptors": len(cases), "failures": bad, "nonscalar": nonscalar},
            )
        )
    return out


# --------------------------------------------------------------- twist tables

A_TWIST = "descent conditions"


def suite_twist_tables(opts: SuiteOptions) -> list[CheckRecord]:
    out = []
    for r in range(3, 10):
        for symmetric in (False, True):
            sweep = ((d, p) for d in descriptor_sweep(r, 3) for p in profile_sweep(d, 3, symmetric))
            cv = cross_validate(sweep)
            kind = "symmetric" if symmetric else "exterior"
            out.append(
                CheckRecord(
                    f"closed form vs oracle r={r} {kind}",
                    A_TWIST,
                    _status(cv.agreed),
                    {
                        "points": cv.points,
                        "agreements": cv.agreements,
                        "skipped": len(cv.skipped),
                        "disagreements": [(str(d), str(p), c, o) for d, p, c, o in cv.disagreements[:5]],
                    },
                )
            )
    return out


# ---------------------------------------------------------------------- lemma

A_LEMMA = "vanishing lemma"


def lemma_function(k: Fraction, m: Fraction, c: Fraction) -> RationalFunction:
    """z^k / (z^(-m) c - z^m / c) in w = z^(1/2)."""
    if (2 * k).denominator != 1 or (2 * m).denominator != 1:
        raise ValueError("k and m must be half-integers")
    num = HalfIntLaurent.monomial(int(2 * k))
    den = HalfIntLaurent({int(-2 * m): c, int(2 * m): -1 / c})
    return RationalFunction(num, den)


def _lemma_instance(rng: random.Random, boundary: bool) -> tuple[Fraction, Fraction, Fraction]:
    m = Fraction(rng.randint(2, 16), 2) * rng.choice((1, -1))
    if boundary:
        k = abs(m) * rng.choice((1, -1))
    else:
        k = -abs(m) + rng.randint(1, int(2 * abs(m)) - 1)
    c = Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1))
    return k, m, c


def suite_lemma(opts: SuiteOptions) -> list[CheckRecord]:
    rng = opts.rng("lemma")
    bad = []
    for _ in range(opts.samples):
        k, m, c = _lemma_instance(rng, boundary=False)
        lo, hi = lemma_function(k, m, c).limits()
        if not (lo.is_zero and hi.is_zero):
            bad.append((k, m, c))
    out = [CheckRecord("strict instances have zero limits", A_LEMMA, _status(not bad), {"instances": opts.samples, "failures": bad[:5]})]
    n_boundary = max(1, opts.samples // 10)
    bad = []
    for _ in range(n_boundary):
        k, m, c = _lemma_instance(rng, boundary=True)
        lo, hi = lemma_function(k, m, c).limits()
        if lo.is_zero and hi.is_zero:
            bad.append((k, m, c))
    out.append(CheckRecord("boundary instances have a nonzero limit", A_LEMMA, _status(not bad), {"instances": n_boundary, "failures": bad[:5]}))
    return out


# ------------------------------------------------------------- localization

A_LOCAL = "fixed point localization"

S4_DATUM = (FixedPointDatum("P1", (1, 1)), FixedPointDatum("P2", (1, -1)))


def random_strict_fixed_point(rng: random.Random, max_len: int = 6) -> FixedPointDatum:
    """An isolated fixed point whose twist exponents satisfy the strict inequality
    and whose exponents give integral powers of w."""
    while True:
        qs = [Fraction(rng.randint(1, 6), 2) * rng.choice((1, -1)) for _ in range(rng.randint(1, max_len))]
        total = sum(qs, Fraction(0))
        if total.denominator != 1:
            continue
        bound = sum((abs(q) for q in qs), Fraction(0)) / 2
        parity = rng.randint(0, 1)
        # n = (total - e) / 2 with e of fixed parity and |n| < bound
        cands = [(total - e) / 2 for e in range(int(total - 2 * bound) - 1, int(total + 2 * bound) + 2) if e % 2 == parity]
        cands = [n for n in cands if abs(n) < bound]
        if not cands:
            continue
        ns = [rng.choice(cands) for _ in range(rng.randint(1, 4))]
        return FixedPointDatum("P", qs, ns)


def suite_localization(opts: SuiteOptions) -> list[CheckRecord]:
    rng = opts.rng("localization")
    out = []
    res = equivariant_index(S4_DATUM)
    out.append(CheckRecord("two fixed points on S^4 cancel", A_LOCAL, _status(res.classification == "zero"), {"verdict": res.verdict()}))
    res = equivariant_index(S4_DATUM[:1])
    out.append(CheckRecord("single fixed point is inconsistent", A_LOCAL, _status(res.classification == "not-laurent"), {"verdict": res.verdict()}))
    res = equivariant_index([])
    out.append(CheckRecord("no fixed points", A_LOCAL, _status(res.classification == "zero"), {"verdict": res.verdict()}))
    bad = []
    for _ in range(opts.samples):
        fp = random_strict_fixed_point(rng)
        assert satisfies_inequality(fp).all_strict
        lo, hi = contribution(fp).limits()
        if not (lo.is_zero and hi.is_zero):
            bad.append((fp.tangent_exponents, fp.twist_exponents))
    out.append(CheckRecord("strict fixed points have zero limits", A_LOCAL, _status(not bad), {"fixed_points": opts.samples, "failures": bad[:3]}))
    return out


# --------------------------------------------------------------- twist bounds

A_BOUNDS = "twist exponent bounds"


def random_isolated_assignment(rng: random.Random, desc: RepDescriptor, spread: int = 6) -> tuple[list[int], list[int], list[Fraction]]:
    """Integer (t, f) with every tangent exponent nonzero, and those exponents."""
    nt, nf = len(desc.theta_names()), len(desc.phi_names())
    while True:
        t = [rng.randint(-spread, spread) for _ in range(nt)]
        f = [rng.randint(-spread, spread) for _ in range(nf)]
        qs = generate_tangent_exponents(desc, t, f)
        if all(q != 0 for q in qs):
            return t, f, qs


def bound_profiles(desc: RepDescriptor, symmetric: bool) -> list[PowerProfile]:
    """Profiles with u + s < m; symmetric ones also need u <= 2^([r/2] - 1)."""
    cap = 2 ** (desc.r // 2 - 1) if symmetric else desc.m
    return [
        PowerProfile(u=u, s=s, symmetric=symmetric)
        for u in range(desc.m)
        for s in range(desc.m - u)
        if u <= cap
    ]


def suite_twist_bounds(opts: SuiteOptions) -> list[CheckRecord]:
    rng = opts.rng("twist-bounds")
    out = []
    for r in (3, 5, 7):
        for symmetric in (False, True):
            bad = []
            checked = 0
            for m in (1, 2, 3):
                desc = RepDescriptor(r, m=m)
                profiles = bound_profiles(desc, symmetric)
                for _ in range(opts.samples):
                    t, f, qs = random_isolated_assignment(rng, desc)
                    bound = sum((abs(q) for q in qs), Fraction(0)) / 2
                    for prof in profiles:
                        checked += 1
                        ns = generate_twist_exponents(desc, prof, t, f)
                        worst = max(abs(n) for n in ns)
                        if not worst < bound:
                            bad.append((m, str(prof), t, f, worst, bound))
            kind = "symmetric" if symmetric else "exterior"
            out.append(
                CheckRecord(
                    f"strict inequality r={r} {kind}",
                    A_BOUNDS,
                    _status(not bad),
                    {"cases": checked, "failures": bad[:3]},
                )
            )
    return out


# ----------------------------------------------------------------------- A-hat

A_AHAT = "A-hat expansion"


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_j C(n+1, j) B_j = 0."""
    bs = [Fraction(1)]
    for i in range(1, n + 1):
        bs.append(-sum(comb(i + 1, j) * bs[j] for j in range(i)) / (i + 1))
    return bs[n]


def ahat_oracle(D: int) -> list[Fraction]:
    """Coefficients of x / (2 sinh(x/2)) = sum (2 - 2^(2n)) B_2n x^(2n) / (2^(2n) (2n)!)."""
    out = [Fraction(0)] * (D + 1)
    for n in range(D // 2 + 1):
        out[2 * n] = (2 - 2 ** (2 * n)) * bernoulli(2 * n) / (2 ** (2 * n) * factorial(2 * n))
    return out


def suite_ahat(opts: SuiteOptions) -> list[CheckRecord]:
    s = ahat_factor_series(8)
    got = [s.coefficient((i,)) for i in range(9)]
    want = ahat_oracle(8)
    out = [CheckRecord("A-hat coefficients through degree 8", A_AHAT, _status(got == want), {"coefficients": got})]
    desc = RepDescriptor(3, m=1)
    g = formal_genus_truncation(desc, None, 2)
    want_g = {(0, 0): Fraction(1), (2, 0): Fraction(-1, 12), (0, 2): Fraction(-1, 48)}
    out.append(CheckRecord("genus truncation r=3 m=1 D=2", A_AHAT, _status(g.coeffs == want_g), {"series": str(g)}))
    return out


# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[[SuiteOptions], list[CheckRecord]]] = {
    "clifford": suite_clifford,
    "spin": suite_spin,
    "volume-table": suite_volume_table,
    "kernels": suite_kernels,
    "torus-weights": suite_torus_weights,
    "structure-actions": suite_structure_actions,
    "twist-tables": suite_twist_tables,
    "lemma": suite_lemma,
    "localization": suite_localization,
    "twist-bounds": suite_twist_bounds,
    "ahat": suite_ahat,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, opts: SuiteOptions | None = None) -> list[CheckRecord]:
    """Records of one suite, or of every suite in table order for 'all'."""
    opts = opts or SuiteOptions()
    if name == "all":
        out = []
        for suite in SUITES.values():
            out.extend(suite(opts))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return SUITES[name](opts)
