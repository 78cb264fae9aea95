"""Command-line front end: ``spindex verify | check-twist | localize``.

Exit codes: 0 when no check fails, 1 when one does, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from .localization import FixedPointDatum, IntegralityError, contribution, equivariant_index, satisfies_inequality
from .report import CheckRecord, Report
from .suites import SUITE_NAMES, SuiteOptions, run_suite
from .twist import ORACLE_GUARD, PowerProfile, UncoveredCase, closed_form_condition
from .weights import EnumerationGuardError, RepDescriptor, descends

__all__ = ["main", "build_parser", "cmd_verify", "cmd_check_twist", "cmd_localize", "UsageError", "parse_fixed_points"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    """Bad arguments or malformed input; maps to exit code 2."""


# -------------------------------------------------------------------- verify


def cmd_verify(suite: str, opts: SuiteOptions) -> Report:
    if suite not in SUITE_NAMES:
        raise UsageError(f"unknown suite {suite!r}")
    if opts.samples < 1:
        raise UsageError("--samples must be positive")
    if suite != "structure-actions" and any(v is not None for v in (opts.r, opts.m, opts.m1, opts.m2)):
        raise UsageError("--r/--m/--m1/--m2 only apply to the structure-actions suite")
    try:
        opts.descriptor()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = Report(f"verify {suite} --seed {opts.seed} --samples {opts.samples}")
    report.extend(run_suite(suite, opts))
    return report


# --------------------------------------------------------------- check-twist

A_TWIST = "descent conditions"


def cmd_check_twist(desc: RepDescriptor, prof: PowerProfile, mode: str = "both") -> Report:
    if mode not in ("closed", "oracle", "both"):
        raise UsageError(f"unknown mode {mode!r}")
    try:
        prof.validate(desc)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = Report(f"check-twist {desc} {prof} --mode {mode}")
    verdicts = {}
    if mode in ("closed", "both"):
        try:
            verdicts["closed"] = closed_form_condition(desc, prof)
            report.add(CheckRecord("closed form", A_TWIST, "pass", {"admissible": verdicts["closed"]}))
        except UncoveredCase as exc:
            report.add(CheckRecord("closed form", A_TWIST, "skip", {"reason": f"uncovered case: {exc}"}))
    if mode in ("oracle", "both"):
        try:
            res = descends(desc, prof.factors(desc), max_steps=ORACLE_GUARD)
            verdicts["oracle"] = res.ok
            witness = {"admissible": res.ok, "steps": res.steps}
            if not res.ok:
                witness.update(generator=res.generator.label, value=str(res.value), weight=str(res.weight))
            report.add(CheckRecord("weight oracle", A_TWIST, "pass", witness))
        except (EnumerationGuardError, ValueError) as exc:
            report.add(CheckRecord("weight oracle", A_TWIST, "skip", {"reason": str(exc)}))
    if mode == "both" and len(verdicts) == 2:
        agree = verdicts["closed"] == verdicts["oracle"]
        report.add(CheckRecord("closed form agrees with oracle", A_TWIST, "pass" if agree else "fail", dict(verdicts)))
    if verdicts:
        values = set(verdicts.values())
        verdict = ("admissible" if values.pop() else "not admissible") if len(values) == 1 else "undecided: deciders disagree"
    else:
        verdict = "undecided: no decider covers this case"
    report.lines.append(f"{desc} {prof}: {verdict}")
    return report


# ------------------------------------------------------------------ localize

A_LOCAL = "fixed point localization"


def _exact(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise UsageError(f"{where}: expected an exact rational string such as \"3/2\", got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise UsageError(f"{where}: expected an exact rational string, got {type(value).__name__}")
    text = value.strip()
    if "." in text or "e" in text.lower():
        raise UsageError(f"{where}: decimals are not allowed, got {value!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{where}: not a rational number: {value!r}") from None


def _exponents(raw, where: str) -> list[Fraction]:
    if not isinstance(raw, list):
        raise UsageError(f"{where}: expected a list")
    out = []
    for i, v in enumerate(raw):
        x = _exact(v, f"{where}[{i}]")
        if (2 * x).denominator != 1:
            raise UsageError(f"{where}[{i}]: {x} is not a half-integer")
        out.append(x)
    return out


def parse_fixed_points(text: str) -> tuple[str, list[FixedPointDatum]]:
    """Parse and validate a fixed-point document; raise UsageError with a field path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise UsageError("top level: expected an object")
    if type(doc.get("version")) is not int or doc["version"] != 1:
        raise UsageError(f"version: expected 1, got {doc.get('version')!r}")
    variable = doc.get("variable", "z")
    if not isinstance(variable, str) or not variable.isidentifier():
        raise UsageError(f"variable: expected a name, got {variable!r}")
    fps_raw = doc.get("fixed_points")
    if not isinstance(fps_raw, list):
        raise UsageError("fixed_points: expected a list")
    unknown = set(doc) - {"version", "variable", "fixed_points"}
    if unknown:
        raise UsageError(f"top level: unknown fields {sorted(unknown)}")
    fps = []
    for i, raw in enumerate(fps_raw):
        where = f"fixed_points[{i}]"
        if not isinstance(raw, dict):
            raise UsageError(f"{where}: expected an object")
        extra = set(raw) - {"name", "tangent_exponents", "twist_exponents"}
        if extra:
            raise UsageError(f"{where}: unknown fields {sorted(extra)}")
        name = raw.get("name", f"P{i + 1}")
        if not isinstance(name, str):
            raise UsageError(f"{where}.name: expected a string")
        if "tangent_exponents" not in raw:
            raise UsageError(f"{where}.tangent_exponents: missing")
        qs = _exponents(raw["tangent_exponents"], f"{where}.tangent_exponents")
        for j, q in enumerate(qs):
            if q == 0:
                raise UsageError(
                    f"{where}.tangent_exponents[{j}]: zero exponent; only isolated fixed points are supported"
                )
        ns = _exponents(raw.get("twist_exponents", []), f"{where}.twist_exponents")
        fps.append(FixedPointDatum(name, qs, ns))
    return variable, fps


def cmd_localize(text: str, source: str = "<input>") -> Report:
    variable, fps = parse_fixed_points(text)
    report = Report(f"localize {source}")
    for fp in fps:
        ineq = satisfies_inequality(fp)
        witness = {
            "tangent_exponents": list(fp.tangent_exponents),
            "twist_exponents": list(fp.effective_twist()),
            "bound": ineq.bound,
            "strict": ineq.all_strict,
            "nonstrict": ineq.all_nonstrict,
        }
        try:
            mu = contribution(fp)
            lo, hi = mu.limits()
            witness.update(contribution=str(mu), limit_at_0=str(lo), limit_at_inf=str(hi))
        except IntegralityError as exc:
            witness["integrality"] = str(exc)
        report.add(CheckRecord(f"contribution {fp.name}", A_LOCAL, "pass", witness))
    res = equivariant_index(fps)
    verdict = res.verdict(variable)
    status = "fail" if res.classification == "not-laurent" else "pass"
    witness = {"classification": res.classification, "verdict": verdict}
    if res.reason:
        witness["reason"] = res.reason
    report.add(CheckRecord("global sum", A_LOCAL, status, witness))
    report.lines.append(verdict)
    return report


# ---------------------------------------------------------------------- main


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spindex", description="Exact checks for spinors, twisted descent conditions and fixed point localization.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--samples", type=int, default=200)
    for name in ("r", "m", "m1", "m2"):
        v.add_argument(f"--{name}", type=int)
    v.add_argument("--report", type=Path, help="write the JSON report here")

    c = sub.add_parser("check-twist", help="decide whether a twisted spinor bundle descends")
    c.add_argument("--r", type=int, required=True)
    for name in ("m", "m1", "m2"):
        c.add_argument(f"--{name}", type=int)
    for name in ("u", "u1", "u2", "s", "t"):
        c.add_argument(f"--{name}", type=int, default=0)
    c.add_argument("--symmetric", action="store_true", help="use symmetric instead of exterior powers")
    c.add_argument("--mode", choices=("closed", "oracle", "both"), default="both")
    c.add_argument("--report", type=Path)

    loc = sub.add_parser("localize", help="sum fixed point contributions from a JSON file")
    loc.add_argument("input", type=Path)
    loc.add_argument("--report", "--output", dest="report", type=Path)
    return p


def _dispatch(args) -> Report:
    if args.command == "verify":
        opts = SuiteOptions(args.seed, args.samples, args.r, args.m, args.m1, args.m2)
        return cmd_verify(args.suite, opts)
    if args.command == "check-twist":
        try:
            desc = RepDescriptor(args.r, m=args.m, m1=args.m1, m2=args.m2)
            prof = PowerProfile(u=args.u, u1=args.u1, u2=args.u2, s=args.s, t=args.t, symmetric=args.symmetric)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return cmd_check_twist(desc, prof, args.mode)
    try:
        text = args.input.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return cmd_localize(text, str(args.input))


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report = _dispatch(args)
    except UsageError as exc:
        print(f"spindex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.text())
    if args.report is not None:
        try:
            args.report.write_text(report.to_json(), encoding="utf-8")
        except OSError as exc:
            print(f"spindex: error: cannot write {args.report}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
