"""``gf2m-qsynth`` command line.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .circuit import emit_qasm
from .exponentiation import expo_cost, synth_exponentiation, verify_exponentiation
from .gf2m import FieldElement, FieldSpec, gf_mul, gf_square
from .multiplier import synth_mult
from .sim import exhaustive_check
from .squaring import NoPerfectMatchingError, synth_square, verify_linear
from .tables import exponentiation_table, render_json, render_text, squaring_table

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

# exponentiation circuits grow as n^4 gates; above this only closed-form costs are printed
MAX_BUILD_N = 16
MAX_VERIFY_EXP_N = 12


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _field(args) -> FieldSpec:
    return FieldSpec.parse(args.poly, allow_reducible=args.allow_reducible)


def _print_report(report, as_json: bool) -> None:
    if as_json:
        print(report.to_json(indent=2))
        return
    d = report.to_dict()
    breakdown = d.pop("breakdown")
    for k, v in d.items():
        if isinstance(v, list):
            v = " ".join(map(str, v))
        elif isinstance(v, dict):
            v = ", ".join(f"{kk}={vv}" for kk, vv in v.items())
        print(f"{k}: {'NA' if v is None else v}")
    for k, v in breakdown.items():
        print(f"  {k}: {v}")


def cmd_square(args) -> int:
    sq = synth_square(_field(args))
    _print_report(sq.cost(), args.json)
    if args.qasm:
        Path(args.qasm).write_text(emit_qasm(sq.circuit))
    return EXIT_OK


def cmd_exp(args) -> int:
    spec = _field(args)
    build = args.qasm or args.verify or spec.n <= MAX_BUILD_N
    circuit = synth_exponentiation(spec) if build else None
    report = circuit.cost() if circuit is not None else expo_cost(spec)
    status = EXIT_OK
    if args.verify:
        result = verify_exponentiation(circuit)
        report.extra["verification"] = {
            "passed": result.passed,
            "checked": result.checked,
            "exhaustive": result.exhaustive,
            "first_failure": str(result.first) if result.first else None,
        }
        status = EXIT_OK if result.passed else EXIT_VERIFY
    _print_report(report, args.json)
    if args.qasm:
        Path(args.qasm).write_text(emit_qasm(circuit.circuit))
    return status


def cmd_verify(args) -> int:
    spec = _field(args)
    limit = args.exhaustive_limit
    results = {}

    sq = synth_square(spec)

    def square_oracle(state: int) -> int:
        return sq.encode(gf_square(FieldElement(state, spec)).value)

    check = exhaustive_check(sq.circuit, square_oracle, limit)
    results["squaring_linear_map"] = {"passed": verify_linear(sq)}
    results["squaring_states"] = _summary(check)

    mult = synth_mult(spec)

    def mult_oracle(state: int) -> int:
        a, b, c = mult.unpack(state)
        return mult.pack(a, b, c ^ gf_mul(FieldElement(a, spec), FieldElement(b, spec)).value)

    results["multiplier_states"] = _summary(exhaustive_check(mult.circuit, mult_oracle, limit))

    if spec.n <= MAX_VERIFY_EXP_N:
        expo = verify_exponentiation(synth_exponentiation(spec))
        results["exponentiation"] = {
            "passed": expo.passed,
            "checked": expo.checked,
            "exhaustive": expo.exhaustive,
            "first_failure": str(expo.first) if expo.first else None,
        }
    else:
        results["exponentiation"] = {"skipped": f"n > {MAX_VERIFY_EXP_N}"}

    ok = all(r.get("passed", True) for r in results.values())
    out = {"field": str(spec), "n": spec.n, "passed": ok, "checks": results}
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(f"field: {spec}")
        for name, r in results.items():
            state = "skipped" if "skipped" in r else ("PASS" if r["passed"] else "FAIL")
            detail = ", ".join(f"{k}={v}" for k, v in r.items() if k != "passed")
            print(f"{name}: {state}" + (f" ({detail})" if detail else ""))
    return EXIT_OK if ok else EXIT_VERIFY


def _summary(report) -> dict:
    return {
        "passed": report.passed,
        "checked": report.checked,
        "exhaustive": report.exhaustive,
        "first_failure": str(report.first) if report.first else None,
    }


def cmd_report(args) -> int:
    rows = squaring_table() if args.which == "squaring" else exponentiation_table()
    if args.json:
        print(render_json(rows, args.which))
    else:
        print(render_text(rows, args.which), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--allow-reducible", action="store_true", default=argparse.SUPPRESS,
                        help="skip the irreducibility check on the modulus")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="gf2m-qsynth", description="Quantum GF(2^n) squaring and inversion circuits")
    p.add_argument("--allow-reducible", action="store_true", default=False,
                   help="skip the irreducibility check on the modulus")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sq = sub.add_parser("square", parents=[common], help="synthesize an in-place squarer")
    sq.add_argument("poly", help='modulus, e.g. "x^10+x^3+1" or 0x409')
    sq.add_argument("--qasm", metavar="FILE", help="write OpenQASM 2.0")
    sq.set_defaults(func=cmd_square)

    ex = sub.add_parser("exp", parents=[common], help="synthesize the A^(2^n-2) circuit")
    ex.add_argument("poly")
    ex.add_argument("--qasm", metavar="FILE")
    ex.add_argument("--verify", action="store_true", help="simulate against the software oracle")
    ex.set_defaults(func=cmd_exp)

    ve = sub.add_parser("verify", parents=[common], help="check all circuits for a field")
    ve.add_argument("poly")
    ve.add_argument("--exhaustive-limit", type=int, default=1 << 16, metavar="N",
                    help="enumerate all states when 2^width <= N, else sample N states")
    ve.set_defaults(func=cmd_verify)

    rp = sub.add_parser("report", parents=[common], help="regenerate a comparison table")
    rp.add_argument("which", choices=["squaring", "exponentiation"])
    rp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, NoPerfectMatchingError) as exc:
        print(f"gf2m-qsynth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
