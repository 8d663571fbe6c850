"""Command-line front door: compute measures, run verification suites, bench.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
parse error, 3 domain or parity error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import records_to_csv, records_to_text, run_bench
from .errors import DomainError, NTangleError, ParseError
from .measures import (
    DEFAULT_WONG_CAP,
    concurrence,
    r_tangle,
    tau,
    tau_even,
    tau_odd,
    tau_residual,
    three_tangle,
    wong_tangle,
)
from .state import DEFAULT_MAX_QUBITS, parse_product_expression, build_product, read_qsv
from .suites import DEFAULT_SEED, SUITES, SuiteConfig, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ntangle",
        description="Polynomial entanglement measures for pure n-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute a measure of a state")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="qsv state file to read")
    src.add_argument("--expr", help="product expression, e.g. 'ghz:3@1,2,3 x bell@4,5'")
    c.add_argument("--measure", default="tau",
                   help="tau | tau-even | tau-odd | residual:<i> | r | concurrence"
                        " | wong | three-tangle (default: tau)")
    c.add_argument("--no-normalize", action="store_true",
                   help="evaluate on the raw amplitudes instead of normalizing first")
    c.add_argument("--oracle-cap", type=int, default=DEFAULT_WONG_CAP,
                   help="qubit cap for the quartic cross-reference measure")
    c.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", required=True,
                   help="one of: " + ", ".join(sorted(SUITES)))
    v.add_argument("--trials", type=int, default=None, help="per-unit trial count override")
    v.add_argument("--n-max", type=int, default=None, help="upper qubit bound override")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED, help="master seed")
    v.add_argument("--tol", type=float, default=None, help="tolerance override")
    v.add_argument("--oracle-cap", type=int, default=DEFAULT_WONG_CAP)
    v.add_argument("--format", choices=("text", "json"), default="text")

    b = sub.add_parser("bench", help="time the quadratic measure and the quartic oracle")
    b.add_argument("--n-min", type=int, default=4, help="smallest (even) qubit count")
    b.add_argument("--n-max", type=int, default=16, help="largest (even) qubit count")
    b.add_argument("--measure", choices=("quadratic", "quartic", "both"), default="quadratic")
    b.add_argument("--repetitions", type=int, default=5)
    b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    b.add_argument("--oracle-cap", type=int, default=DEFAULT_WONG_CAP)
    b.add_argument("--format", choices=("text", "csv"), default="text")
    return parser


_MEASURES = {
    "tau": tau,
    "tau-even": tau_even,
    "tau-odd": tau_odd,
    "r": r_tangle,
    "concurrence": concurrence,
    "three-tangle": three_tangle,
}


def _cmd_compute(args) -> int:
    if args.file is not None:
        psi = read_qsv(args.file)
        label = f"file:{args.file}"
    else:
        psi = build_product(parse_product_expression(args.expr))
        label = args.expr
    if not args.no_normalize:
        psi = psi.normalized()

    name = args.measure
    if name in _MEASURES:
        report = _MEASURES[name](psi, state=label)
    elif name == "wong":
        report = wong_tangle(psi, cap=args.oracle_cap, state=label)
    elif name.startswith("residual:"):
        try:
            i = int(name.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad residual qubit in measure {name!r}", line=1, column=1) from None
        report = tau_residual(psi, i, state=label)
    else:
        raise ParseError(f"unknown measure {name!r}", line=1, column=1)

    if args.format == "json":
        payload = {
            "schema": 1,
            "measure": report.kind,
            "value": report.value,
            "n": report.n,
            "norm": report.norm,
            "state": report.state,
        }
        if report.residuals is not None:
            payload["residuals"] = list(report.residuals)
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"value {report.value:.15g}")
        print(f"measure {report.kind}")
        print(f"n {report.n}")
        print(f"norm {report.norm:.15g}")
        if report.residuals is not None:
            print("residuals " + " ".join(f"{r:.15g}" for r in report.residuals))
        print(f"state {report.state}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; available: {', '.join(sorted(SUITES))}",
              file=sys.stderr)
        return EXIT_USAGE
    if args.trials is not None and args.trials < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.tol is not None and args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    cfg = SuiteConfig(
        suite=args.suite,
        trials=args.trials,
        n_max=args.n_max,
        seed=args.seed,
        tol=args.tol,
        oracle_cap=args.oracle_cap,
        format=args.format,
    )
    report = run_suite(cfg)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), sort_keys=True))
    else:
        print(report.to_text(), end="")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _cmd_bench(args) -> int:
    if args.n_min < 2 or args.n_max < args.n_min:
        print(f"error: bad bench range {args.n_min}..{args.n_max}", file=sys.stderr)
        return EXIT_USAGE
    if args.n_max > DEFAULT_MAX_QUBITS:
        print(f"error: bench range exceeds the {DEFAULT_MAX_QUBITS}-qubit capacity",
              file=sys.stderr)
        return EXIT_USAGE
    measures = ("quadratic", "quartic") if args.measure == "both" else (args.measure,)
    ns = [n for n in range(args.n_min, args.n_max + 1) if n % 2 == 0]
    if "quartic" in measures and ns and max(ns) > args.oracle_cap:
        print(f"error: quartic bench beyond n={args.oracle_cap} is off by default; "
              f"raise --oracle-cap explicitly to allow it", file=sys.stderr)
        return EXIT_USAGE
    records = run_bench(ns, measures=measures, repetitions=args.repetitions,
                        seed=args.seed, oracle_cap=args.oracle_cap)
    if args.format == "csv":
        print(records_to_csv(records), end="")
    else:
        print(records_to_text(records), end="")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            return _cmd_compute(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "bench":
            return _cmd_bench(args)
        parser.error(f"unknown command {args.command!r}")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NTangleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
