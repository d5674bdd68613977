"""Command-line front end.

Exit status: 0 when every requested check passes, 1 on a relation failure,
2 on a configuration or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction

from .errors import ConfigurationError, ConstructionError
from .fock import DEFAULT_DIMENSION_CAP, ModeSpec, build_representation, parse_operator_name
from .verify import (
    SuiteConfig,
    expand_families,
    mutation_selfcheck,
    run_matrix_suite,
    symbolic_tilde_identities,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=1, help="number of parafermion species")
    common.add_argument("--n", type=int, default=1, help="number of paraboson species")
    common.add_argument("--p", type=int, default=1, help="order of the Fock space")
    common.add_argument(
        "--boson-cutoff",
        type=int,
        default=None,
        help="maximum total boson occupation (default 4 when n > 0, else 0)",
    )
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dimension-cap", type=int, default=DEFAULT_DIMENSION_CAP)
    common.add_argument("--output", "-o", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="paraklein",
        description="Exact checks of parastatistics relations and their Klein transformation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the matrix relation suite")
    p.add_argument("--families", default="all", help="comma list of families, or 'all'")
    p = sub.add_parser("symbolic", parents=[common], help="replay tilde identities symbolically")
    p = sub.add_parser("dump-op", parents=[common], help="print an operator matrix")
    p.add_argument("operator", help="f+1, b-2, tf+1, tb-1, K, H or N")
    sub.add_parser("basis", parents=[common], help="print the ordered basis")
    p = sub.add_parser("spectrum", parents=[common], help="eigenvalue multiplicities of H, N or K")
    p.add_argument("operator", nargs="?", default="N", choices=("H", "N", "K"))
    sub.add_parser("selfcheck", parents=[common], help="run the mutation self-check")
    return parser


def _spec(args) -> ModeSpec:
    cutoff = args.boson_cutoff
    if cutoff is None:
        cutoff = 4 if args.n > 0 else 0
    return ModeSpec(args.m, args.n, args.p, cutoff)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_out(args, report) -> int:
    _emit(args, report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def _run(args) -> int:
    spec = _spec(args)
    if args.command == "verify":
        families, skipped = expand_families(args.families, spec.m, spec.n)
        for fam in skipped:
            print(f"notice: family {fam} skipped (not applicable to m={spec.m}, n={spec.n})", file=sys.stderr)
        cfg = SuiteConfig(spec, families, random_seed=args.seed, dimension_cap=args.dimension_cap)
        report = run_matrix_suite(cfg)
        report.notes.extend(f"skipped {fam}: not applicable" for fam in skipped)
        return _report_out(args, report)
    if args.command == "symbolic":
        return _report_out(args, symbolic_tilde_identities(spec.m, spec.n))
    if args.command == "selfcheck":
        families, _ = expand_families("all", spec.m, spec.n)
        cfg = SuiteConfig(spec, families, random_seed=args.seed, dimension_cap=args.dimension_cap)
        return _report_out(args, mutation_selfcheck(cfg))

    rep = build_representation(spec, args.dimension_cap)
    if args.command == "basis":
        if args.format == "json":
            rows = [
                {"index": i, "f": list(s.fermions), "b": list(s.bosons), "N": s.total}
                for i, s in enumerate(rep.basis)
            ]
            _emit(args, json.dumps(rows) + "\n")
        else:
            _emit(args, rep.dump_basis())
        return EXIT_OK
    if args.command == "dump-op":
        mat = parse_operator_name(args.operator, rep)
        if args.format == "json":
            payload = {
                "operator": args.operator,
                "dim": mat.dim,
                "entries": [[r, c, str(Fraction(v))] for r, c, v in mat.entries()],
            }
            _emit(args, json.dumps(payload) + "\n")
        else:
            _emit(args, mat.dump())
        return EXIT_OK
    if args.command == "spectrum":
        mat = parse_operator_name(args.operator, rep)
        if not mat.is_diagonal():
            raise ConfigurationError(f"{args.operator} is not diagonal")
        counts = sorted(Counter(Fraction(v) for v in mat.diag()).items())
        if args.format == "json":
            _emit(args, json.dumps({"operator": args.operator, "spectrum": [[str(v), c] for v, c in counts]}) + "\n")
        else:
            _emit(args, "".join(f"{v} {c}\n" for v, c in counts))
        return EXIT_OK
    raise ConfigurationError(f"unknown command {args.command!r}")  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return _run(args)
    except (ConfigurationError, ConstructionError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
