"""Batch command-line front end.

Every computation in the library is reachable as a subcommand with
JSON/CSV/pretty output on stdout. Exit status: 0 on success, 2 on domain
errors (also when a guarded sweep case disagrees), 1 on I/O or parse
errors. Domain and parse failures print a machine-readable error object.
Output is deterministic for a fixed request; random sweeps take an
explicit seed and default to a fixed one.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .compose import sierpinski, sierpinski_structure, verify_compose
from .errors import DomainError, InvalidRange, NonSplitSpectrum, ParseError
from .fields import FieldSpec, parse_field
from .matrices import ExactMatrix, rational_eigenvalues
from .mci import (
    AlgebraElement,
    BasisOrder,
    MciDescriptor,
    hilbert_function,
    mci_basis,
    mult_matrix,
    strong_lefschetz_check,
    weak_lefschetz_check,
    weyr_of_general_element,
)
from .weyr import (
    Partition,
    build_basic_weyr,
    partitions_of,
    weyr_structure_at,
)

DEFAULT_SWEEP_SEED = 987654321
_SWEEP_SIZE_CAP = 512


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="ground field: q or fp:<p>")
    common.add_argument(
        "--output",
        choices=("json", "csv", "pretty"),
        default="json",
        help="serialization format (default json)",
    )

    parser = _Parser(prog="weyrkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weyr", parents=[common], help="structure of a matrix at an eigenvalue")
    p.add_argument("--matrix", required=True, help="path to a matrix (.json or .csv)")
    p.add_argument("--eigenvalue", required=True)

    p = sub.add_parser("jordan", parents=[common], help="Jordan block sizes at an eigenvalue")
    p.add_argument("--matrix", required=True)
    p.add_argument("--eigenvalue", required=True)

    p = sub.add_parser(
        "compose", parents=[common], help="verify the block-composition prediction"
    )
    p.add_argument("--matrix", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument(
        "--eigenvalue",
        help="eigenvalue to check; all rational eigenvalues when omitted",
    )

    p = sub.add_parser("sierpinski", parents=[common], help="doubling 0/1 matrices")
    p.add_argument("n", type=int)
    p.add_argument(
        "--structure", action="store_true", help="emit the structure partition instead"
    )
    p.add_argument(
        "--verify",
        action="store_true",
        help="verify the doubling step from n-1 to n (requires n >= 1)",
    )

    p = sub.add_parser("mci-hilbert", parents=[common], help="graded component dimensions")
    p.add_argument("--degrees", required=True)

    p = sub.add_parser("mci-mult", parents=[common], help="multiplication matrix")
    p.add_argument("--degrees", required=True)
    p.add_argument(
        "--element",
        default="l",
        help="'l' (variable sum), 'g' (product of 1+x_i), '1+l', or a JSON path",
    )
    p.add_argument("--order", choices=("graded", "doubling"), default="graded")

    p = sub.add_parser("mci-lefschetz", parents=[common], help="full-rank scan of power maps")
    p.add_argument("--degrees", required=True)
    p.add_argument("--kind", choices=("strong", "weak"), default="strong")
    p.add_argument("--element", default="l")

    p = sub.add_parser(
        "mci-weyr", parents=[common], help="structure of the variable-sum map"
    )
    p.add_argument("--degrees", required=True)

    p = sub.add_parser(
        "verify-sweep", parents=[common], help="batch composition verification"
    )
    p.add_argument("--t", default="2", help="comma-separated block counts")
    p.add_argument("--lambdas", default="0,1", help="comma-separated eigenvalues")
    p.add_argument(
        "--max-sum",
        type=int,
        default=5,
        help="exhaustive mode: all partitions of 1..max-sum (default)",
    )
    p.add_argument("--random", type=int, default=0, help="random mode: number of cases")
    p.add_argument("--max-parts", type=int, default=5)
    p.add_argument("--max-part", type=int, default=4)
    p.add_argument("--seed", type=int, default=DEFAULT_SWEEP_SEED)

    return parser


# -- input/output helpers ----------------------------------------------------------


def _load_matrix(path: str, field: FieldSpec) -> ExactMatrix:
    text = Path(path).read_text()
    if path.endswith(".csv"):
        return ExactMatrix.from_csv(text, field)
    return ExactMatrix.from_json(text)


def _parse_degrees(text: str, field: FieldSpec) -> MciDescriptor:
    try:
        degrees = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"malformed degree list {text!r}") from None
    try:
        return MciDescriptor(degrees, field)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _parse_element(spec: str, d: MciDescriptor) -> AlgebraElement:
    if spec == "l":
        return AlgebraElement.sum_of_variables(d.nvars)
    if spec == "g":
        return AlgebraElement.product_of_one_plus_variables(d.nvars)
    if spec == "1+l":
        return AlgebraElement.sum_of_variables(d.nvars) + AlgebraElement.one(d.nvars)
    return AlgebraElement.parse(Path(spec).read_text(), d)


def _emit_dict(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    elif fmt == "csv":
        keys = list(obj)
        print(",".join(keys))
        print(",".join(_csv_cell(obj[k]) for k in keys))
    else:
        for k, v in obj.items():
            print(f"{k}: {_pretty_cell(v)}")


def _csv_cell(v) -> str:
    if isinstance(v, list):
        return '"' + " ".join(_csv_cell(x) for x in v) + '"'
    return str(v)


def _pretty_cell(v) -> str:
    if isinstance(v, list):
        return " ".join(_pretty_cell(x) for x in v)
    return str(v)


def _emit_matrix(m: ExactMatrix, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(m.to_dict(), indent=2))
    elif fmt == "csv":
        print(m.to_csv(), end="")
    else:
        cells = [[m.field.format(x) for x in m.row_values(i)] for i in range(m.rows)]
        width = max(len(c) for row in cells for c in row)
        for row in cells:
            print(" ".join(c.rjust(width) for c in row))


def _emit_partition(p: Partition, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(p.to_list()))
    elif fmt == "csv":
        print(",".join(str(x) for x in p))
    else:
        print(str(p))


def _emit_intlist(values: list[int], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(values))
    elif fmt == "csv":
        print(",".join(str(x) for x in values))
    else:
        print(" ".join(str(x) for x in values))


# -- subcommand handlers ------------------------------------------------------------


def _cmd_weyr(args, field: FieldSpec) -> int:
    m = _load_matrix(args.matrix, field)
    report = weyr_structure_at(m, m.field.scalar(args.eigenvalue))
    _emit_dict(report.to_dict(), args.output)
    return 0


def _cmd_jordan(args, field: FieldSpec) -> int:
    m = _load_matrix(args.matrix, field)
    lam = m.field.scalar(args.eigenvalue)
    jordan = weyr_structure_at(m, lam).structure.dual()
    _emit_dict({"eigenvalue": str(lam), "jordan": jordan.to_list()}, args.output)
    return 0


def _cmd_compose(args, field: FieldSpec) -> int:
    m = _load_matrix(args.matrix, field)
    if args.eigenvalue is not None:
        lams = [m.field.scalar(args.eigenvalue)]
    else:
        spectrum = rational_eigenvalues(m)
        if not spectrum.split:
            raise NonSplitSpectrum(
                "the spectrum does not split over Q; pass --eigenvalue explicitly"
            )
        lams = [v for v, _ in spectrum.eigenvalues]
    reports = [verify_compose(m, args.t, lam) for lam in lams]
    if len(reports) == 1:
        _emit_dict(reports[0].to_dict(), args.output)
    elif args.output == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for r in reports:
            _emit_dict(r.to_dict(), args.output)
    return 0


def _cmd_sierpinski(args, field: FieldSpec) -> int:
    if args.n < 0:
        raise ParseError("n must be non-negative")
    if args.verify:
        if args.n < 1:
            raise ParseError("--verify needs n >= 1")
        report = verify_compose(sierpinski(args.n - 1, field), 2, field.scalar(1))
        _emit_dict(report.to_dict(), args.output)
        return 0
    if args.structure:
        _emit_partition(sierpinski_structure(args.n), args.output)
        return 0
    _emit_matrix(sierpinski(args.n, field), args.output)
    return 0


def _cmd_mci_hilbert(args, field: FieldSpec) -> int:
    d = _parse_degrees(args.degrees, field)
    _emit_intlist(hilbert_function(d), args.output)
    return 0


def _cmd_mci_mult(args, field: FieldSpec) -> int:
    d = _parse_degrees(args.degrees, field)
    basis = mci_basis(d, BasisOrder(args.order))
    element = _parse_element(args.element, d)
    _emit_matrix(mult_matrix(element, d, basis), args.output)
    return 0


def _cmd_mci_lefschetz(args, field: FieldSpec) -> int:
    d = _parse_degrees(args.degrees, field)
    element = _parse_element(args.element, d)
    check = strong_lefschetz_check if args.kind == "strong" else weak_lefschetz_check
    _emit_dict(check(d, element).to_dict(), args.output)
    return 0


def _cmd_mci_weyr(args, field: FieldSpec) -> int:
    d = _parse_degrees(args.degrees, field)
    structure, sorted_hilbert, agree = weyr_of_general_element(d)
    _emit_dict(
        {
            "structure": structure.to_list(),
            "hilbert_sorted": sorted_hilbert.to_list(),
            "agree": agree,
        },
        args.output,
    )
    return 0


def _cmd_verify_sweep(args, field: FieldSpec) -> int:
    try:
        ts = [int(x) for x in args.t.split(",")]
        lams = [field.scalar(x.strip()) for x in args.lambdas.split(",")]
    except ValueError:
        raise ParseError("malformed --t or --lambdas list") from None
    if any(t < 1 for t in ts):
        raise ParseError("block counts must be positive")

    shapes: list[tuple[int, ...]]
    if args.random > 0:
        rng = random.Random(args.seed)
        shapes = []
        for _ in range(args.random):
            count = rng.randint(1, args.max_parts)
            shapes.append(
                tuple(sorted((rng.randint(1, args.max_part) for _ in range(count)), reverse=True))
            )
    else:
        shapes = [
            parts for total in range(1, args.max_sum + 1) for parts in partitions_of(total)
        ]

    cases = []
    guarded_disagreements = 0
    agreed = 0
    for shape in shapes:
        for t in ts:
            if t * sum(shape) > _SWEEP_SIZE_CAP:
                raise InvalidRange(
                    f"case t={t}, m={shape} exceeds the per-case size cap {_SWEEP_SIZE_CAP}"
                )
            for lam in lams:
                b = build_basic_weyr(lam, Partition(shape), field)
                report = verify_compose(b, t, lam, enforce_guard=False)
                cases.append(report.to_dict())
                if report.agree:
                    agreed += 1
                elif report.guard_ok:
                    guarded_disagreements += 1
    summary = {
        "seed": args.seed if args.random > 0 else None,
        "field": str(field),
        "total": len(cases),
        "agreed": agreed,
        "guarded_disagreements": guarded_disagreements,
    }
    if args.output == "json":
        print(json.dumps({"summary": summary, "cases": cases}, indent=2))
    elif args.output == "csv":
        print("m,t,eigenvalue,guard_ok,agree")
        for c in cases:
            print(
                '"{}",{},{},{},{}'.format(
                    " ".join(str(x) for x in c["input_structure"]),
                    c["t"],
                    c["eigenvalue"],
                    c["guard_ok"],
                    c["agree"],
                )
            )
    else:
        for c in cases:
            print(
                "m=({}) t={} lam={} guard={} agree={}".format(
                    " ".join(str(x) for x in c["input_structure"]),
                    c["t"],
                    c["eigenvalue"],
                    "yes" if c["guard_ok"] else "no",
                    "yes" if c["agree"] else "no",
                )
            )
        print(
            f"total={summary['total']} agreed={summary['agreed']} "
            f"guarded_disagreements={summary['guarded_disagreements']}"
        )
    return 2 if guarded_disagreements else 0


_HANDLERS = {
    "weyr": _cmd_weyr,
    "jordan": _cmd_jordan,
    "compose": _cmd_compose,
    "sierpinski": _cmd_sierpinski,
    "mci-hilbert": _cmd_mci_hilbert,
    "mci-mult": _cmd_mci_mult,
    "mci-lefschetz": _cmd_mci_lefschetz,
    "mci-weyr": _cmd_mci_weyr,
    "verify-sweep": _cmd_verify_sweep,
}


def _print_error(exc: Exception) -> None:
    print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except ParseError as exc:
        _print_error(exc)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    try:
        field = parse_field(args.field)
        return _HANDLERS[args.command](args, field)
    except DomainError as exc:
        _print_error(exc)
        return 2
    except (ParseError, OSError, json.JSONDecodeError) as exc:
        _print_error(exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
