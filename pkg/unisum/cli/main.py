import argparse
import sys
from typing import Callable, List, Optional

from unisum.analysis.decompose import decompose
from unisum.analysis.verify import check_axioms, verify_pointwise
from unisum.cli.builder import build
from unisum.cli.models import load_document
from unisum.cli.render import render
from unisum.constants import BINARY_GRID, DECOMPOSE_GRID, DECOMPOSE_RESIDUAL_TOL, TERNARY_GRID
from unisum.lib.errors import (
    ConstructionError,
    DomainError,
    ResidualExceededError,
    SchemaError,
    SpecInvalidError,
    UnisumError,
)
from unisum.lib.logging import logger, traceback_log_err
from unisum.lib.numeric import format_number
from unisum.uninorms.models import OperatorHandle

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_SCHEMA = 2
EXIT_CONSTRUCTION = 3
EXIT_RESIDUAL = 4
EXIT_IO = 5


def _load(path: str) -> OperatorHandle:
    return build(load_document(path))


def _point(values) -> str:
    if values is None:
        return "-"
    return ",".join(format_number(float(v)) for v in values)


def cmd_eval(args: argparse.Namespace) -> int:
    U = _load(args.spec)
    print(format_number(U(args.x, args.y)))
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    result = render(_load(args.spec), args.grid, args.out)
    print(f"csv={result.csv_path}")
    print(f"pgm={result.pgm_path}")
    print(f"max_jump={format_number(result.max_jump)} jump_pixels={result.jump_pixels}")
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    result = decompose(_load(args.spec), grid_n=args.grid, residual_tol=args.tol)
    print(f"breakpoints={_point(result.breakpoints)}")
    for s in result.summands:
        fit = "-" if s.fit_residual is None else format_number(s.fit_residual)
        print(
            f"summand a={format_number(s.a)} b={format_number(s.b)} c={format_number(s.c)} d={format_number(s.d)}"
            f" kind={s.kind.value} class={s.proof_class} fit_residual={fit}"
        )
    for name, assignments in (("g", result.spec.g), ("h", result.spec.h)):
        for assignment in assignments:
            print(f"{name}({format_number(assignment.point)})={assignment.choice}")
    print(f"residual={format_number(result.residual)} witness={_point(result.witness)}")
    return EXIT_OK


def cmd_axioms(args: argparse.Namespace) -> int:
    report = check_axioms(_load(args.spec), grid_n=args.grid, tol=args.tol, ternary_n=args.ternary, seed=args.seed)
    for finding in report.findings:
        print(
            f"axiom={finding.name} max_violation={format_number(finding.max_violation)}"
            f" witness={_point(finding.witness)}"
        )
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    diff = verify_pointwise(_load(args.spec_a), _load(args.spec_b), grid_n=args.grid, tol=args.tol)
    print(f"max_difference={format_number(diff.max_difference)} witness={_point(diff.witness)}")
    return EXIT_OK if diff.within_tol else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unisum",
        description="Construct, evaluate, render and decompose uninorms described by JSON documents.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("eval", help="Evaluate the operator at one point.")
    p.add_argument("spec", help="Path to the operator document.")
    p.add_argument("x", type=float, help="First argument in [0,1].")
    p.add_argument("y", type=float, help="Second argument in [0,1].")
    p.set_defaults(handler=cmd_eval)

    p = commands.add_parser("render", help="Write a CSV of values and a PGM of the jump field.")
    p.add_argument("spec", help="Path to the operator document.")
    p.add_argument("--grid", type=int, default=BINARY_GRID, help=f"Samples per axis (default: {BINARY_GRID}).")
    p.add_argument("--out", required=True, help="Output prefix; PREFIX.csv and PREFIX.pgm are written.")
    p.set_defaults(handler=cmd_render)

    p = commands.add_parser("decompose", help="Recover an extended ordinal sum equal to the operator.")
    p.add_argument("spec", help="Path to the operator document; set blackbox on the root to hide its structure.")
    p.add_argument(
        "--grid", type=int, default=DECOMPOSE_GRID, help=f"Scan resolution (default: {DECOMPOSE_GRID})."
    )
    p.add_argument(
        "--tol",
        type=float,
        default=DECOMPOSE_RESIDUAL_TOL,
        help=f"Maximum pointwise residual of the reconstruction (default: {DECOMPOSE_RESIDUAL_TOL}).",
    )
    p.set_defaults(handler=cmd_decompose)

    p = commands.add_parser("axioms", help="Check commutativity, associativity, monotonicity and neutrality.")
    p.add_argument("spec", help="Path to the operator document.")
    p.add_argument("--grid", type=int, default=BINARY_GRID, help=f"Binary grid size (default: {BINARY_GRID}).")
    p.add_argument(
        "--ternary", type=int, default=TERNARY_GRID, help=f"Associativity grid size (default: {TERNARY_GRID})."
    )
    p.add_argument("--tol", type=float, default=None, help="Tolerance (default: by evaluation mode).")
    p.add_argument("--seed", type=int, default=None, help="Seed for a randomized associativity witness search.")
    p.set_defaults(handler=cmd_axioms)

    p = commands.add_parser("verify", help="Pointwise difference of two operators.")
    p.add_argument("spec_a", help="Path to the first operator document.")
    p.add_argument("spec_b", help="Path to the second operator document.")
    p.add_argument("--grid", type=int, default=BINARY_GRID, help=f"Samples per axis (default: {BINARY_GRID}).")
    p.add_argument("--tol", type=float, default=None, help="Tolerance (default: by evaluation mode).")
    p.set_defaults(handler=cmd_verify)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (SchemaError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except ConstructionError as e:
        rule = f" (rule: {e.rule})" if isinstance(e, SpecInvalidError) else ""
        print(f"error: {e}{rule}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except ResidualExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        print(f"residual={format_number(e.residual)} witness={_point(e.witness)}")
        return EXIT_RESIDUAL
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except UnisumError as e:
        traceback_log_err(e, f"unisum {args.command} failed")
        return EXIT_FAILED


def main():
    code = run()
    logger.debug("Command finished", extra={"exit_code": code})
    sys.exit(code)


if __name__ == "__main__":
    main()
