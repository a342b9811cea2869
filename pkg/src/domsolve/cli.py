"""Command line front end: solve, verify, oracle, gen and bench.

Exit status: 0 when the question was decided, 1 on usage errors
(including unsupported variant/modulator pairs), 2 on bad input and 3 when
an internal invariant check fails.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .dispatch import ALGOS, solve
from .errors import (
    InstanceSyntaxError,
    InvariantViolation,
    MalformedInputError,
    ModulatorMismatchError,
    NotClusterGraphError,
    NotSplitGraphError,
    OracleCapError,
    UnsupportedProblemError,
)
from .instances import format_solution, gen_planted, parse_instance, parse_solution, serialize_instance
from .modulator import Kind, Modulator, verify_modulator
from .oracle import brute_min, check_solution
from .problem import DomInstance, DomSolution, Variant

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3

VARIANTS = [v.value for v in Variant]
KINDS = [k.value for k in Kind]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="domsolve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--problem", choices=VARIANTS, help="override the instance variant")
        p.add_argument("--kind", choices=KINDS, help="override the modulator kind")
        p.add_argument("--budget", type=int, help="override the budget")
        p.add_argument("--threshold", type=int, help="override the threshold r")
        p.add_argument("--machine", action="store_true", help="print one report line")
        p.add_argument("--timing", action="store_true", help="fill in wall time in reports")

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("--input", required=True)
    p.add_argument("--algo", choices=ALGOS, default="dp")
    common(p)

    p = sub.add_parser("oracle", help="solve an instance file by brute force")
    p.add_argument("--input", required=True)
    common(p)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--solution", required=True)
    common(p)

    for name, helptext in (("gen", "write a planted instance"), ("bench", "solve planted instances")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--problem", choices=VARIANTS, default="ds")
        p.add_argument("--kind", choices=["cvd", "svd"], default="cvd")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--params", type=_ints, help="clique sizes (cvd) or |C|,|I| (svd)")
        p.add_argument("--density", type=float, default=0.3)
        p.add_argument("--modulator-density", type=float)
        p.add_argument("--budget", type=int)
        p.add_argument("--threshold", type=int, default=1)
        if name == "gen":
            p.add_argument("-k", type=int, default=2)
            p.add_argument("--output")
        else:
            p.add_argument("--algo", choices=ALGOS, default="dp")
            p.add_argument("--ks", type=_ints, default=[2, 4, 6, 8])
            p.add_argument("--count", type=int, default=3)
            p.add_argument("--machine", action="store_true")
            p.add_argument("--timing", action="store_true")
    return parser


def _load(args) -> DomInstance:
    inst = parse_instance(Path(args.input).read_text(encoding="ascii"))
    if args.kind is not None and Kind(args.kind) is not inst.kind:
        M = Modulator(Kind(args.kind), inst.S)
        if not verify_modulator(inst.graph, M):
            raise ModulatorMismatchError(f"modulator is not a valid {args.kind} set")
        inst = replace(inst, modulator=M)
    if args.problem is not None:
        inst = replace(inst, variant=Variant(args.problem))
    if args.budget is not None:
        inst = replace(inst, budget=args.budget)
    if args.threshold is not None:
        inst = replace(inst, r=args.threshold)
    return inst


def report_line(ident: str, inst: DomInstance, algo: str, sol: DomSolution, micros: int) -> str:
    size = "-" if sol.size is None else str(sol.size)
    counters = " ".join(f"{k}={v}" for k, v in sol.counters.items())
    return f"r {ident} {inst.variant.value} {algo} {sol.status.value} {size} {micros} {counters}".rstrip()


def _timed(inst: DomInstance, algo: str) -> tuple[DomSolution, int]:
    start = time.perf_counter()
    sol = solve(inst, algo)
    return sol, int((time.perf_counter() - start) * 1e6)


def _emit_solution(args, ident: str, inst: DomInstance, algo: str, out) -> int:
    sol, micros = _timed(inst, algo)
    if sol.feasible and not check_solution(inst.graph, sol.vertices, inst.spec):
        raise InvariantViolation("solver returned a set that fails the checker")
    if args.machine:
        out.write(report_line(ident, inst, algo, sol, micros if args.timing else 0) + "\n")
    else:
        out.write(format_solution(sol))
    return EXIT_OK


def cmd_solve(args, out) -> int:
    inst = _load(args)
    return _emit_solution(args, Path(args.input).stem, inst, args.algo, out)


def cmd_oracle(args, out) -> int:
    inst = _load(args)
    return _emit_solution(args, Path(args.input).stem, inst, "oracle", out)


def cmd_verify(args, out) -> int:
    inst = _load(args)
    claim = parse_solution(Path(args.solution).read_text(encoding="ascii"))
    if claim.feasible:
        if not check_solution(inst.graph, claim.vertices, inst.spec):
            out.write(f"v INVALID set is not a valid {inst.variant.name}\n")
        elif inst.budget is not None and len(claim.vertices) > inst.budget:
            out.write(f"v INVALID size {len(claim.vertices)} exceeds budget {inst.budget}\n")
        else:
            out.write("v VALID\n")
        return EXIT_OK
    truth = brute_min(inst.graph, inst.spec)
    if truth.feasible and (inst.budget is None or len(truth.vertices) <= inst.budget):
        out.write(f"v INVALID a solution of size {len(truth.vertices)} exists\n")
    else:
        out.write("v VALID\n")
    return EXIT_OK


def _default_params(kind: str) -> list[int]:
    return [3, 3, 2] if kind == "cvd" else [4, 6]


def _planted(args, seed: int, k: int) -> DomInstance:
    return gen_planted(
        seed,
        args.kind,
        args.params or _default_params(args.kind),
        k,
        p=args.density,
        variant=args.problem,
        r=args.threshold,
        budget=args.budget,
        p_modulator=args.modulator_density,
    )


def cmd_gen(args, out) -> int:
    text = serialize_instance(_planted(args, args.seed, args.k))
    if args.output:
        Path(args.output).write_text(text, encoding="ascii", newline="\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    for k in args.ks:
        for j in range(args.count):
            inst = _planted(args, args.seed * 1_000_003 + k * 1009 + j, k)
            sol, micros = _timed(inst, args.algo)
            line = report_line(f"k{k}-{j}", inst, args.algo, sol, micros if args.timing else 0)
            if args.machine:
                out.write(line + "\n")
            else:
                out.write(f"{line}\n{format_solution(sol)}")
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except UnsupportedProblemError as exc:
        err.write(f"unsupported: {exc}\n")
        return EXIT_USAGE
    except InvariantViolation as exc:
        err.write(f"internal invariant violated: {exc}\n")
        return EXIT_INVARIANT
    except (
        OSError,
        UnicodeDecodeError,
        InstanceSyntaxError,
        MalformedInputError,
        ModulatorMismatchError,
        NotClusterGraphError,
        NotSplitGraphError,
        OracleCapError,
    ) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
