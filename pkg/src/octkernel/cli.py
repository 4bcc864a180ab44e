"""octkernel command line: kernelize, solve, generate, verify.

Exit codes: 0 success, 1 parse or usage error, 2 precondition failure,
3 resource ceiling exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .generators import COMPOSITIONS, GenerationError, random_instance, validate_composition
from .instances import FormatError, OctInstance, parse_instance, relabel_dense, write_instance
from .kernel import PreconditionError, kernelize
from .separators import EnumerationCeilingError
from .solvers import DEFAULT_CEILING, InvalidModulatorError, SolverCeilingError, solve_instance
from .treewidth import CeilingError

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_CEILING = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...] = ()
    output: str | None = None
    w: int = 1
    seed: int = 0
    ceiling_solver: int = DEFAULT_CEILING
    ceiling_enum: int = 1_000_000
    trace: bool = False

    def __post_init__(self):
        if self.w < 1:
            raise UsageError("-w must be at least 1")
        if self.ceiling_solver < 1 or self.ceiling_enum < 1:
            raise UsageError("ceilings must be positive")


def _read(path: str) -> OctInstance:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return parse_instance(text)


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_kernelize(cfg: RunConfig) -> int:
    inst = _read(cfg.inputs[0])
    res = kernelize(inst, cfg.w, cfg.ceiling_enum)
    out, _ = relabel_dense(res.instance)
    _emit(write_instance(out), cfg.output)
    if cfg.trace:
        sys.stderr.write(res.trace_text())
    return EXIT_OK


def cmd_solve(cfg: RunConfig) -> int:
    inst = _read(cfg.inputs[0])
    sol = solve_instance(inst, ceiling=cfg.ceiling_solver)
    if sol is None:
        line = "NO\n"
    else:
        line = " ".join(["YES", str(sol.cost)] + [str(v) for v in sorted(sol.deleted)]) + "\n"
    _emit(line, cfg.output)
    return EXIT_OK


def cmd_generate(cfg: RunConfig, args) -> int:
    if args.kind == "random":
        try:
            inst = random_instance(cfg.seed, args.n, args.p, args.strategy, cfg.w, args.k, args.budget)
        except ValueError as e:
            raise UsageError(str(e)) from None
        _emit(write_instance(inst), cfg.output)
        return EXIT_OK
    if not cfg.inputs:
        raise UsageError(f"generate {args.kind} needs at least one input instance")
    inputs = [relabel_dense(_read(p))[0] for p in cfg.inputs]
    try:
        comp = COMPOSITIONS[args.kind](inputs, seed=cfg.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    problems = validate_composition(args.kind, comp)
    if problems:
        sys.stderr.write("".join(f"validation: {p}\n" for p in problems))
        return EXIT_PRECONDITION
    _emit(write_instance(comp.instance), cfg.output)
    sidecar = json.dumps(comp.sidecar(), indent=2, sort_keys=True) + "\n"
    if cfg.output and cfg.output != "-":
        Path(cfg.output + ".roles.json").write_text(sidecar)
    else:
        sys.stderr.write(sidecar)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    from .verify import run_suite

    instances = None
    if cfg.inputs:
        instances = [(_read(p), cfg.w) for p in cfg.inputs]
    report = run_suite(cfg.seed, args.scale, instances=instances, dump_dir=args.dump)
    _emit(report.to_json() + "\n", cfg.output)
    sys.stderr.write(report.summary())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", type=int, default=1, help="treewidth bound of G - X (default 1)")
    common.add_argument("--seed", type=int, default=None, help="master seed (falls back to $OCTKERNEL_SEED, then 0)")
    common.add_argument("--ceiling-solver", type=int, default=DEFAULT_CEILING, help="largest graph for the branching solver")
    common.add_argument("--ceiling-enum", type=int, default=1_000_000, help="subset budget for separator enumeration")
    common.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    common.add_argument("--trace", action="store_true", help="print the stage trace to stderr")

    p = argparse.ArgumentParser(prog="octkernel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    k = sub.add_parser("kernelize", parents=[common], help="kernelize an instance")
    k.add_argument("input")
    s = sub.add_parser("solve", parents=[common], help="solve an instance exactly")
    s.add_argument("input")
    g = sub.add_parser("generate", help="generate instances")
    gsub = g.add_subparsers(dest="kind", required=True)
    r = gsub.add_parser("random", parents=[common])
    r.add_argument("-n", type=int, required=True, help="number of vertices")
    r.add_argument("-p", type=float, default=0.5, help="edge probability")
    r.add_argument("--strategy", choices=["planted", "computed"], default="planted")
    r.add_argument("-k", type=int, default=None, help="modulator size (planted)")
    r.add_argument("-l", "--budget", type=int, default=None, help="solution budget (default random in 0..|X|)")
    for kind in COMPOSITIONS:
        c = gsub.add_parser(kind, parents=[common])
        c.add_argument("inputs", nargs="+")
    v = sub.add_parser("verify", parents=[common], help="run the property suite")
    v.add_argument("inputs", nargs="*")
    v.add_argument("--scale", type=int, default=1)
    v.add_argument("--dump", default=None, help="directory for counterexample instance files")
    return p


def _seed(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("OCTKERNEL_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"OCTKERNEL_SEED is not an integer: {env!r}") from None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        inputs = getattr(args, "inputs", None) or ([args.input] if hasattr(args, "input") else [])
        cfg = RunConfig(
            command=args.command,
            inputs=tuple(inputs),
            output=args.output,
            w=args.w,
            seed=_seed(args.seed),
            ceiling_solver=args.ceiling_solver,
            ceiling_enum=args.ceiling_enum,
            trace=args.trace,
        )
        if cfg.command == "kernelize":
            return cmd_kernelize(cfg)
        if cfg.command == "solve":
            return cmd_solve(cfg)
        if cfg.command == "generate":
            return cmd_generate(cfg, args)
        return cmd_verify(cfg, args)
    except (FormatError, UsageError, GenerationError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (PreconditionError, InvalidModulatorError) as e:
        sys.stderr.write(f"precondition: {e}\n")
        return EXIT_PRECONDITION
    except (SolverCeilingError, EnumerationCeilingError, CeilingError) as e:
        sys.stderr.write(f"ceiling: {e}\n")
        return EXIT_CEILING


if __name__ == "__main__":
    sys.exit(main())
