"""The ``casp`` command-line driver.

Exit status: 0 on success or a passing verdict, 1 on a failing verdict, a
crashed run or a failed lowering, 2 on usage, parse, type or input errors.
Diagnostics go to stderr; artifacts go to stdout or the ``-o`` file.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional

from .errors import CaspError, LowerError
from .interp import eval_machine, eval_program, extract_text, state_layout
from .lower import lower_spec
from .parser import (SourceFile, parse_alewife, parse_machine, parse_mapping,
                     parse_program, parse_spec)
from .printer import pretty_print
from .statefile import dump_state, load_state
from .typecheck import type_machine, type_program, type_spec
from .values import MachineState
from .verify import DEFAULT_CAP, VerifyConfig, layout_env, verify

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _seed_pointer(text: str) -> tuple[str, str]:
    reg, sep, region = text.partition("=")
    if not sep or not reg or not region:
        raise argparse.ArgumentTypeError(f"expected REG=REGION, got {text!r}")
    return reg.strip(), region.strip()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="casp", description="Cassiopea/Alewife toolchain")
    ap.add_argument("-v", "--verbose", action="store_true", help="log vacuous states etc.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and typecheck a machine (and optionally a spec)")
    p.add_argument("machine")
    p.add_argument("--spec")
    p.add_argument("--program")

    p = sub.add_parser("run", help="run a program from an initial state")
    p.add_argument("machine")
    p.add_argument("program")
    p.add_argument("--init", help="initial state file (default: all zero)")
    p.add_argument("--spec", help="spec whose memory regions the state includes")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="check a program against a spec")
    p.add_argument("machine")
    p.add_argument("spec")
    p.add_argument("program")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true",
                      help="enumerate every initial state (the default)")
    mode.add_argument("--samples", type=int, metavar="N", help="check N sampled states")
    mode.add_argument("--init", metavar="FILE", help="check only the state in FILE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seed-pointer", type=_seed_pointer, action="append", default=[],
                   metavar="REG=REGION")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help=argparse.SUPPRESS)
    p.add_argument("--lint-reads", action="store_true",
                   help="warn when the program reads registers the precondition omits")
    p.add_argument("-o", "--output", help="write the counterexample state here")

    p = sub.add_parser("lower", help="translate an Alewife spec for one machine")
    p.add_argument("machine")
    p.add_argument("mapping")
    p.add_argument("alewife")
    p.add_argument("-o", "--output")
    p.add_argument("--allow-quantifiers", type=_bool, nargs="?", const=True, default=True,
                   metavar="BOOL")
    p.add_argument("--emit-map-trace", action="store_true",
                   help="print the declaration order and dependencies to stderr")

    p = sub.add_parser("extract", help="print the assembly text of a program")
    p.add_argument("machine")
    p.add_argument("program")
    p.add_argument("-o", "--output")
    return ap


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str, parse):
    return parse(SourceFile.from_path(path))


def cmd_check(args) -> int:
    m = _load(args.machine, parse_machine)
    envs = type_machine(m)
    if args.spec:
        envs = type_spec(m, _load(args.spec, parse_spec), machine_envs=envs)
    if args.program:
        type_program(None, _load(args.program, parse_program), envs)
    return EXIT_OK


def cmd_run(args) -> int:
    m = _load(args.machine, parse_machine)
    envs = type_machine(m)
    prog = _load(args.program, parse_program)
    env = eval_machine(m)
    if args.spec:
        spec = _load(args.spec, parse_spec)
        envs = type_spec(m, spec, machine_envs=envs)
        env = layout_env(env, spec)
    type_program(None, prog, envs)
    layout = state_layout(envs, env)
    text = ""
    if args.init:
        with open(args.init, encoding="utf-8") as fh:
            text = fh.read()
    state = load_state(text, layout, env)
    out = eval_program(env, state, prog)
    final = MachineState(out.state.regs, out.state.mem)
    _emit(dump_state(layout, final), args.output)
    if out.crashed:
        print("casp: program crashed", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    m = _load(args.machine, parse_machine)
    spec = _load(args.spec, parse_spec)
    prog = _load(args.program, parse_program)
    envs = type_spec(m, spec)
    cfg = VerifyConfig(exhaustive=args.samples is None, samples=args.samples or 0,
                       seed=args.seed, seed_pointers=tuple(args.seed_pointer),
                       cap=args.cap, lint_reads=args.lint_reads)
    states = None
    if args.init:
        env = layout_env(eval_machine(m), spec)
        with open(args.init, encoding="utf-8") as fh:
            states = [load_state(fh.read(), state_layout(envs, env), env)]
    verdict = verify(m, spec, prog, cfg, states=states, envs=envs)
    for w in verdict.warnings:
        print(f"casp: warning: {w}", file=sys.stderr)
    sys.stdout.write(verdict.render())
    if not verdict.passed and args.output and verdict.counterexample is not None:
        _emit(dump_state(verdict.layout, verdict.counterexample), args.output)
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_lower(args) -> int:
    m = _load(args.machine, parse_machine)
    envs = type_machine(m)
    modules = _load(args.mapping, parse_mapping)
    ale = _load(args.alewife, parse_alewife)
    trace: Optional[list] = [] if args.emit_map_trace else None
    try:
        spec = lower_spec(m, modules, ale, allow_quantifiers=args.allow_quantifiers,
                          trace=trace, machine_envs=envs)
    finally:
        for line in trace or ():
            print(line, file=sys.stderr)
    _emit(pretty_print(spec), args.output)
    return EXIT_OK


def cmd_extract(args) -> int:
    m = _load(args.machine, parse_machine)
    prog = _load(args.program, parse_program)
    type_program(None, prog, type_machine(m))
    lines = extract_text(eval_machine(m), MachineState(), prog)
    _emit("".join(line + "\n" for line in lines), args.output)
    return EXIT_OK


COMMANDS = {"check": cmd_check, "run": cmd_run, "verify": cmd_verify,
            "lower": cmd_lower, "extract": cmd_extract}


def main(argv: Optional[list] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="casp: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except LowerError as exc:
        print(exc.diagnostic(), file=sys.stderr)
        return EXIT_FAIL
    except CaspError as exc:
        print(exc.diagnostic(), file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"casp: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
