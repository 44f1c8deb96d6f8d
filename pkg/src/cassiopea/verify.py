"""Checking that a program satisfies a spec over many initial machine states.

For each generated state: evaluate the spec declarations against it, skip the
state unless ``pre`` holds, run the program, then require that it did not
crash, that ``post`` holds on the final state, and that nothing outside the
frame changed. The frame implicitly includes every register and pointer the
postcondition mentions.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from . import ast as A
from .bitvec import BitVec
from .errors import ConfigError, EvalError
from .interp import (StateLayout, eval_decl, eval_decls, eval_expr, eval_machine,
                     eval_program, state_layout)
from .statefile import dump_state
from .typecheck import TypeEnvs, type_program, type_spec
from .values import Env, MachineState, Ptr, Reg, RegionInfo

log = logging.getLogger(__name__)

DEFAULT_CAP = 1 << 24

PRE_UNSAT = "PreUnsatNever"
CRASH = "Crash"
POST_FALSE = "PostFalse"
FRAME_VIOLATION = "FrameViolation"


@dataclass(frozen=True)
class VerifyConfig:
    exhaustive: bool = True
    samples: int = 1000
    seed: int = 0
    # (register name, region name): let that register also hold pointers into the region
    seed_pointers: tuple = ()
    cap: int = DEFAULT_CAP
    lint_reads: bool = False


@dataclass
class Verdict:
    passed: bool
    states: int
    reason: Optional[str] = None
    counterexample: Optional[MachineState] = None
    detail: str = ""
    index: Optional[int] = None
    seed: Optional[int] = None
    layout: Optional[StateLayout] = None
    warnings: list = field(default_factory=list)
    vacuous: int = 0

    def render(self) -> str:
        if self.passed:
            extra = f", seed {self.seed}" if self.seed is not None else ""
            return f"PASS ({self.states} states{extra})\n"
        head = f"FAIL {self.reason} at state:\n"
        body = f"# {self.detail}\n" if self.detail else ""
        if self.seed is not None:
            body += f"# sampled with seed {self.seed}, state #{self.index}\n"
        if self.counterexample is not None and self.layout is not None:
            body += dump_state(self.layout, self.counterexample)
        return head + body


@dataclass(frozen=True)
class FrameViolation:
    where: str

    def __str__(self) -> str:
        return f"{self.where} changed outside the frame"


# ---------------------------------------------------------------- frames

def free_names(e, bound: frozenset = frozenset()) -> list[str]:
    """Variable names occurring free in an expression, in first-occurrence order."""
    out: list[str] = []

    def walk(node, bound):
        if isinstance(node, A.Var):
            if node.name not in bound and node.name not in out:
                out.append(node.name)
            return
        if isinstance(node, A.RegSetLit):
            for n in node.names:
                if n not in bound and n not in out:
                    out.append(n)
            return
        if isinstance(node, A.LetE):
            walk(node.value, bound)
            walk(node.body, bound | {node.name})
            return
        if isinstance(node, (A.Forall, A.Exists)):
            walk(node.domain, bound)
            walk(node.body, bound | {node.var})
            return
        if isinstance(node, A.Node):
            for name in node.__dataclass_fields__:
                if name == "pos":
                    continue
                v = getattr(node, name)
                for child in (v if isinstance(v, tuple) else (v,)):
                    if isinstance(child, A.Node):
                        walk(child, bound)

    walk(e, bound)
    return out


def pointer_forms(e) -> list[A.PtrForm]:
    out: list[A.PtrForm] = []

    def walk(node):
        if isinstance(node, A.PtrForm) and node not in out:
            out.append(node)
        if isinstance(node, A.Node):
            for name in node.__dataclass_fields__:
                if name == "pos":
                    continue
                v = getattr(node, name)
                for child in (v if isinstance(v, tuple) else (v,)):
                    if isinstance(child, A.Node):
                        walk(child)

    walk(e)
    return out


def augment_frame(spec: A.Spec) -> A.Frame:
    """The declared frame plus every name and pointer form used in ``post``.

    Names that do not turn out to denote registers or pointers are ignored
    when the frame is checked.
    """
    extra = A.Frame(tuple(free_names(spec.post)), tuple(pointer_forms(spec.post)))
    return spec.frame.union(extra)


def frame_keys(env: Env, state: MachineState, frame: A.Frame) -> tuple[set, set]:
    """Registers and memory cells a frame allows to change, evaluated in ``state``."""
    regs, cells = set(), set()
    for name in frame.regs:
        v = env.get(name)
        if isinstance(v, Reg):
            regs.add(v)
        elif isinstance(v, Ptr):
            cells.add((v.region, v.offset))
    for ptr in frame.mems:
        v = eval_expr(env, state, ptr)
        if isinstance(v, Ptr):
            cells.add((v.region, v.offset))
    return regs, cells


def check_frame(env: Env, before: MachineState, after: MachineState,
                frame: A.Frame) -> Optional[FrameViolation]:
    """None if every register and cell outside ``frame`` is unchanged."""
    regs, cells = frame_keys(env, before, frame)
    for r in sorted(before.regs, key=lambda r: r.ident):
        if r not in regs and before.regs[r] != after.regs.get(r):
            return FrameViolation(f"register {r.name}")
    for key in sorted(before.mem, key=lambda k: (k[0], k[1])):
        if key not in cells and before.mem[key] != after.mem.get(key):
            return FrameViolation(f"memory cell {key[0]}[{key[1]}]")
    return None


# ---------------------------------------------------------------- state generation

@dataclass(frozen=True)
class Domain:
    """All values one register or cell may start with: bitvectors, then pointers."""

    width: int
    pointers: tuple = ()

    @property
    def size(self) -> int:
        return (1 << self.width) + len(self.pointers)

    def __getitem__(self, i: int):
        plain = 1 << self.width
        if i < plain:
            return BitVec(self.width, i)
        return self.pointers[i - plain]


def _domains(layout: StateLayout, env: Env, cfg: VerifyConfig) -> list[Domain]:
    seeded: dict = {}
    names = {r.name for r in layout.regs}
    for reg_name, region_name in cfg.seed_pointers:
        if reg_name not in names:
            raise ConfigError(f"--seed-pointer: unknown register {reg_name!r}",
                              "UnknownRegister")
        region = env.get(region_name)
        if not isinstance(region, RegionInfo):
            raise ConfigError(f"--seed-pointer: unknown region {region_name!r}",
                              "FrameRegionUnknown")
        seeded.setdefault(reg_name, []).extend(
            Ptr(region.name, off, region.ptr_width) for off in region.offsets())
    out = []
    for r in layout.regs:
        ptrs = tuple(seeded.get(r.name, ()))
        for p in ptrs:
            if p.width != r.width:
                raise ConfigError(f"--seed-pointer: {r.name} is {r.width} bits but "
                                  f"pointers into {p.region} are {p.width}", "WrongWidth")
        out.append(Domain(r.width, ptrs))
    out.extend(Domain(w) for _key, w in layout.cells)
    return out


def _build(layout: StateLayout, values: Iterable) -> MachineState:
    values = list(values)
    n = len(layout.regs)
    regs = dict(zip(layout.regs, values[:n]))
    mem = {key: (v, w) for (key, w), v in zip(layout.cells, values[n:])}
    return MachineState(regs, mem)


def state_space_size(layout: StateLayout, env: Env, cfg: VerifyConfig) -> int:
    size = 1
    for d in _domains(layout, env, cfg):
        size *= d.size
    return size


def gen_states(layout: StateLayout, env: Env, cfg: VerifyConfig) -> Iterator[MachineState]:
    """Initial states: every combination (exhaustive) or ``cfg.samples`` seeded draws."""
    domains = _domains(layout, env, cfg)
    if cfg.exhaustive:
        size = 1
        for d in domains:
            size *= d.size
        if size > cfg.cap:
            raise ConfigError(f"{size} states exceed the exhaustive cap of {cfg.cap}; "
                              "use sampling", "StateSpaceTooLarge")
        for combo in itertools.product(*(range(d.size) for d in domains)):
            yield _build(layout, (d[i] for d, i in zip(domains, combo)))
        return
    rng = random.Random(cfg.seed)
    for _ in range(cfg.samples):
        yield _build(layout, (d[rng.randrange(d.size)] for d in domains))


# ---------------------------------------------------------------- verification

def layout_env(machine_env: Env, spec: A.Spec) -> Env:
    """Machine environment plus the spec's memory regions (which need no state)."""
    env = machine_env.scope()
    for d in spec.decls:
        if isinstance(d, A.MemDecl):
            eval_decl(env, MachineState(), d)
    return env


def _mentioned_regs(env: Env, e) -> set:
    return {v for v in (env.get(n) for n in free_names(e)) if isinstance(v, Reg)}


def verify(machine: A.Machine, spec: A.Spec, prog: A.Program,
           cfg: VerifyConfig = VerifyConfig(),
           states: Optional[list] = None,
           envs: Optional[TypeEnvs] = None) -> Verdict:
    """Check ``prog`` against ``spec`` on generated (or the given) initial states."""
    if envs is None:
        envs = type_spec(machine, spec)
    type_program(None, prog, envs)
    machine_env = eval_machine(machine)
    shape_env = layout_env(machine_env, spec)
    layout = state_layout(envs, shape_env)
    frame = augment_frame(spec)
    sampled = None if cfg.exhaustive or states is not None else cfg.seed
    source = states if states is not None else gen_states(layout, shape_env, cfg)
    control = {shape_env.get(n) for n in envs.control}

    verdict = Verdict(True, 0, seed=sampled, layout=layout)
    pre_held = 0
    first_state = None
    for index, state in enumerate(source):
        verdict.states += 1
        if first_state is None:
            first_state = state
        try:
            env = eval_decls(machine_env, state, spec.decls)
        except EvalError as exc:
            log.info("state #%d: spec declarations failed (%s); treated as vacuous",
                     index, exc.message)
            verdict.vacuous += 1
            continue
        pre = eval_expr(env, state, spec.pre)
        if pre is not True:
            if pre is not False:
                log.info("state #%d: precondition failed to evaluate", index)
                verdict.vacuous += 1
            continue
        pre_held += 1
        run_state = state.traced() if cfg.lint_reads else state
        out = eval_program(env, run_state, prog)
        if cfg.lint_reads and run_state.reads is not None:
            allowed = _mentioned_regs(env, spec.pre) | control
            for r in sorted(run_state.reads - allowed, key=lambda r: r.ident):
                msg = f"program reads {r.name}, which the precondition does not mention"
                if msg not in verdict.warnings:
                    verdict.warnings.append(msg)
        if out.crashed:
            return _fail(verdict, CRASH, state, index, "program crashed")
        after = MachineState(out.state.regs, out.state.mem)
        post = eval_expr(env, after, spec.post)
        if post is not True:
            detail = "postcondition failed to evaluate" if post is not False \
                else "postcondition is false"
            return _fail(verdict, POST_FALSE, state, index, detail)
        violation = check_frame(env, state, after, frame)
        if violation is not None:
            return _fail(verdict, FRAME_VIOLATION, state, index, str(violation))
    if pre_held == 0:
        return _fail(verdict, PRE_UNSAT, first_state, None,
                     "the precondition held in none of the checked states")
    return verdict


def _fail(verdict: Verdict, reason: str, state, index, detail: str) -> Verdict:
    verdict.passed = False
    verdict.reason = reason
    verdict.counterexample = state
    verdict.index = index
    verdict.detail = detail
    return verdict
