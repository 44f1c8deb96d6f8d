"""Big-step evaluation of expressions, statements, declarations and programs.

Dynamic errors in expressions produce ``FAIL``; in statements they crash.
Neither ever raises. The only exceptions come from declarations, which may
not bind ``FAIL``, and from text extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import ast as A
from .bitvec import BitVec
from .builtins import call_builtin
from .errors import EvalError, StateError
from .typecheck import BUILTINS, TypeEnvs
from .values import (FAIL, UNIT, Env, FuncClosure, MachineState, OpDef, ProcClosure, Ptr,
                     Reg, RegionInfo, RegSetValue)


@dataclass(frozen=True)
class TypeAlias:
    """Runtime record of ``type x = t`` so later declarations can resolve it."""
    type: A.Type


@dataclass(frozen=True)
class Done:
    state: MachineState
    crashed = False


@dataclass(frozen=True)
class Crashed:
    state: MachineState
    crashed = True


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


# ---------------------------------------------------------------- expressions

def eval_expr(env: Env, state: MachineState, e: A.Expr):
    if isinstance(e, (A.IntLit, A.BoolLit, A.StrLit)):
        return e.value
    if isinstance(e, A.BVLit):
        return e.value
    if isinstance(e, A.FailLit):
        return FAIL
    if isinstance(e, A.Var):
        v = env.get(e.name, FAIL)
        if isinstance(v, (FuncClosure, ProcClosure, OpDef, RegionInfo, TypeAlias)):
            return FAIL
        return v
    if isinstance(e, A.Txt):
        r = eval_expr(env, state, e.target)
        if isinstance(r, Reg) and r in env:
            return env[r]
        return FAIL
    if isinstance(e, A.App):
        args = [eval_expr(env, state, a) for a in e.args]
        fn = env.get(e.func)
        if fn is None and e.func in BUILTINS:
            return call_builtin(e.func, args, env)
        if not isinstance(fn, FuncClosure) or len(args) != len(fn.params):
            return FAIL
        if any(a is FAIL for a in args):
            return FAIL
        return eval_expr(env.scope(dict(zip(fn.params, args))), state, fn.body)
    if isinstance(e, A.Unop):
        return _unop(e.op, eval_expr(env, state, e.operand))
    if isinstance(e, A.Binop):
        left = eval_expr(env, state, e.left)
        right = eval_expr(env, state, e.right)
        if left is FAIL or right is FAIL:
            return FAIL
        return binop(e.op, left, right)
    if isinstance(e, A.BitIndex):
        v = eval_expr(env, state, e.target)
        if not isinstance(v, BitVec) or not 0 <= e.index < v.width:
            return FAIL
        return v.bit(e.index)
    if isinstance(e, A.Slice):
        v = eval_expr(env, state, e.target)
        if not isinstance(v, BitVec) or not 0 <= e.lo < e.hi <= v.width:
            return FAIL
        return v.slice(e.lo, e.hi)
    if isinstance(e, A.LetE):
        v = eval_expr(env, state, e.value)
        if v is FAIL:
            return FAIL
        return eval_expr(env.scope({e.name: v}), state, e.body)
    if isinstance(e, A.IfE):
        c = eval_expr(env, state, e.cond)
        if not isinstance(c, bool):
            return FAIL
        return eval_expr(env, state, e.then if c else e.els)
    if isinstance(e, A.PtrForm):
        region = env.get(e.region)
        off = eval_expr(env, state, e.offset)
        if not isinstance(region, RegionInfo) or not _is_int(off):
            return FAIL
        return Ptr(e.region, off, region.ptr_width)
    if isinstance(e, A.Deref):
        r = eval_expr(env, state, e.target)
        if not isinstance(r, Reg):
            return FAIL
        v = state.read_reg(r)
        return FAIL if v is None else v
    if isinstance(e, A.Fetch):
        p = eval_expr(env, state, e.addr)
        if not isinstance(p, Ptr):
            return FAIL
        cell = state.mem.get((p.region, p.offset))
        if cell is None:
            return FAIL
        value, width = cell
        if width != e.width:
            return FAIL
        return value
    if isinstance(e, A.RegSetLit):
        regs = [env.get(n) for n in e.names]
        if not regs or not all(isinstance(r, Reg) for r in regs):
            return FAIL
        widths = {r.width for r in regs}
        if len(widths) != 1:
            return FAIL
        return RegSetValue(frozenset(regs), widths.pop())
    if isinstance(e, A.SetSize):
        s = eval_expr(env, state, e.target)
        return len(s.regs) if isinstance(s, RegSetValue) else FAIL
    if isinstance(e, A.Member):
        r = eval_expr(env, state, e.elem)
        s = eval_expr(env, state, e.set)
        if not isinstance(r, Reg) or not isinstance(s, RegSetValue):
            return FAIL
        return r in s.regs
    return FAIL


def _unop(op: str, v):
    if v is FAIL:
        return FAIL
    if op == "-":
        return -v if _is_int(v) else FAIL
    if op == "!":
        return (not v) if isinstance(v, bool) else FAIL
    if op == "b-":
        return v.neg() if isinstance(v, BitVec) else FAIL
    if op == "bnot":
        return v.bnot() if isinstance(v, BitVec) else FAIL
    return FAIL


def _int_div(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


_BV_ARITH = {
    "b+": BitVec.add, "b-": BitVec.sub, "b*": BitVec.mul,
    "band": BitVec.band, "bor": BitVec.bor, "bxor": BitVec.bxor,
    "<<": BitVec.shl, ">>": BitVec.lshr, ">>>": BitVec.ashr,
}
_BV_CMP = {
    "b<": BitVec.ult, "b<=": BitVec.ule,
    "b>": lambda a, b: b.ult(a), "b>=": lambda a, b: b.ule(a),
    "bs<": BitVec.slt, "bs<=": BitVec.sle,
    "bs>": lambda a, b: b.slt(a), "bs>=": lambda a, b: b.sle(a),
}


def binop(op: str, a, b):
    """Apply a binary operator to two non-failure values."""
    if op in ("+", "-", "*", "/", "<", "<=", ">", ">="):
        if not (_is_int(a) and _is_int(b)):
            return FAIL
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            return FAIL if b == 0 else _int_div(a, b)
        return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
    if op in ("&&", "||", "^^"):
        if not (isinstance(a, bool) and isinstance(b, bool)):
            return FAIL
        return {"&&": a and b, "||": a or b, "^^": a != b}[op]
    if op in ("==", "!="):
        eq = _equal(a, b)
        if eq is FAIL:
            return FAIL
        return eq if op == "==" else not eq
    if op in ("union", "intersect", "setminus", "subset"):
        if not (isinstance(a, RegSetValue) and isinstance(b, RegSetValue)) \
                or a.width != b.width:
            return FAIL
        if op == "subset":
            return a.regs <= b.regs
        regs = {"union": a.regs | b.regs, "intersect": a.regs & b.regs,
                "setminus": a.regs - b.regs}[op]
        return RegSetValue(regs, a.width)
    if isinstance(a, Ptr) or isinstance(b, Ptr):
        return _pointer_op(op, a, b)
    if not (isinstance(a, BitVec) and isinstance(b, BitVec)) or a.width != b.width:
        return FAIL
    if op == "b/":
        q = a.udiv(b)
        return FAIL if q is None else q
    if op in _BV_ARITH:
        return _BV_ARITH[op](a, b)
    if op in _BV_CMP:
        return _BV_CMP[op](a, b)
    return FAIL


def _pointer_op(op: str, a, b):
    """Only addition and subtraction are defined on pointers; they move the offset."""
    if a.width != b.width or not isinstance(a, (Ptr, BitVec)) or \
            not isinstance(b, (Ptr, BitVec)):
        return FAIL
    modulus = 1 << a.width
    if op == "b+":
        if isinstance(a, Ptr) and isinstance(b, BitVec):
            return Ptr(a.region, (a.offset + b.value) % modulus, a.width)
        if isinstance(a, BitVec) and isinstance(b, Ptr):
            return Ptr(b.region, (b.offset + a.value) % modulus, b.width)
        return FAIL
    if op == "b-":
        if isinstance(a, Ptr) and isinstance(b, BitVec):
            return Ptr(a.region, (a.offset - b.value) % modulus, a.width)
        if isinstance(a, Ptr) and isinstance(b, Ptr) and a.region == b.region:
            return BitVec.wrap(a.width, a.offset - b.offset)
        return FAIL
    return FAIL


def _equal(a, b):
    bitvectors = (BitVec, Ptr)
    if isinstance(a, bitvectors) and isinstance(b, bitvectors):
        if a.width != b.width:
            return FAIL
        return a == b
    if type(a) is not type(b):
        return FAIL
    if isinstance(a, RegSetValue) and a.width != b.width:
        return FAIL
    return a == b


# ---------------------------------------------------------------- statements

def eval_stmt(env: Env, state: MachineState, s: A.Stmt):
    """Run a statement: ``Done(state')`` or ``Crashed(state at failure)``."""
    if isinstance(s, A.Skip):
        return Done(state)
    if isinstance(s, A.Crash):
        return Crashed(state)
    if isinstance(s, A.Seq):
        out = eval_stmt(env, state, s.first)
        if out.crashed:
            return out
        return eval_stmt(env, out.state, s.rest)
    if isinstance(s, A.Call):
        proc = env.get(s.proc)
        args = [eval_expr(env, state, a) for a in s.args]
        if not isinstance(proc, ProcClosure) or len(args) != len(proc.params) \
                or any(a is FAIL for a in args):
            return Crashed(state)
        return eval_stmt(env.scope(dict(zip(proc.params, args))), state, proc.body)
    if isinstance(s, A.LetS):
        v = eval_expr(env, state, s.value)
        if v is FAIL:
            return Crashed(state)
        return eval_stmt(env.scope({s.name: v}), state, s.body)
    if isinstance(s, A.For):
        for i in range(s.start, s.stop + 1):
            out = eval_stmt(env.scope({s.var: i}), state, s.body)
            if out.crashed:
                return out
            state = out.state
        return Done(state)
    if isinstance(s, A.IfS):
        c = eval_expr(env, state, s.cond)
        if not isinstance(c, bool):
            return Crashed(state)
        return eval_stmt(env, state, s.then if c else s.els)
    if isinstance(s, A.Assign):
        r = eval_expr(env, state, s.target)
        v = eval_expr(env, state, s.value)
        if not isinstance(r, Reg) or r not in state.regs:
            return Crashed(state)
        if not isinstance(v, (BitVec, Ptr)) or v.width != r.width:
            return Crashed(state)
        return Done(state.with_reg(r, v))
    if isinstance(s, A.Store):
        p = eval_expr(env, state, s.addr)
        v = eval_expr(env, state, s.value)
        if not isinstance(p, Ptr) or not isinstance(v, (BitVec, Ptr)):
            return Crashed(state)
        key = (p.region, p.offset)
        cell = state.mem.get(key)
        if cell is None or cell[1] != s.width or v.width != s.width:
            return Crashed(state)
        return Done(state.with_cell(key, v, s.width))
    if isinstance(s, A.Assert):
        c = eval_expr(env, state, s.cond)
        return Done(state) if c is True else Crashed(state)
    return Crashed(state)


# ---------------------------------------------------------------- declarations

def resolve_runtime_type(env: Env, t: A.Type) -> A.Type:
    if isinstance(t, A.AliasT):
        alias = env.get(t.name)
        if isinstance(alias, TypeAlias):
            return resolve_runtime_type(env, alias.type)
    return t


def eval_decls(env: Env, state: MachineState, decls) -> Env:
    """Evaluate declarations on top of ``env`` and return the extended environment.

    The input environment is left untouched. A let whose value fails raises
    ``EvalError`` (code ``EvaluationFailed``).
    """
    out = env.scope()
    for d in decls:
        eval_decl(out, state, d)
    return out


def eval_decl(env: Env, state: MachineState, d: A.Decl) -> None:
    """Bind one declaration into ``env`` (mutating its innermost scope)."""
    if isinstance(d, A.TypeDecl):
        env.bind(d.name, TypeAlias(d.type))
    elif isinstance(d, A.LetDecl):
        v = eval_expr(env, state, d.value)
        if v is FAIL:
            raise EvalError(f"declaration {d.name!r} evaluated to failure",
                            "EvaluationFailed", d.pos)
        env.bind(d.name, v)
    elif isinstance(d, A.TxtDecl):
        r = env.get(d.name)
        v = eval_expr(env, state, d.value)
        if not isinstance(r, Reg) or not isinstance(v, str):
            raise EvalError(f"{d.name}.txt evaluated to failure", "EvaluationFailed", d.pos)
        env.bind(r, v)
    elif isinstance(d, A.DefDecl):
        env.bind(d.name, FuncClosure(tuple(p.name for p in d.params), d.body))
    elif isinstance(d, A.ProcDecl):
        env.bind(d.name, ProcClosure(tuple(p.name for p in d.params), d.body))
    elif isinstance(d, A.RegDecl):
        t = resolve_runtime_type(env, d.type)
        env.bind(d.name, env.fresh_reg(d.name, t.width))
    elif isinstance(d, A.MemDecl):
        t = d.type
        env.bind(d.name, RegionInfo(d.name, t.cell_width, t.length, t.ptr_width, d.label))
        if d.label is not None:
            env.bind(d.label, Ptr(d.name, 0, t.ptr_width))
    elif isinstance(d, A.Defop):
        env.bind(d.name, OpDef(tuple(p.name for p in d.params), d.txt, d.sem))
    else:
        raise EvalError(f"cannot evaluate {type(d).__name__}", "EvaluationFailed", d.pos)


def eval_machine(m: A.Machine) -> Env:
    """Machine declarations are evaluated against an empty machine state."""
    return eval_decls(Env(), MachineState(), tuple(m.decls) + tuple(m.defops))


# ---------------------------------------------------------------- programs

def run_instruction(env: Env, state: MachineState, inst: A.Inst):
    op = env.get(inst.op)
    if not isinstance(op, OpDef):
        return Crashed(state)
    args = [eval_expr(env, state, a) for a in inst.args]
    if len(args) != len(op.params) or any(a is FAIL for a in args):
        return Crashed(state)
    return eval_stmt(env.scope(dict(zip(op.params, args))), state, op.sem)


def eval_program(env: Env, state: MachineState, p: A.Program):
    for inst in p.insts:
        out = run_instruction(env, state, inst)
        if out.crashed:
            return out
        state = out.state
    return Done(state)


def extract_text(env: Env, state: MachineState, p: A.Program) -> list[str]:
    """Assembly text, one line per instruction."""
    lines = []
    for inst in p.insts:
        op = env.get(inst.op)
        if not isinstance(op, OpDef):
            raise EvalError(f"unknown operation {inst.op!r}", "ExtractionFailed", inst.pos)
        args = [eval_expr(env, state, a) for a in inst.args]
        text = FAIL
        if len(args) == len(op.params) and not any(a is FAIL for a in args):
            text = eval_expr(env.scope(dict(zip(op.params, args))), state, op.txt)
        if not isinstance(text, str):
            raise EvalError(f"text of {inst.op} could not be computed", "ExtractionFailed",
                            inst.pos)
        lines.append(text)
    return lines


# ---------------------------------------------------------------- machine states

@dataclass(frozen=True)
class StateLayout:
    """Registers (in allocation order) and memory cells a valid state must hold."""

    regs: tuple       # Reg, each carrying its width
    cells: tuple      # ((region, offset), cell_width)
    regions: tuple    # RegionInfo


def state_layout(envs: TypeEnvs, env: Env) -> StateLayout:
    regs = {}
    regions = []
    for name, t in envs.delta.items():
        v = env.get(name)
        if isinstance(t, A.LocT) and isinstance(v, Reg):
            regs[v.ident] = v
        elif isinstance(t, A.MemT) and isinstance(v, RegionInfo):
            regions.append(v)
    cells = tuple(((r.name, off), r.cell_width) for r in regions for off in r.offsets())
    return StateLayout(tuple(regs[k] for k in sorted(regs)), cells, tuple(regions))


def zero_state(layout: StateLayout) -> MachineState:
    regs = {r: BitVec(r.width, 0) for r in layout.regs}
    mem = {key: (BitVec(w, 0), w) for key, w in layout.cells}
    return MachineState(regs, mem)


def validate_state(envs: TypeEnvs, env: Env, state: MachineState) -> None:
    """Raise ``StateError`` unless ``state`` has exactly the declared registers and cells."""
    layout = state_layout(envs, env)
    for r in layout.regs:
        if r not in state.regs:
            raise StateError(f"register {r.name} is missing", "MissingRegister")
        v = state.regs[r]
        if not isinstance(v, (BitVec, Ptr)) or v.width != r.width:
            raise StateError(f"register {r.name} holds {v!r}, expected {r.width} bits",
                             "WrongWidth")
    extra = set(state.regs) - set(layout.regs)
    if extra:
        raise StateError(f"unexpected register {sorted(extra, key=lambda r: r.ident)[0]!r}",
                         "ExtraRegister")
    expected = dict(layout.cells)
    for key, width in layout.cells:
        if key not in state.mem:
            raise StateError(f"memory cell {key[0]}[{key[1]}] is missing", "MissingCell")
        value, cell_width = state.mem[key]
        if cell_width != width or not isinstance(value, (BitVec, Ptr)) or \
                value.width != width:
            raise StateError(f"memory cell {key[0]}[{key[1]}] has the wrong width",
                             "WrongWidth")
    for key in state.mem:
        if key not in expected:
            raise StateError(f"unexpected memory cell {key[0]}[{key[1]}]", "ExtraCell")


def dynamic_type_matches(value, t: A.Type) -> bool:
    """Does a runtime value inhabit the (resolved) static type ``t``?"""
    if value is FAIL:
        return True
    if isinstance(t, A.UnitT):
        return value is UNIT
    if isinstance(t, A.IntT):
        return _is_int(value)
    if isinstance(t, A.BoolT):
        return isinstance(value, bool)
    if isinstance(t, A.StringT):
        return isinstance(value, str)
    if isinstance(t, (A.BVT, A.LabelT)):
        return isinstance(value, (BitVec, Ptr)) and value.width == t.width
    if isinstance(t, A.LocT):
        return isinstance(value, Reg) and value.width == t.width
    if isinstance(t, A.RegSetT):
        return isinstance(value, RegSetValue) and value.width == t.width and \
            all(r.width == t.width for r in value.regs)
    return False


def initial_env_for_spec(machine_env: Env, state: MachineState, spec: A.Spec) -> Env:
    """Spec declarations are evaluated against the initial machine state."""
    return eval_decls(machine_env, state, spec.decls)


def reg_by_name(env: Env, name: str) -> Optional[Reg]:
    v = env.get(name)
    return v if isinstance(v, Reg) else None
