"""Static typing for Cassiopea machines, specs and programs.

Types returned by ``type_expr`` are fully resolved: aliases are expanded, so
two types are compatible exactly when they compare equal (after letting a
label stand in for a bitvector of its width).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from . import ast as A
from .errors import TypeCheckError


@dataclass(frozen=True)
class BuiltinT(A.Type):
    """Placeholder Δ entry reserving a builtin function's name."""
    name: str


BUILTINS = ("empty", "hex", "bin", "dec", "lbl", "format", "bv_to_len", "bv_to_uint",
            "uint_to_bv_l", "isptr")


@dataclass(frozen=True)
class TypeEnvs:
    """Γ (aliases), Δ (variables), plus bookkeeping for ops, control registers
    and registers that already have a ``.txt`` binding."""

    gamma: dict = field(default_factory=dict)
    delta: dict = field(default_factory=dict)
    ops: frozenset = frozenset()
    control: frozenset = frozenset()
    texts: frozenset = frozenset()

    def bind_type(self, name: str, t: A.Type) -> "TypeEnvs":
        gamma = dict(self.gamma)
        gamma[name] = t
        return replace(self, gamma=gamma)

    def bind(self, name: str, t: A.Type) -> "TypeEnvs":
        delta = dict(self.delta)
        delta[name] = t
        return replace(self, delta=delta)

    def is_bound(self, name: str) -> bool:
        return name in self.gamma or name in self.delta


def builtin_envs() -> TypeEnvs:
    return TypeEnvs(delta={name: BuiltinT(name) for name in BUILTINS})


def _err(msg: str, code: str, node=None) -> TypeCheckError:
    return TypeCheckError(msg, code, getattr(node, "pos", None))


def show(t: A.Type) -> str:
    from .printer import print_type
    if isinstance(t, BuiltinT):
        return f"builtin {t.name}"
    return print_type(t)


# ---------------------------------------------------------------- types

def wf(gamma: dict, t: A.Type) -> None:
    """Raise unless ``t`` is well formed: aliases known, widths positive."""
    if isinstance(t, (A.UnitT, A.IntT, A.BoolT, A.StringT)):
        return
    if isinstance(t, A.AliasT):
        if t.name not in gamma:
            raise _err(f"unknown type alias {t.name!r}", "UnknownAlias", t)
        return
    if isinstance(t, (A.BVT, A.LocT, A.RegSetT, A.LabelT)):
        _positive(t.width, t)
        return
    if isinstance(t, A.MemT):
        for w in (t.cell_width, t.length, t.ptr_width):
            _positive(w, t)
        return
    if isinstance(t, (A.FuncT, A.ProcT)):
        for p in t.params:
            wf(gamma, p)
            _require_base(resolve(gamma, p), p)
        if isinstance(t, A.FuncT):
            wf(gamma, t.result)
            _require_base(resolve(gamma, t.result), t.result)
        return
    raise _err(f"not a Cassiopea type: {t!r}", "TypeMismatch", t)


def _positive(w, node) -> None:
    if not isinstance(w, int) or isinstance(w, bool):
        raise _err(f"width {w!r} is not an integer constant", "NonPositiveWidth", node)
    if w <= 0:
        raise _err(f"width must be positive, got {w}", "NonPositiveWidth", node)


def _require_base(t: A.Type, node) -> None:
    if not isinstance(t, A.BASE_TYPES):
        raise _err(f"{show(t)} is not a base type", "NonBaseArg", node)


def resolve(gamma: dict, t: A.Type) -> A.Type:
    """Expand aliases (Γ stores already-resolved base types)."""
    if isinstance(t, A.AliasT):
        if t.name not in gamma:
            raise _err(f"unknown type alias {t.name!r}", "UnknownAlias", t)
        return gamma[t.name]
    if isinstance(t, A.FuncT):
        return A.FuncT(tuple(resolve(gamma, p) for p in t.params), resolve(gamma, t.result))
    if isinstance(t, A.ProcT):
        return A.ProcT(tuple(resolve(gamma, p) for p in t.params))
    return _strip(t)


def _strip(t: A.Type) -> A.Type:
    # drop source positions so resolved types compare and print cleanly
    return replace(t, pos=None) if t.pos is not None else t


def as_value(t: A.Type) -> A.Type:
    """Label subsumption: a label can be used as a bitvector of its width."""
    if isinstance(t, A.LabelT):
        return A.BVT(t.width)
    return t


def compatible(expected: A.Type, got: A.Type) -> bool:
    return expected == got or expected == as_value(got)


# ---------------------------------------------------------------- expressions

INT_ARITH = {"+", "-", "*", "/"}
INT_CMP = {"<", "<=", ">", ">="}
BOOL_OPS = {"&&", "||", "^^"}
BV_ARITH = {"<<", ">>", ">>>", "band", "bor", "bxor", "b+", "b-", "b*", "b/"}
BV_CMP = {"b<", "b<=", "b>", "b>=", "bs<", "bs<=", "bs>", "bs>="}
SET_OPS = {"union", "intersect", "setminus"}


def _expect(expected: A.Type, got: A.Type, node) -> None:
    if not compatible(expected, got):
        raise _err(f"expected {show(expected)}, got {show(got)}", "TypeMismatch", node)


def _bv(envs: TypeEnvs, e: A.Expr) -> A.BVT:
    t = as_value(type_expr(envs, e))
    if not isinstance(t, A.BVT):
        raise _err(f"expected a bitvector, got {show(t)}", "TypeMismatch", e)
    return t


def _fresh(envs: TypeEnvs, name: str, node) -> None:
    if envs.is_bound(name):
        raise _err(f"{name!r} is already bound", "DuplicateBinding", node)


def _value_type(envs: TypeEnvs, t: A.Type, node) -> A.Type:
    wf(envs.gamma, t)
    rt = resolve(envs.gamma, t)
    _require_base(rt, node)
    return rt


def type_expr(envs: TypeEnvs, e: A.Expr) -> A.Type:
    """The unique type of ``e``, or raise ``TypeCheckError``."""
    if isinstance(e, A.IntLit):
        return A.IntT()
    if isinstance(e, A.BoolLit):
        return A.BoolT()
    if isinstance(e, A.StrLit):
        return A.StringT()
    if isinstance(e, A.BVLit):
        return A.BVT(e.value.width)
    if isinstance(e, A.FailLit):
        raise _err("the failure value has no static type", "UntypedFail", e)
    if isinstance(e, A.Var):
        if e.name not in envs.delta:
            raise _err(f"unknown variable {e.name!r}", "UnknownVar", e)
        t = envs.delta[e.name]
        if not isinstance(t, A.BASE_TYPES):
            raise _err(f"{e.name!r} has type {show(t)} and is not a value",
                       "TypeMismatch", e)
        return t
    if isinstance(e, A.Txt):
        t = type_expr(envs, e.target)
        if not isinstance(t, A.LocT):
            raise _err(f".txt needs a register, got {show(t)}", "TypeMismatch", e)
        return A.StringT()
    if isinstance(e, A.App):
        return _type_app(envs, e)
    if isinstance(e, A.Unop):
        if e.op == "-":
            _expect(A.IntT(), type_expr(envs, e.operand), e)
            return A.IntT()
        if e.op == "!":
            _expect(A.BoolT(), type_expr(envs, e.operand), e)
            return A.BoolT()
        if e.op in ("b-", "bnot"):
            return _bv(envs, e.operand)
        raise _err(f"unknown unary operator {e.op!r}", "TypeMismatch", e)
    if isinstance(e, A.Binop):
        return _type_binop(envs, e)
    if isinstance(e, A.BitIndex):
        t = _bv(envs, e.target)
        if not 0 <= e.index < t.width:
            raise _err(f"bit {e.index} out of range for {t.width}-bit value",
                       "BitIndexOutOfRange", e)
        return A.BVT(1)
    if isinstance(e, A.Slice):
        t = _bv(envs, e.target)
        if not 0 <= e.lo < e.hi <= t.width:
            raise _err(f"slice [{e.lo}:{e.hi}] out of range for {t.width}-bit value",
                       "SliceBoundsError", e)
        return A.BVT(e.hi - e.lo)
    if isinstance(e, A.LetE):
        _fresh(envs, e.name, e)
        t = _value_type(envs, e.type, e)
        _expect(t, type_expr(envs, e.value), e.value)
        return type_expr(envs.bind(e.name, t), e.body)
    if isinstance(e, A.IfE):
        _expect(A.BoolT(), type_expr(envs, e.cond), e.cond)
        t1 = type_expr(envs, e.then)
        t2 = type_expr(envs, e.els)
        if t1 == t2:
            return t1
        if as_value(t1) == as_value(t2):
            return as_value(t1)
        raise _err(f"branches differ: {show(t1)} vs {show(t2)}", "TypeMismatch", e)
    if isinstance(e, A.PtrForm):
        region = envs.delta.get(e.region)
        if not isinstance(region, A.MemT):
            raise _err(f"{e.region!r} is not a memory region", "UnknownVar", e)
        _expect(A.IntT(), type_expr(envs, e.offset), e.offset)
        return A.BVT(region.ptr_width)
    if isinstance(e, A.Deref):
        t = type_expr(envs, e.target)
        if not isinstance(t, A.LocT):
            raise _err(f"cannot dereference {show(t)}", "TypeMismatch", e)
        return A.BVT(t.width)
    if isinstance(e, A.Fetch):
        _bv(envs, e.addr)
        _positive(e.width, e)
        return A.BVT(e.width)
    if isinstance(e, A.RegSetLit):
        widths = set()
        for name in e.names:
            t = envs.delta.get(name)
            if not isinstance(t, A.LocT):
                raise _err(f"{name!r} is not a register", "TypeMismatch", e)
            widths.add(t.width)
        if len(widths) != 1:
            raise _err("register set members differ in width", "TypeMismatch", e)
        return A.RegSetT(widths.pop())
    if isinstance(e, A.SetSize):
        t = type_expr(envs, e.target)
        if not isinstance(t, A.RegSetT):
            raise _err(f"|e| needs a register set, got {show(t)}", "TypeMismatch", e)
        return A.IntT()
    if isinstance(e, A.Member):
        t1 = type_expr(envs, e.elem)
        t2 = type_expr(envs, e.set)
        if not (isinstance(t1, A.LocT) and t2 == A.RegSetT(t1.width)):
            raise _err(f"membership needs a register and a matching set, got "
                       f"{show(t1)} and {show(t2)}", "TypeMismatch", e)
        return A.BoolT()
    raise _err(f"cannot type {type(e).__name__}", "TypeMismatch", e)


def _type_binop(envs: TypeEnvs, e: A.Binop) -> A.Type:
    op = e.op
    if op in INT_ARITH or op in INT_CMP:
        _expect(A.IntT(), type_expr(envs, e.left), e.left)
        _expect(A.IntT(), type_expr(envs, e.right), e.right)
        return A.IntT() if op in INT_ARITH else A.BoolT()
    if op in BOOL_OPS:
        _expect(A.BoolT(), type_expr(envs, e.left), e.left)
        _expect(A.BoolT(), type_expr(envs, e.right), e.right)
        return A.BoolT()
    if op in BV_ARITH or op in BV_CMP:
        t1 = _bv(envs, e.left)
        t2 = _bv(envs, e.right)
        if t1 != t2:
            raise _err(f"operands of {op} differ in width: {t1.width} vs {t2.width}",
                       "TypeMismatch", e)
        return t1 if op in BV_ARITH else A.BoolT()
    if op in SET_OPS or op == "subset":
        t1 = type_expr(envs, e.left)
        t2 = type_expr(envs, e.right)
        if not isinstance(t1, A.RegSetT) or t1 != t2:
            raise _err(f"{op} needs two register sets of one width, got {show(t1)} "
                       f"and {show(t2)}", "TypeMismatch", e)
        return t1 if op in SET_OPS else A.BoolT()
    if op in ("==", "!="):
        t1 = as_value(type_expr(envs, e.left))
        t2 = as_value(type_expr(envs, e.right))
        if t1 != t2:
            raise _err(f"cannot compare {show(t1)} with {show(t2)}", "TypeMismatch", e)
        return A.BoolT()
    raise _err(f"unknown operator {op!r}", "TypeMismatch", e)


def _literal_width(arg: A.Expr, fname: str) -> int:
    if not isinstance(arg, A.IntLit):
        raise _err(f"{fname} needs an integer literal width", "TypeMismatch", arg)
    _positive(arg.value, arg)
    return arg.value


def _arity(e: A.App, n: int) -> None:
    if len(e.args) != n:
        raise _err(f"{e.func} takes {n} argument(s), got {len(e.args)}",
                   "ArityMismatch", e)


def _type_app(envs: TypeEnvs, e: A.App) -> A.Type:
    ft = envs.delta.get(e.func)
    if ft is None:
        raise _err(f"unknown function {e.func!r}", "UnknownVar", e)
    if isinstance(ft, BuiltinT):
        return _type_builtin(envs, e)
    if not isinstance(ft, A.FuncT):
        raise _err(f"{e.func!r} is not a function", "TypeMismatch", e)
    _arity(e, len(ft.params))
    for arg, pt in zip(e.args, ft.params):
        at = type_expr(envs, arg)
        _require_base(at, arg)
        _expect(pt, at, arg)
    return ft.result


def _type_builtin(envs: TypeEnvs, e: A.App) -> A.Type:
    name = e.func
    if name == "empty":
        _arity(e, 1)
        return A.RegSetT(_literal_width(e.args[0], name))
    if name in ("hex", "bin", "dec"):
        _arity(e, 1)
        t = as_value(type_expr(envs, e.args[0]))
        if not isinstance(t, (A.IntT, A.BVT)):
            raise _err(f"{name} needs an int or bitvector, got {show(t)}",
                       "TypeMismatch", e)
        return A.StringT()
    if name == "lbl":
        _arity(e, 1)
        arg = e.args[0]
        t = type_expr(envs, arg)
        if not (isinstance(arg, A.Var) and isinstance(t, A.LabelT)):
            raise _err("lbl needs a label name", "TypeMismatch", arg)
        return A.StringT()
    if name == "format":
        if not e.args:
            raise _err("format needs a format string", "ArityMismatch", e)
        for arg in e.args:
            _expect(A.StringT(), type_expr(envs, arg), arg)
        fmt = e.args[0]
        if isinstance(fmt, A.StrLit):
            used = format_arity(fmt.value)
            if used > len(e.args) - 1:
                raise _err(f"format string uses ${used} but only {len(e.args) - 1} "
                           "argument(s) given", "ArityMismatch", e)
        return A.StringT()
    if name == "bv_to_len":
        _arity(e, 2)
        width = _literal_width(e.args[0], name)
        _bv(envs, e.args[1])
        return A.BVT(width)
    if name == "bv_to_uint":
        _arity(e, 1)
        _bv(envs, e.args[0])
        return A.IntT()
    if name == "uint_to_bv_l":
        _arity(e, 2)
        width = _literal_width(e.args[0], name)
        _expect(A.IntT(), type_expr(envs, e.args[1]), e.args[1])
        return A.BVT(width)
    if name == "isptr":
        _arity(e, 1)
        _bv(envs, e.args[0])
        return A.BoolT()
    raise _err(f"unknown builtin {name!r}", "UnknownVar", e)


def format_arity(fmt: str) -> int:
    """Highest ``$N`` placeholder in a format string (``$$`` is a literal dollar)."""
    highest = 0
    for m in re.finditer(r"\$(\$|\d+)", fmt):
        if m.group(1) != "$":
            highest = max(highest, int(m.group(1)))
    return highest


# ---------------------------------------------------------------- statements

def type_stmt(envs: TypeEnvs, s: A.Stmt) -> None:
    if isinstance(s, (A.Skip, A.Crash)):
        return
    if isinstance(s, A.Seq):
        type_stmt(envs, s.first)
        type_stmt(envs, s.rest)
        return
    if isinstance(s, A.Call):
        pt = envs.delta.get(s.proc)
        if pt is None:
            raise _err(f"unknown procedure {s.proc!r}", "UnknownVar", s)
        if not isinstance(pt, A.ProcT):
            raise _err(f"{s.proc!r} is not a procedure", "TypeMismatch", s)
        if len(s.args) != len(pt.params):
            raise _err(f"{s.proc} takes {len(pt.params)} argument(s), got {len(s.args)}",
                       "ArityMismatch", s)
        for arg, p in zip(s.args, pt.params):
            at = type_expr(envs, arg)
            _require_base(at, arg)
            _expect(p, at, arg)
        return
    if isinstance(s, A.LetS):
        _fresh(envs, s.name, s)
        t = _value_type(envs, s.type, s)
        _expect(t, type_expr(envs, s.value), s.value)
        type_stmt(envs.bind(s.name, t), s.body)
        return
    if isinstance(s, A.For):
        _fresh(envs, s.var, s)
        type_stmt(envs.bind(s.var, A.IntT()), s.body)
        return
    if isinstance(s, A.IfS):
        _expect(A.BoolT(), type_expr(envs, s.cond), s.cond)
        type_stmt(envs, s.then)
        type_stmt(envs, s.els)
        return
    if isinstance(s, A.Assign):
        target = type_expr(envs, s.target)
        if not isinstance(target, A.LocT):
            raise _err(f"assignment target must be a register, got {show(target)}",
                       "TypeMismatch", s.target)
        value = _bv(envs, s.value)
        if value.width != target.width:
            raise _err(f"assigning {value.width}-bit value to {target.width}-bit register",
                       "AssignWidthMismatch", s)
        return
    if isinstance(s, A.Store):
        _bv(envs, s.addr)
        _positive(s.width, s)
        value = _bv(envs, s.value)
        if value.width != s.width:
            raise _err(f"storing {value.width}-bit value into {s.width}-bit cell",
                       "AssignWidthMismatch", s)
        return
    if isinstance(s, A.Assert):
        _expect(A.BoolT(), type_expr(envs, s.cond), s.cond)
        return
    raise _err(f"cannot type {type(s).__name__}", "TypeMismatch", s)


# ---------------------------------------------------------------- declarations

def reads_state(e) -> bool:
    """True if an expression contains a register read or memory fetch."""
    if isinstance(e, (A.Deref, A.Fetch)):
        return True
    if isinstance(e, A.Node):
        return any(reads_state(v) for v in _children(e))
    return False


def _children(node) -> Iterable:
    for name in node.__dataclass_fields__:
        if name == "pos":
            continue
        v = getattr(node, name)
        if isinstance(v, tuple):
            yield from (x for x in v if isinstance(x, A.Node))
        elif isinstance(v, A.Node):
            yield v


def _param_envs(envs: TypeEnvs, params: tuple, node) -> tuple[TypeEnvs, tuple]:
    types = []
    seen = set()
    for p in params:
        if p.name in seen:
            raise _err(f"parameter {p.name!r} repeated", "DuplicateBinding", p)
        seen.add(p.name)
        _fresh(envs, p.name, p)
        types.append(_value_type(envs, p.type, p))
    inner = envs
    for p, t in zip(params, types):
        inner = inner.bind(p.name, t)
    return inner, tuple(types)


def type_decl(envs: TypeEnvs, d: A.Decl, machine_mode: bool = False,
              allow_state: bool = True) -> TypeEnvs:
    """Type one declaration and return the extended environments.

    ``machine_mode`` forbids let-bound values that read machine state.
    ``allow_state`` permits ``letstate`` register declarations (machines only).
    """
    if isinstance(d, A.TypeDecl):
        _fresh(envs, d.name, d)
        return envs.bind_type(d.name, _value_type(envs, d.type, d))
    if isinstance(d, A.LetDecl):
        _fresh(envs, d.name, d)
        t = _value_type(envs, d.type, d)
        if machine_mode and reads_state(d.value):
            raise _err(f"machine declaration {d.name!r} reads machine state",
                       "StateRefInMachineDecl", d)
        _expect(t, type_expr(envs, d.value), d.value)
        return envs.bind(d.name, t)
    if isinstance(d, A.TxtDecl):
        t = envs.delta.get(d.name)
        if not isinstance(t, A.LocT):
            raise _err(f"{d.name!r} is not a register", "TypeMismatch", d)
        if d.name in envs.texts:
            raise _err(f"{d.name}.txt is already bound", "DuplicateBinding", d)
        if machine_mode and reads_state(d.value):
            raise _err(f"{d.name}.txt reads machine state", "StateRefInMachineDecl", d)
        _expect(A.StringT(), type_expr(envs, d.value), d.value)
        return replace(envs, texts=envs.texts | {d.name})
    if isinstance(d, A.DefDecl):
        _fresh(envs, d.name, d)
        inner, types = _param_envs(envs, d.params, d)
        result = _value_type(envs, d.result, d)
        _expect(result, type_expr(inner, d.body), d.body)
        return envs.bind(d.name, A.FuncT(types, result))
    if isinstance(d, A.ProcDecl):
        _fresh(envs, d.name, d)
        inner, types = _param_envs(envs, d.params, d)
        type_stmt(inner, d.body)
        return envs.bind(d.name, A.ProcT(types))
    if isinstance(d, A.RegDecl):
        if not allow_state:
            raise _err(f"register {d.name!r} cannot be declared here", "StateDeclInSpec", d)
        _fresh(envs, d.name, d)
        wf(envs.gamma, d.type)
        t = resolve(envs.gamma, d.type)
        if not isinstance(t, A.LocT):
            raise _err(f"letstate {d.name!r} needs a register type, got {show(t)}",
                       "TypeMismatch", d)
        out = envs.bind(d.name, t)
        if d.control:
            out = replace(out, control=out.control | {d.name})
        return out
    if isinstance(d, A.MemDecl):
        _fresh(envs, d.name, d)
        wf(envs.gamma, d.type)
        t = _strip(d.type)
        if t.cell_width % 8:
            raise _err(f"cell width {t.cell_width} is not a whole number of bytes",
                       "BadCellWidth", d)
        out = envs.bind(d.name, t)
        if d.label is not None:
            _fresh(out, d.label, d)
            out = out.bind(d.label, A.LabelT(t.ptr_width))
        return out
    if isinstance(d, A.Defop):
        return type_defop(envs, d)
    raise _err(f"cannot type declaration {type(d).__name__}", "TypeMismatch", d)


def type_decls(envs: TypeEnvs, decls: Iterable[A.Decl], machine_mode: bool = False,
               allow_state: Optional[bool] = None) -> TypeEnvs:
    if allow_state is None:
        allow_state = machine_mode
    for d in decls:
        envs = type_decl(envs, d, machine_mode, allow_state)
    return envs


def type_defop(envs: TypeEnvs, d: A.Defop) -> TypeEnvs:
    _fresh(envs, d.name, d)
    for p in d.params:
        wf(envs.gamma, p.type)
        t = resolve(envs.gamma, p.type)
        if isinstance(t, (A.StringT, A.UnitT, A.RegSetT)) or not isinstance(t, A.BASE_TYPES):
            raise _err(f"operand {p.name!r} of {d.name} has disallowed type {show(t)}",
                       "BadOperandType", p)
    inner, types = _param_envs(envs, d.params, d)
    _expect(A.StringT(), type_expr(inner, d.txt), d.txt)
    type_stmt(inner, d.sem)
    sig = A.FuncT(types, A.UnitT()) if types else A.FuncT((A.UnitT(),), A.UnitT())
    out = envs.bind(d.name, sig)
    return replace(out, ops=out.ops | {d.name})


# ---------------------------------------------------------------- files

def type_machine(m: A.Machine) -> TypeEnvs:
    envs = type_decls(builtin_envs(), m.decls, machine_mode=True)
    for op in m.defops:
        envs = type_defop(envs, op)
    return envs


def type_spec_decls(envs: TypeEnvs, decls: Iterable[A.Decl]) -> TypeEnvs:
    for d in decls:
        if isinstance(d, A.Defop):
            raise _err("operations cannot be declared in a spec", "TypeMismatch", d)
        envs = type_decl(envs, d, machine_mode=False, allow_state=False)
    return envs


def type_frame(envs: TypeEnvs, frame: A.Frame, node=None) -> None:
    for name in frame.regs:
        if not isinstance(envs.delta.get(name), A.LocT):
            raise _err(f"reg-modify entry {name!r} is not a register",
                       "FrameNameNotRegister", node)
    for ptr in frame.mems:
        if not isinstance(envs.delta.get(ptr.region), A.MemT):
            raise _err(f"mem-modify entry names unknown region {ptr.region!r}",
                       "FrameRegionUnknown", ptr)
        _expect(A.IntT(), type_expr(envs, ptr.offset), ptr.offset)


def type_spec(m: A.Machine, s: A.Spec, machine_envs: Optional[TypeEnvs] = None) -> TypeEnvs:
    """Environments of the machine extended with the spec's declarations."""
    envs = machine_envs if machine_envs is not None else type_machine(m)
    envs = type_spec_decls(envs, s.decls)
    type_frame(envs, s.frame, s)
    for label, cond in (("pre", s.pre), ("post", s.post)):
        t = type_expr(envs, cond)
        if t != A.BoolT():
            raise _err(f"{label} must be bool, got {show(t)}", "NonBoolCondition", cond)
    return envs


def type_program(m: Optional[A.Machine], p: A.Program,
                 envs: Optional[TypeEnvs] = None) -> None:
    """Check every instruction against its operation's signature.

    ``envs`` (for instance spec-extended environments) overrides the
    environments computed from ``m``.
    """
    if envs is None:
        envs = type_machine(m)
    for inst in p.insts:
        if inst.op not in envs.ops:
            raise _err(f"unknown operation {inst.op!r}", "UnknownOp", inst)
        sig = envs.delta[inst.op]
        params = () if sig.params == (A.UnitT(),) else sig.params
        if len(inst.args) != len(params):
            raise _err(f"{inst.op} takes {len(params)} operand(s), got {len(inst.args)}",
                       "ArityMismatch", inst)
        for arg, pt in zip(inst.args, params):
            _expect(pt, type_expr(envs, arg), arg)
