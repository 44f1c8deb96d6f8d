"""Pretty printer producing text that the parser reads back unchanged."""

from __future__ import annotations

from functools import singledispatch

from . import ast as A
from .lexer import escape
from .optable import ATOM_PREC, BINARY_PREC, LOWEST_PREC, POSTFIX_PREC, PREFIX_PREC


def pretty_print(node, ale: bool = False) -> str:
    """Concrete syntax for any tree node (or list of modules).

    ``ale`` selects Alewife spelling for types, expressions and declarations.
    """
    if isinstance(node, (list, tuple)):
        return "\n".join(pretty_print(n, ale) for n in node)
    if isinstance(node, A.Type):
        return print_ale_type(node) if ale else print_type(node)
    if isinstance(node, A.Expr):
        return print_expr(node, ale=ale)
    if isinstance(node, A.Stmt):
        return print_stmt(node)
    if isinstance(node, A.Decl):
        return print_ale_decl(node) if ale else print_decl(node)
    return _pp(node)


@singledispatch
def _pp(node) -> str:
    raise TypeError(f"cannot print {type(node).__name__}")


# ---------------------------------------------------------------- types

def _w(width) -> str:
    return str(width)


def print_type(t: A.Type) -> str:
    if isinstance(t, A.UnitT):
        return "unit"
    if isinstance(t, A.IntT):
        return "int"
    if isinstance(t, A.BoolT):
        return "bool"
    if isinstance(t, A.StringT):
        return "string"
    if isinstance(t, A.AliasT):
        return t.name
    if isinstance(t, A.BVT):
        return f"{_w(t.width)} bit"
    if isinstance(t, A.LocT):
        return f"{_w(t.width)} bit loc"
    if isinstance(t, A.RegSetT):
        return f"{_w(t.width)} reg set"
    if isinstance(t, A.LabelT):
        return f"{_w(t.width)} label"
    if isinstance(t, A.MemT):
        return f"{_w(t.cell_width)} bit {_w(t.length)} len {_w(t.ptr_width)} ref"
    if isinstance(t, A.FuncT):
        return "(" + ", ".join(print_type(p) for p in t.params) + ") -> " + print_type(t.result)
    if isinstance(t, A.ProcT):
        return "proc (" + ", ".join(print_type(p) for p in t.params) + ")"
    if isinstance(t, A.VecT):
        return f"{_w(t.width)} vec"
    if isinstance(t, A.PtrT):
        return f"{_w(t.width)} ptr"
    raise TypeError(f"not a type: {t!r}")


def print_ale_type(t: A.Type) -> str:
    """Alewife spelling: ``N loc``/``N label`` rather than ``C bit loc``."""
    if isinstance(t, A.LocT):
        return f"{_w(t.width)} loc"
    if isinstance(t, A.LabelT):
        return f"{_w(t.width)} label"
    if isinstance(t, A.FuncT):
        return "(" + ", ".join(print_ale_type(p) for p in t.params) + ") -> " + \
            print_ale_type(t.result)
    return print_type(t)


# ---------------------------------------------------------------- expressions

def _prec(e: A.Expr) -> int:
    if isinstance(e, (A.LetE, A.IfE, A.Forall, A.Exists)):
        return LOWEST_PREC
    if isinstance(e, A.Binop):
        return BINARY_PREC[e.op]
    if isinstance(e, A.Member):
        return BINARY_PREC["member"]
    if isinstance(e, (A.Unop, A.Deref)):
        return PREFIX_PREC
    if isinstance(e, A.IntLit) and e.value < 0:
        return PREFIX_PREC
    if isinstance(e, (A.BitIndex, A.Slice, A.Txt)):
        return POSTFIX_PREC
    return ATOM_PREC


def print_expr(e: A.Expr, min_prec: int = LOWEST_PREC, ale: bool = False) -> str:
    text = _expr(e, ale)
    if _prec(e) < min_prec:
        return f"({text})"
    return text


def _expr(e: A.Expr, ale: bool) -> str:
    ty = print_ale_type if ale else print_type
    sub = lambda x, p=LOWEST_PREC: print_expr(x, p, ale)  # noqa: E731
    if isinstance(e, A.IntLit):
        return str(e.value)
    if isinstance(e, A.BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, A.StrLit):
        return escape(e.value)
    if isinstance(e, A.BVLit):
        return e.value.literal()
    if isinstance(e, A.FailLit):
        return "fail"
    if isinstance(e, A.Var):
        return e.name
    if isinstance(e, A.Txt):
        return sub(e.target, POSTFIX_PREC) + ".txt"
    if isinstance(e, A.App):
        return e.func + "(" + ", ".join(sub(a) for a in e.args) + ")"
    if isinstance(e, A.Unop):
        inner = sub(e.operand, PREFIX_PREC)
        if e.op == "bnot":
            return "bnot " + inner
        if e.op == "-" and inner[:1].isdigit():
            # keep `-(5)` distinct from the literal -5
            inner = f"({inner})"
        return e.op + inner
    if isinstance(e, A.Deref):
        return "*" + sub(e.target, PREFIX_PREC)
    if isinstance(e, A.Binop):
        p = BINARY_PREC[e.op]
        return f"{sub(e.left, p)} {e.op} {sub(e.right, p + 1)}"
    if isinstance(e, A.Member):
        p = BINARY_PREC["member"]
        return f"{sub(e.elem, p)} member {sub(e.set, p + 1)}"
    if isinstance(e, A.BitIndex):
        return f"{sub(e.target, POSTFIX_PREC)}[{e.index}]"
    if isinstance(e, A.Slice):
        return f"{sub(e.target, POSTFIX_PREC)}[{e.lo}:{e.hi}]"
    if isinstance(e, A.LetE):
        return f"let {e.name} : {ty(e.type)} = {sub(e.value)} in {sub(e.body)}"
    if isinstance(e, A.IfE):
        return f"if {sub(e.cond)} then {sub(e.then)} else {sub(e.els)}"
    if isinstance(e, A.PtrForm):
        return f"[{e.region}, {sub(e.offset)}]"
    if isinstance(e, A.Fetch):
        return f"[{sub(e.addr)}]:{_w(e.width)}"
    if isinstance(e, A.RegSetLit):
        return "{" + ", ".join(e.names) + "}"
    if isinstance(e, A.SetSize):
        return f"| {sub(e.target)} |"
    if isinstance(e, (A.Forall, A.Exists)):
        kw = "forall" if isinstance(e, A.Forall) else "exists"
        return f"{kw} {e.var} in {sub(e.domain)}. {sub(e.body)}"
    raise TypeError(f"not an expression: {e!r}")


def print_operand(e: A.Expr) -> str:
    text = print_expr(e)
    if _prec(e) == ATOM_PREC and not isinstance(e, (A.LetE, A.IfE)):
        return text
    if isinstance(e, A.IntLit):
        return text
    return f"({text})"


# ---------------------------------------------------------------- statements

def print_stmt(s: A.Stmt) -> str:
    if isinstance(s, A.Skip):
        return "skip"
    if isinstance(s, A.Crash):
        return "crash"
    if isinstance(s, A.Seq):
        first = print_stmt(s.first)
        if isinstance(s.first, (A.Seq, A.LetS)):
            first = "{ " + first + " }"
        return f"{first}; {print_stmt(s.rest)}"
    if isinstance(s, A.Call):
        return s.proc + "(" + ", ".join(print_expr(a) for a in s.args) + ")"
    if isinstance(s, A.LetS):
        return (f"let {s.name} : {print_type(s.type)} = {print_expr(s.value)} in "
                f"{print_stmt(s.body)}")
    if isinstance(s, A.For):
        return f"for {s.var} in {s.start} .. {s.stop} {{ {print_stmt(s.body)} }}"
    if isinstance(s, A.IfS):
        return (f"if {print_expr(s.cond)} then {{ {print_stmt(s.then)} }} "
                f"else {{ {print_stmt(s.els)} }}")
    if isinstance(s, A.Assign):
        return f"*{print_expr(s.target, PREFIX_PREC)} <- {print_expr(s.value)}"
    if isinstance(s, A.Store):
        return f"[{print_expr(s.addr)}]:{s.width} <- {print_expr(s.value)}"
    if isinstance(s, A.Assert):
        return f"assert({print_expr(s.cond)})"
    raise TypeError(f"not a statement: {s!r}")


# ---------------------------------------------------------------- declarations

def _params(params, ty=print_type) -> str:
    return "(" + ", ".join(f"{p.name}: {ty(p.type)}" for p in params) + ")"


def print_decl(d: A.Decl) -> str:
    if isinstance(d, (A.RequireType, A.RequireValue, A.RequireFunc, A.ProvideType,
                      A.ProvideValue, A.ProvideFunc, A.Region)):
        return print_ale_decl(d)
    if isinstance(d, A.TypeDecl):
        return f"type {d.name} = {print_type(d.type)};;"
    if isinstance(d, A.LetDecl):
        return f"let {d.name} : {print_type(d.type)} = {print_expr(d.value)};;"
    if isinstance(d, A.TxtDecl):
        return f"let {d.name}.txt = {print_expr(d.value)};;"
    if isinstance(d, A.DefDecl):
        return (f"def {d.name}{_params(d.params)} : {print_type(d.result)} = "
                f"{print_expr(d.body)};;")
    if isinstance(d, A.ProcDecl):
        return f"proc {d.name}{_params(d.params)} = {print_stmt(d.body)};;"
    if isinstance(d, A.RegDecl):
        ctl = "control " if d.control else ""
        return f"letstate {ctl}{d.name} : {print_type(d.type)};;"
    if isinstance(d, A.MemDecl):
        label = f" with {d.label}" if d.label else ""
        return f"letstate {d.name} : {print_type(d.type)}{label};;"
    if isinstance(d, A.Defop):
        params = ", ".join(f"{p.name}: {print_type(p.type)}" for p in d.params)
        head = f"defop {d.name} {params}" if params else f"defop {d.name}"
        return f"{head} {{ txt = {print_expr(d.txt)}, sem = {print_stmt(d.sem)} }}"
    raise TypeError(f"not a declaration: {d!r}")


def print_ale_decl(d: A.Decl) -> str:
    ty = print_ale_type
    ex = lambda e: print_expr(e, ale=True)  # noqa: E731
    if isinstance(d, A.RequireType):
        return f"require type {d.name};;"
    if isinstance(d, A.RequireValue):
        return f"require value {d.name} : {ty(d.type)};;"
    if isinstance(d, A.RequireFunc):
        return f"require func {d.name} : {ty(d.type)};;"
    if isinstance(d, A.ProvideType):
        return f"provide type {d.name} = {ty(d.type)};;"
    if isinstance(d, A.ProvideValue):
        return f"provide value {d.name} : {ty(d.type)} = {ex(d.value)};;"
    if isinstance(d, A.ProvideFunc):
        return (f"provide func {d.name}{_params(d.params, ty)} : {ty(d.result)} = "
                f"{ex(d.body)};;")
    if isinstance(d, A.Region):
        label = f" with {d.label}" if d.label else ""
        return f"region {d.name} : {ty(d.type)}{label};;"
    if isinstance(d, A.LetDecl):
        return f"let {d.name} : {ty(d.type)} = {ex(d.value)};;"
    raise TypeError(f"not a declaration: {d!r}")


# ---------------------------------------------------------------- files

def print_frame(f: A.Frame, ale: bool = False) -> list[str]:
    lines = []
    if f.regs:
        lines.append("reg-modify: " + " ".join(f.regs))
    if f.mems:
        lines.append("mem-modify: " + " ".join(print_expr(m, ale=ale) for m in f.mems))
    return lines


@_pp.register
def _(m: A.Machine) -> str:
    return "\n".join([print_decl(d) for d in m.decls] + [print_decl(d) for d in m.defops])


@_pp.register
def _(s: A.Spec) -> str:
    lines = [print_decl(d) for d in s.decls] + print_frame(s.frame)
    lines.append(f"pre: {print_expr(s.pre)}")
    lines.append(f"post: {print_expr(s.post)}")
    return "\n".join(lines)


@_pp.register
def _(p: A.Program) -> str:
    return "\n".join(" ".join([i.op] + [print_operand(a) for a in i.args]) for i in p.insts)


@_pp.register
def _(i: A.Inst) -> str:
    return " ".join([i.op] + [print_operand(a) for a in i.args])


@_pp.register
def _(m: A.Module) -> str:
    body = [print_decl(d) for d in m.decls] + print_frame(m.frame)
    inner = "".join("  " + line + "\n" for line in body)
    return f"module {m.name} {{\n{inner}}}"


@_pp.register
def _(f: A.Frame) -> str:
    return "\n".join(print_frame(f))


@_pp.register
def _(s: A.AleSpec) -> str:
    lines = [print_ale_decl(d) for d in s.decls]
    b = s.block
    lines.append(f"block {b.name} {{")
    lines += ["  " + print_ale_decl(d) for d in b.lets]
    lines += ["  " + line for line in print_frame(b.frame, ale=True)]
    lines.append(f"  pre: {print_expr(b.pre, ale=True)}")
    lines.append(f"  post: {print_expr(b.post, ale=True)}")
    lines.append("}")
    return "\n".join(lines)
