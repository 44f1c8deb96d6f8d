"""Syntax trees for Cassiopea and Alewife.

Both languages share most node classes. Alewife-only constructs (vec/ptr
types, quantifiers, require/provide declarations, blocks) live at the end.
In Alewife trees any width may be a symbolic constant (a ``str``); in
Cassiopea trees widths are always ``int``.

Every node carries an optional source position that is ignored by equality,
so a reparsed tree compares equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .bitvec import BitVec
from .errors import Pos

Width = Union[int, str]


@dataclass(frozen=True)
class Node:
    pos: Optional[Pos] = field(default=None, compare=False, repr=False, kw_only=True)


# ---------------------------------------------------------------- types

class Type(Node):
    pass


@dataclass(frozen=True)
class UnitT(Type):
    pass


@dataclass(frozen=True)
class IntT(Type):
    pass


@dataclass(frozen=True)
class BoolT(Type):
    pass


@dataclass(frozen=True)
class StringT(Type):
    pass


@dataclass(frozen=True)
class AliasT(Type):
    name: str


@dataclass(frozen=True)
class BVT(Type):
    """Plain bitvector value type, ``C bit``."""
    width: Width


@dataclass(frozen=True)
class LocT(Type):
    """A register holding a ``width``-bit value."""
    width: Width


@dataclass(frozen=True)
class RegSetT(Type):
    width: Width


@dataclass(frozen=True)
class LabelT(Type):
    width: Width


@dataclass(frozen=True)
class MemT(Type):
    """``cell_width bit length len ptr_width ref``."""
    cell_width: Width
    length: Width
    ptr_width: Width


@dataclass(frozen=True)
class FuncT(Type):
    params: tuple
    result: Type


@dataclass(frozen=True)
class ProcT(Type):
    params: tuple


# Alewife-only base types
@dataclass(frozen=True)
class VecT(Type):
    width: Width


@dataclass(frozen=True)
class PtrT(Type):
    width: Width


# ---------------------------------------------------------------- expressions

class Expr(Node):
    pass


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class StrLit(Expr):
    value: str


@dataclass(frozen=True)
class BVLit(Expr):
    value: BitVec


@dataclass(frozen=True)
class FailLit(Expr):
    pass


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Txt(Expr):
    """``e.txt``: the assembly text bound to a register."""
    target: Expr


@dataclass(frozen=True)
class App(Expr):
    func: str
    args: tuple


@dataclass(frozen=True)
class Unop(Expr):
    op: str
    operand: Expr


@dataclass(frozen=True)
class Binop(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class BitIndex(Expr):
    target: Expr
    index: int


@dataclass(frozen=True)
class Slice(Expr):
    """Half-open ``[lo, hi)`` bit range, LSB is bit 0."""
    target: Expr
    lo: int
    hi: int


@dataclass(frozen=True)
class LetE(Expr):
    name: str
    type: Type
    value: Expr
    body: Expr


@dataclass(frozen=True)
class IfE(Expr):
    cond: Expr
    then: Expr
    els: Expr


@dataclass(frozen=True)
class PtrForm(Expr):
    """``[region, offset]``: a pointer to a byte offset of a memory region."""
    region: str
    offset: Expr


@dataclass(frozen=True)
class Deref(Expr):
    """``*e``: read the register that ``e`` denotes."""
    target: Expr


@dataclass(frozen=True)
class Fetch(Expr):
    """``[e]:C``: read a C-bit memory cell through pointer ``e``."""
    addr: Expr
    width: Width


@dataclass(frozen=True)
class RegSetLit(Expr):
    names: tuple


@dataclass(frozen=True)
class SetSize(Expr):
    target: Expr


@dataclass(frozen=True)
class Member(Expr):
    elem: Expr
    set: Expr


# Alewife-only
@dataclass(frozen=True)
class Forall(Expr):
    var: str
    domain: Expr
    body: Expr


@dataclass(frozen=True)
class Exists(Expr):
    var: str
    domain: Expr
    body: Expr


# ---------------------------------------------------------------- statements

class Stmt(Node):
    pass


@dataclass(frozen=True)
class Skip(Stmt):
    pass


@dataclass(frozen=True)
class Crash(Stmt):
    pass


@dataclass(frozen=True)
class Seq(Stmt):
    first: Stmt
    rest: Stmt


@dataclass(frozen=True)
class Call(Stmt):
    proc: str
    args: tuple


@dataclass(frozen=True)
class LetS(Stmt):
    name: str
    type: Type
    value: Expr
    body: Stmt


@dataclass(frozen=True)
class For(Stmt):
    var: str
    start: int
    stop: int
    body: Stmt


@dataclass(frozen=True)
class IfS(Stmt):
    cond: Expr
    then: Stmt
    els: Stmt


@dataclass(frozen=True)
class Assign(Stmt):
    """``*target <- value``."""
    target: Expr
    value: Expr


@dataclass(frozen=True)
class Store(Stmt):
    """``[addr]:width <- value``."""
    addr: Expr
    width: int
    value: Expr


@dataclass(frozen=True)
class Assert(Stmt):
    cond: Expr


# ---------------------------------------------------------------- declarations

class Decl(Node):
    pass


@dataclass(frozen=True)
class TypeDecl(Decl):
    name: str
    type: Type


@dataclass(frozen=True)
class LetDecl(Decl):
    name: str
    type: Type
    value: Expr


@dataclass(frozen=True)
class TxtDecl(Decl):
    """``let r.txt = e``."""
    name: str
    value: Expr


@dataclass(frozen=True)
class Param(Node):
    name: str
    type: Type


@dataclass(frozen=True)
class DefDecl(Decl):
    name: str
    params: tuple
    result: Type
    body: Expr


@dataclass(frozen=True)
class ProcDecl(Decl):
    name: str
    params: tuple
    body: Stmt


@dataclass(frozen=True)
class RegDecl(Decl):
    """``letstate [control] x: C bit loc``."""
    name: str
    type: Type
    control: bool = False


@dataclass(frozen=True)
class MemDecl(Decl):
    """``letstate m: C1 bit C2 len C3 ref [with label]``."""
    name: str
    type: MemT
    label: Optional[str] = None


@dataclass(frozen=True)
class Defop(Decl):
    name: str
    params: tuple
    txt: Expr
    sem: Stmt


@dataclass(frozen=True)
class Frame(Node):
    regs: tuple = ()
    mems: tuple = ()  # PtrForm nodes

    def union(self, other: "Frame") -> "Frame":
        regs = self.regs + tuple(r for r in other.regs if r not in self.regs)
        mems = self.mems + tuple(m for m in other.mems if m not in self.mems)
        return Frame(regs, mems)


@dataclass(frozen=True)
class Machine(Node):
    decls: tuple = ()
    defops: tuple = ()


@dataclass(frozen=True)
class Spec(Node):
    decls: tuple
    frame: Frame
    pre: Expr
    post: Expr


@dataclass(frozen=True)
class Inst(Node):
    op: str
    args: tuple = ()


@dataclass(frozen=True)
class Program(Node):
    insts: tuple = ()


@dataclass(frozen=True)
class Module(Node):
    name: str
    decls: tuple = ()
    frame: Frame = Frame()


# ---------------------------------------------------------------- Alewife

@dataclass(frozen=True)
class RequireType(Decl):
    name: str


@dataclass(frozen=True)
class RequireValue(Decl):
    name: str
    type: Type


@dataclass(frozen=True)
class RequireFunc(Decl):
    name: str
    type: FuncT


@dataclass(frozen=True)
class ProvideType(Decl):
    name: str
    type: Type


@dataclass(frozen=True)
class ProvideValue(Decl):
    name: str
    type: Type
    value: Expr


@dataclass(frozen=True)
class ProvideFunc(Decl):
    name: str
    params: tuple
    result: Type
    body: Expr


@dataclass(frozen=True)
class Region(Decl):
    name: str
    type: MemT
    label: Optional[str] = None


@dataclass(frozen=True)
class Block(Node):
    name: str
    lets: tuple  # LetDecl nodes
    frame: Frame
    pre: Expr
    post: Expr


@dataclass(frozen=True)
class AleSpec(Node):
    decls: tuple
    block: Block


BASE_TYPES = (UnitT, IntT, BoolT, StringT, AliasT, BVT, LocT, RegSetT, LabelT)
