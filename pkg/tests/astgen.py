"""Random AST generators shared by the test suite.

``gen_*`` build syntactically valid (not necessarily well-typed) trees from a
``random.Random``; ``TypedGen`` builds well-typed closed expressions over the
two-register toy machine. Both are deterministic for a given seed.
"""

from __future__ import annotations

import random

from cassiopea import ast as A
from cassiopea.bitvec import BitVec
from cassiopea.optable import BINARY_LEVELS, UNARY_OPS

NAMES = ("x", "y", "z", "foo", "bar_1", "r1", "r2", "m", "tmp", "Acc", "w0")
FUNCS = NAMES + ("hex", "bin", "dec", "format", "bv_to_len", "bv_to_uint", "isptr")
SYMBOLS = ("n", "wordsize", "k", "len0")
BIN_OPS = tuple(op for level in BINARY_LEVELS for op in level if op != "member")
STR_ALPHABET = "ab $1\"\\\n\tx"


def _name(rng: random.Random) -> str:
    return rng.choice(NAMES)


def _width(rng: random.Random, ale: bool = False) -> A.Width:
    if ale and rng.random() < 0.3:
        return rng.choice(SYMBOLS)
    return rng.randint(1, 64)


# ---------------------------------------------------------------- types

def gen_type(rng: random.Random, depth: int = 2, ale: bool = False) -> A.Type:
    if ale:
        choices = ["int", "bool", "alias", "vec", "ptr", "loc", "label", "set", "mem"]
    else:
        choices = ["unit", "int", "bool", "string", "alias", "bv", "loc", "set",
                   "label", "mem"]
    if depth > 0:
        choices += ["func"] * 2 + ([] if ale else ["proc"])
    kind = rng.choice(choices)
    w = lambda: _width(rng, ale)  # noqa: E731
    if kind == "func":
        params = tuple(gen_type(rng, depth - 1, ale) for _ in range(rng.randint(0, 3)))
        return A.FuncT(params, gen_type(rng, depth - 1, ale))
    if kind == "proc":
        return A.ProcT(tuple(gen_type(rng, depth - 1, ale) for _ in range(rng.randint(0, 3))))
    if kind == "mem":
        return A.MemT(w(), w(), w())
    if kind == "alias":
        return A.AliasT(_name(rng))
    simple = {"unit": A.UnitT, "int": A.IntT, "bool": A.BoolT, "string": A.StringT}
    if kind in simple:
        return simple[kind]()
    sized = {"bv": A.BVT, "loc": A.LocT, "set": A.RegSetT, "label": A.LabelT,
             "vec": A.VecT, "ptr": A.PtrT}
    return sized[kind](w())


# ---------------------------------------------------------------- expressions

def _bvlit(rng: random.Random) -> A.BVLit:
    width = rng.choice([1, 2, 3, 4, 5, 8, 12, 16, 32])
    return A.BVLit(BitVec(width, rng.randrange(1 << width)))


def gen_expr(rng: random.Random, depth: int = 3, ale: bool = False) -> A.Expr:
    leaves = ["int", "bool", "str", "bv", "fail", "var", "set"]
    inner = ["txt", "app", "unop", "binop", "index", "slice", "let", "if", "ptr",
             "deref", "fetch", "size", "member"]
    if ale:
        inner += ["forall", "exists"]
    kind = rng.choice(leaves if depth <= 0 else leaves + inner * 2)
    sub = lambda: gen_expr(rng, depth - 1, ale)  # noqa: E731
    if kind == "int":
        return A.IntLit(rng.choice([0, 1, 7, 255, -3, rng.randint(-10**6, 10**6)]))
    if kind == "bool":
        return A.BoolLit(rng.random() < 0.5)
    if kind == "str":
        return A.StrLit("".join(rng.choice(STR_ALPHABET) for _ in range(rng.randint(0, 6))))
    if kind == "bv":
        return _bvlit(rng)
    if kind == "fail":
        return A.FailLit()
    if kind == "var":
        return A.Var(_name(rng))
    if kind == "set":
        return A.RegSetLit(tuple(rng.sample(NAMES, rng.randint(1, 3))))
    if kind == "txt":
        return A.Txt(sub())
    if kind == "app":
        return A.App(rng.choice(FUNCS), tuple(sub() for _ in range(rng.randint(0, 3))))
    if kind == "unop":
        return A.Unop(rng.choice(UNARY_OPS), sub())
    if kind == "binop":
        return A.Binop(rng.choice(BIN_OPS), sub(), sub())
    if kind == "index":
        return A.BitIndex(sub(), rng.randint(0, 40))
    if kind == "slice":
        lo = rng.randint(0, 20)
        return A.Slice(sub(), lo, lo + rng.randint(1, 20))
    if kind == "let":
        return A.LetE(_name(rng), gen_type(rng, 1, ale), sub(), sub())
    if kind == "if":
        return A.IfE(sub(), sub(), sub())
    if kind == "ptr":
        return A.PtrForm(_name(rng), sub())
    if kind == "deref":
        return A.Deref(sub())
    if kind == "fetch":
        return A.Fetch(sub(), _width(rng, ale))
    if kind == "size":
        return A.SetSize(sub())
    if kind == "member":
        return A.Member(sub(), sub())
    cls = A.Forall if kind == "forall" else A.Exists
    return cls(_name(rng), sub(), sub())


# ---------------------------------------------------------------- statements

def gen_stmt(rng: random.Random, depth: int = 3) -> A.Stmt:
    leaves = ["skip", "crash", "call", "assign", "store", "assert"]
    inner = ["seq", "let", "for", "if"]
    kind = rng.choice(leaves if depth <= 0 else leaves + inner * 2)
    sub = lambda: gen_stmt(rng, depth - 1)  # noqa: E731
    e = lambda: gen_expr(rng, 2)  # noqa: E731
    if kind == "skip":
        return A.Skip()
    if kind == "crash":
        return A.Crash()
    if kind == "call":
        return A.Call(_name(rng), tuple(e() for _ in range(rng.randint(0, 3))))
    if kind == "assign":
        return A.Assign(e(), e())
    if kind == "store":
        return A.Store(e(), rng.randint(1, 64), e())
    if kind == "assert":
        return A.Assert(e())
    if kind == "seq":
        return A.Seq(sub(), sub())
    if kind == "let":
        return A.LetS(_name(rng), gen_type(rng, 1), e(), sub())
    if kind == "for":
        start = rng.randint(0, 5)
        return A.For(_name(rng), start, start + rng.randint(0, 5), sub())
    return A.IfS(e(), sub(), sub())


# ---------------------------------------------------------------- declarations

def _params(rng: random.Random, ale: bool = False) -> tuple:
    return tuple(A.Param(_name(rng), gen_type(rng, 1, ale)) for _ in range(rng.randint(0, 3)))


def _mem_type(rng: random.Random, ale: bool = False) -> A.MemT:
    return A.MemT(_width(rng, ale), _width(rng, ale), _width(rng, ale))


def gen_decl(rng: random.Random) -> A.Decl:
    kind = rng.choice(["type", "let", "txt", "def", "proc", "reg", "mem", "defop"])
    if kind == "type":
        return A.TypeDecl(_name(rng), gen_type(rng))
    if kind == "let":
        return A.LetDecl(_name(rng), gen_type(rng), gen_expr(rng))
    if kind == "txt":
        return A.TxtDecl(_name(rng), gen_expr(rng))
    if kind == "def":
        return A.DefDecl(_name(rng), _params(rng), gen_type(rng), gen_expr(rng))
    if kind == "proc":
        return A.ProcDecl(_name(rng), _params(rng), gen_stmt(rng))
    if kind == "reg":
        t = gen_type(rng)
        while isinstance(t, A.MemT):
            t = gen_type(rng)
        return A.RegDecl(_name(rng), t, rng.random() < 0.3)
    if kind == "mem":
        label = _name(rng) if rng.random() < 0.5 else None
        return A.MemDecl(_name(rng), _mem_type(rng), label)
    params = tuple(A.Param(_name(rng), gen_type(rng, 0)) for _ in range(rng.randint(0, 3)))
    return A.Defop(_name(rng).upper(), params, gen_expr(rng), gen_stmt(rng))


def gen_ale_decl(rng: random.Random) -> A.Decl:
    kind = rng.choice(["rtype", "rvalue", "rfunc", "ptype", "pvalue", "pfunc", "region"])
    t = lambda: gen_type(rng, 1, ale=True)  # noqa: E731
    if kind == "rtype":
        return A.RequireType(_name(rng))
    if kind == "rvalue":
        return A.RequireValue(_name(rng), t())
    if kind == "rfunc":
        params = tuple(t() for _ in range(rng.randint(0, 3)))
        return A.RequireFunc(_name(rng), A.FuncT(params, t()))
    if kind == "ptype":
        return A.ProvideType(_name(rng), t())
    if kind == "pvalue":
        return A.ProvideValue(_name(rng), t(), gen_expr(rng, ale=True))
    if kind == "pfunc":
        return A.ProvideFunc(_name(rng), _params(rng, ale=True), t(), gen_expr(rng, ale=True))
    label = _name(rng) if rng.random() < 0.5 else None
    return A.Region(_name(rng), _mem_type(rng, ale=True), label)


# ---------------------------------------------------------------- well-typed expressions

INT, BOOL, STR = A.IntT(), A.BoolT(), A.StringT()
LOC2, SET2 = A.LocT(2), A.RegSetT(2)
BV_WIDTHS = (1, 2, 3, 4, 8)
TOY_MACHINE = """
letstate r1: 2 bit loc;;
letstate r2: 2 bit loc;;
let r1.txt = "r1";;
let r2.txt = "r2";;
defop NOP { txt = "nop", sem = skip }
"""


class TypedGen:
    """Well-typed closed expressions over registers ``r1`` and ``r2`` (2 bits each)."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.counter = 0

    def fresh(self) -> str:
        self.counter += 1
        return f"v{self.counter}"

    def any_type(self) -> A.Type:
        r = self.rng.random()
        if r < 0.45:
            return A.BVT(self.rng.choice(BV_WIDTHS))
        return self.rng.choice([INT, BOOL, STR, LOC2, SET2])

    def expr(self, t: A.Type, depth: int, scope: tuple = ()) -> A.Expr:
        rng = self.rng
        in_scope = [n for n, nt in scope if nt == t]
        if in_scope and rng.random() < 0.25:
            return A.Var(rng.choice(in_scope))
        if depth > 0 and rng.random() < 0.12:
            return self._let(t, depth, scope)
        if depth > 0 and rng.random() < 0.1:
            return A.IfE(self.expr(BOOL, depth - 1, scope), self.expr(t, depth - 1, scope),
                         self.expr(t, depth - 1, scope))
        if isinstance(t, A.IntT):
            return self._int(depth, scope)
        if isinstance(t, A.BoolT):
            return self._bool(depth, scope)
        if isinstance(t, A.StringT):
            return self._str(depth, scope)
        if isinstance(t, A.BVT):
            return self._bv(t.width, depth, scope)
        if isinstance(t, A.LocT):
            return A.Var(rng.choice(["r1", "r2"]))
        return self._set(depth, scope)

    def _let(self, t, depth, scope):
        bt = self.any_type()
        name = self.fresh()
        value = self.expr(bt, depth - 1, scope)
        return A.LetE(name, bt, value, self.expr(t, depth - 1, scope + ((name, bt),)))

    def _int(self, depth, scope):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.3:
            return A.IntLit(rng.randint(-20, 20))
        k = rng.randrange(4)
        if k == 0:
            op = rng.choice(["+", "-", "*", "/"])
            return A.Binop(op, self.expr(INT, depth - 1, scope), self.expr(INT, depth - 1, scope))
        if k == 1:
            return A.Unop("-", self.expr(INT, depth - 1, scope))
        if k == 2:
            w = rng.choice(BV_WIDTHS)
            return A.App("bv_to_uint", (self.expr(A.BVT(w), depth - 1, scope),))
        return A.SetSize(self.expr(SET2, depth - 1, scope))

    def _bool(self, depth, scope):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.2:
            return A.BoolLit(rng.random() < 0.5)
        k = rng.randrange(8)
        d = depth - 1
        if k == 0:
            return A.Binop(rng.choice(["<", "<=", ">", ">="]), self.expr(INT, d, scope),
                           self.expr(INT, d, scope))
        if k == 1:
            t = self.any_type()
            return A.Binop(rng.choice(["==", "!="]), self.expr(t, d, scope), self.expr(t, d, scope))
        if k == 2:
            w = A.BVT(rng.choice(BV_WIDTHS))
            op = rng.choice(["b<", "b<=", "b>", "b>=", "bs<", "bs<=", "bs>", "bs>="])
            return A.Binop(op, self.expr(w, d, scope), self.expr(w, d, scope))
        if k == 3:
            return A.Binop(rng.choice(["&&", "||", "^^"]), self.expr(BOOL, d, scope),
                           self.expr(BOOL, d, scope))
        if k == 4:
            return A.Unop("!", self.expr(BOOL, d, scope))
        if k == 5:
            return A.Member(self.expr(LOC2, d, scope), self.expr(SET2, d, scope))
        if k == 6:
            return A.Binop("subset", self.expr(SET2, d, scope), self.expr(SET2, d, scope))
        return A.App("isptr", (self.expr(A.BVT(rng.choice(BV_WIDTHS)), d, scope),))

    def _str(self, depth, scope):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.25:
            return A.StrLit(rng.choice(["", "a", "$1", "x$2y", "$$"]))
        k = rng.randrange(3)
        d = depth - 1
        if k == 0:
            arg = self.expr(rng.choice([INT, A.BVT(rng.choice(BV_WIDTHS))]), d, scope)
            return A.App(rng.choice(["hex", "bin", "dec"]), (arg,))
        if k == 1:
            return A.Txt(self.expr(LOC2, d, scope))
        n = rng.randint(0, 2)
        fmt = " ".join(f"${i + 1}" for i in range(n)) or "plain"
        args = tuple(self.expr(STR, d, scope) for _ in range(n))
        return A.App("format", (A.StrLit(fmt),) + args)

    def _bv(self, w, depth, scope):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.2:
            if w == 2 and rng.random() < 0.4:
                return A.Deref(A.Var(rng.choice(["r1", "r2"])))
            return A.BVLit(BitVec(w, rng.randrange(1 << w)))
        t = A.BVT(w)
        d = depth - 1
        k = rng.randrange(8)
        if k == 0:
            ops = ["b+", "b-", "b*", "b/", "band", "bor", "bxor", "<<", ">>", ">>>"]
            return A.Binop(rng.choice(ops), self.expr(t, d, scope), self.expr(t, d, scope))
        if k == 1:
            return A.Unop(rng.choice(["b-", "bnot"]), self.expr(t, d, scope))
        if k == 2 and w == 1:
            src = rng.choice(BV_WIDTHS)
            return A.BitIndex(self.expr(A.BVT(src), d, scope), rng.randrange(src))
        if k == 3:
            src = rng.choice([x for x in BV_WIDTHS if x >= w])
            lo = rng.randint(0, src - w)
            return A.Slice(self.expr(A.BVT(src), d, scope), lo, lo + w)
        if k == 4:
            src = rng.choice(BV_WIDTHS)
            return A.App("bv_to_len", (A.IntLit(w), self.expr(A.BVT(src), d, scope)))
        if k == 5:
            return A.App("uint_to_bv_l", (A.IntLit(w), self.expr(INT, d, scope)))
        if k == 6 and w == 2:
            return A.Deref(self.expr(LOC2, d, scope))
        return A.BVLit(BitVec(w, rng.randrange(1 << w)))

    def _set(self, depth, scope):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.4:
            return rng.choice([A.RegSetLit(("r1",)), A.RegSetLit(("r2",)),
                               A.RegSetLit(("r1", "r2")), A.App("empty", (A.IntLit(2),))])
        op = rng.choice(["union", "intersect", "setminus"])
        return A.Binop(op, self.expr(SET2, depth - 1, scope), self.expr(SET2, depth - 1, scope))
