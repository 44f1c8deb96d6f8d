"""Recursive-descent parsers for machines, specs, programs, mappings and Alewife.

Grammar summary (Cassiopea)::

    decl  ::= type x = t ;;  |  let x : t = e ;;  |  let x.txt = e ;;
            | def f(x: t, ...) : t = e ;;  |  proc p(x: t, ...) = S ;;
            | letstate [control] x : t ;;  |  letstate m : C bit C len C ref [with L] ;;
            | defop NAME [x: t, ...] { txt = e, sem = S } [;;]
    stmt  ::= S ; S  |  { S }  |  let x : t = e in S  |  for x in C .. C { S }
            | if e then { S } [else { S }]  |  *e <- e  |  [e]:C <- e
            | p(e, ...)  |  assert(e)  |  skip  |  crash
    spec  ::= decl* [reg-modify: x ...] [mem-modify: [m, e] ...] pre: e post: e
    prog  ::= one instruction per line, or separated by ';'

Alewife adds ``require``/``provide``/``region`` declarations, a single
``block NAME { let ...;; frame pre: e post: e }`` and ``forall``/``exists``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import ast as A
from .bitvec import BitVec
from .errors import ParseError
from .lexer import Token, tokenize_with_includes
from .optable import BINARY_LEVELS

ALE_SIZED = ("vec", "ptr", "loc", "label")


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str

    @classmethod
    def from_path(cls, path: str) -> "SourceFile":
        with open(path, encoding="utf-8") as fh:
            return cls(path, fh.read())


Source = Union[SourceFile, str]


def _tokens(src: Source) -> list[Token]:
    if isinstance(src, SourceFile):
        return tokenize_with_includes(src.text, src.path)
    return tokenize_with_includes(src)


class Parser:
    def __init__(self, tokens: list[Token], ale: bool = False):
        self.toks = tokens
        self.i = 0
        self.ale = ale

    # ------------------------------------------------------------ helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        return self.tok.is_(kind, text)

    def at_sym(self, text: str) -> bool:
        return self.tok.is_("SYM", text)

    def at_kw(self, text: str) -> bool:
        return self.tok.is_("KW", text)

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.i += 1
        return t

    def error(self, msg: str) -> ParseError:
        found = self.tok.text or "end of input"
        return ParseError(f"{msg}, found {found!r}", pos=self.tok.pos)

    def expect_sym(self, text: str) -> Token:
        if not self.at_sym(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def expect_kw(self, text: str) -> Token:
        if not self.at_kw(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def expect_ident(self) -> str:
        if not self.at("IDENT"):
            raise self.error("expected an identifier")
        return self.advance().text

    def expect_int(self) -> int:
        neg = False
        if self.at_sym("-") and self.peek().kind == "INT":
            self.advance()
            neg = True
        if not self.at("INT"):
            raise self.error("expected an integer")
        value = int(self.advance().text)
        return -value if neg else value

    def expect_eof(self) -> None:
        if not self.at("EOF"):
            raise self.error("unexpected trailing input")

    def accept_sym(self, text: str) -> bool:
        if self.at_sym(text):
            self.advance()
            return True
        return False

    # ------------------------------------------------------------ widths / types
    def width(self) -> A.Width:
        """An integer, or in Alewife also a symbolic constant."""
        if self.at("INT"):
            return int(self.advance().text)
        if self.ale and self.at("IDENT"):
            name = self.advance().text
            return "wordsize" if name == "word" else name
        raise self.error("expected a width")

    def _at_width(self) -> bool:
        return self.at("INT") or (self.ale and self.at("IDENT"))

    def type_(self) -> A.Type:
        pos = self.tok.pos
        if self.at_sym("("):
            self.advance()
            params = []
            if not self.at_sym(")"):
                params.append(self.type_())
                while self.accept_sym(","):
                    params.append(self.type_())
            self.expect_sym(")")
            self.expect_sym("->")
            return A.FuncT(tuple(params), self.type_(), pos=pos)
        if self.at_kw("proc") and not self.ale:
            self.advance()
            self.expect_sym("(")
            params = []
            if not self.at_sym(")"):
                params.append(self.type_())
                while self.accept_sym(","):
                    params.append(self.type_())
            self.expect_sym(")")
            return A.ProcT(tuple(params), pos=pos)
        for kw, cls in (("int", A.IntT), ("bool", A.BoolT)):
            if self.at_kw(kw):
                self.advance()
                return cls(pos=pos)
        if not self.ale:
            for kw, cls in (("unit", A.UnitT), ("string", A.StringT)):
                if self.at_kw(kw):
                    self.advance()
                    return cls(pos=pos)
        if self.ale:
            # sizeless forms get the machine word size
            if self.tok.kind == "KW" and self.tok.text in ALE_SIZED:
                return self._ale_sized("wordsize", pos)
            if self.at_kw("reg"):
                return self._ale_sized("wordsize", pos)
            if self.at("IDENT") and not self._sized_follows():
                return A.AliasT(self.advance().text, pos=pos)
        elif self.at("IDENT"):
            return A.AliasT(self.advance().text, pos=pos)
        if not self._at_width():
            raise self.error("expected a type")
        w = self.width()
        if self.ale and self.tok.kind == "KW" and (self.tok.text in ALE_SIZED
                                                   or self.tok.text == "reg"):
            return self._ale_sized(w, pos)
        if self.at_kw("bit"):
            self.advance()
            if self.at_kw("loc") and not self.ale:
                self.advance()
                return A.LocT(w, pos=pos)
            if self._at_width() and self.peek().is_("KW", "len"):
                length = self.width()
                self.expect_kw("len")
                ptr = self.width()
                self.expect_kw("ref")
                return A.MemT(w, length, ptr, pos=pos)
            if self.ale:
                raise self.error("expected 'len' after region cell width")
            return A.BVT(w, pos=pos)
        if self.at_kw("reg") and not self.ale:
            self.advance()
            self.expect_kw("set")
            return A.RegSetT(w, pos=pos)
        if self.at_kw("label") and not self.ale:
            self.advance()
            return A.LabelT(w, pos=pos)
        raise self.error("expected 'bit', 'reg set' or 'label' after width")

    def _sized_follows(self) -> bool:
        nxt = self.peek()
        return nxt.kind == "KW" and nxt.text in ALE_SIZED + ("reg", "bit")

    def _ale_sized(self, w: A.Width, pos) -> A.Type:
        kw = self.advance().text
        if kw == "reg":
            self.expect_kw("set")
            return A.RegSetT(w, pos=pos)
        return {"vec": A.VecT, "ptr": A.PtrT, "loc": A.LocT, "label": A.LabelT}[kw](w, pos=pos)

    # ------------------------------------------------------------ expressions
    def expr(self) -> A.Expr:
        return self.binary(0)

    def binary(self, level: int) -> A.Expr:
        if level == len(BINARY_LEVELS):
            return self.unary()
        left = self.binary(level + 1)
        ops = BINARY_LEVELS[level]
        while self.tok.kind in ("SYM", "KW") and self.tok.text in ops:
            tok = self.advance()
            right = self.binary(level + 1)
            if tok.text == "member":
                left = A.Member(left, right, pos=tok.pos)
            else:
                left = A.Binop(tok.text, left, right, pos=tok.pos)
        return left

    def unary(self) -> A.Expr:
        tok = self.tok
        if tok.is_("SYM", "-") and self.peek().kind == "INT":
            self.advance()
            lit = A.IntLit(-int(self.advance().text), pos=tok.pos)
            return self.postfix(lit)
        if tok.kind in ("SYM", "KW") and tok.text in ("-", "!", "b-", "bnot"):
            self.advance()
            return A.Unop(tok.text, self.unary(), pos=tok.pos)
        if tok.is_("SYM", "*"):
            self.advance()
            return A.Deref(self.unary(), pos=tok.pos)
        return self.postfix(self.atom())

    def postfix(self, e: A.Expr) -> A.Expr:
        while True:
            if self.at_sym("["):
                pos = self.advance().pos
                lo = self.expect_int()
                if self.accept_sym(":"):
                    hi = self.expect_int()
                    self.expect_sym("]")
                    e = A.Slice(e, lo, hi, pos=pos)
                else:
                    self.expect_sym("]")
                    e = A.BitIndex(e, lo, pos=pos)
            elif self.at_sym(".") and self.peek().is_("KW", "txt"):
                pos = self.advance().pos
                self.advance()
                e = A.Txt(e, pos=pos)
            else:
                return e

    def atom(self, operand: bool = False) -> A.Expr:
        tok = self.tok
        pos = tok.pos
        if tok.kind == "INT":
            self.advance()
            return A.IntLit(int(tok.text), pos=pos)
        if tok.kind == "BV":
            self.advance()
            return A.BVLit(BitVec.from_literal(tok.text), pos=pos)
        if tok.kind == "STR":
            self.advance()
            return A.StrLit(tok.text, pos=pos)
        if tok.is_("KW", "true") or tok.is_("KW", "false"):
            self.advance()
            return A.BoolLit(tok.text == "true", pos=pos)
        if tok.is_("KW", "fail"):
            self.advance()
            return A.FailLit(pos=pos)
        if tok.kind == "IDENT":
            self.advance()
            nxt = self.tok
            adjacent = (nxt.pos.line == tok.pos.line
                        and nxt.pos.col == tok.pos.col + len(tok.text))
            if nxt.is_("SYM", "(") and (adjacent or not operand):
                self.advance()
                args = []
                if not self.at_sym(")"):
                    args.append(self.expr())
                    while self.accept_sym(","):
                        args.append(self.expr())
                self.expect_sym(")")
                return A.App(tok.text, tuple(args), pos=pos)
            return A.Var(tok.text, pos=pos)
        if tok.is_("SYM", "("):
            self.advance()
            e = self.expr()
            self.expect_sym(")")
            return e
        if tok.is_("SYM", "["):
            self.advance()
            if self.at("IDENT") and self.peek().is_("SYM", ","):
                region = self.advance().text
                self.advance()
                offset = self.expr()
                self.expect_sym("]")
                return A.PtrForm(region, offset, pos=pos)
            addr = self.expr()
            self.expect_sym("]")
            self.expect_sym(":")
            return A.Fetch(addr, self.width(), pos=pos)
        if tok.is_("SYM", "{"):
            self.advance()
            names = [self.expect_ident()]
            while self.accept_sym(","):
                names.append(self.expect_ident())
            self.expect_sym("}")
            return A.RegSetLit(tuple(names), pos=pos)
        if tok.is_("SYM", "|"):
            self.advance()
            e = self.expr()
            self.expect_sym("|")
            return A.SetSize(e, pos=pos)
        if tok.is_("KW", "let"):
            self.advance()
            name = self.expect_ident()
            self.expect_sym(":")
            t = self.type_()
            self.expect_sym("=")
            value = self.expr()
            self.expect_kw("in")
            return A.LetE(name, t, value, self.expr(), pos=pos)
        if tok.is_("KW", "if"):
            self.advance()
            cond = self.expr()
            self.expect_kw("then")
            then = self.expr()
            self.expect_kw("else")
            return A.IfE(cond, then, self.expr(), pos=pos)
        if self.ale and tok.kind == "KW" and tok.text in ("forall", "exists"):
            self.advance()
            var = self.expect_ident()
            self.expect_kw("in")
            domain = self.expr()
            self.expect_sym(".")
            body = self.expr()
            cls = A.Forall if tok.text == "forall" else A.Exists
            return cls(var, domain, body, pos=pos)
        raise self.error("expected an expression")

    def operand(self) -> A.Expr:
        """An instruction operand: an atom or a negative integer literal."""
        if self.at_sym("-") and self.peek().kind == "INT":
            pos = self.advance().pos
            return A.IntLit(-int(self.advance().text), pos=pos)
        return self.atom(operand=True)

    # ------------------------------------------------------------ statements
    def stmt(self) -> A.Stmt:
        first = self.simple_stmt()
        if self.at_sym(";"):
            self.advance()
            if self._stmt_ends():
                return first
            return A.Seq(first, self.stmt(), pos=first.pos)
        return first

    def _stmt_ends(self) -> bool:
        return self.tok.kind == "EOF" or self.tok.text in ("}", ";;", ",") \
            and self.tok.kind == "SYM"

    def braced_stmt(self) -> A.Stmt:
        self.expect_sym("{")
        if self.accept_sym("}"):
            return A.Skip()
        s = self.stmt()
        self.expect_sym("}")
        return s

    def simple_stmt(self) -> A.Stmt:
        tok = self.tok
        pos = tok.pos
        if tok.is_("SYM", "{"):
            return self.braced_stmt()
        if tok.is_("KW", "skip"):
            self.advance()
            return A.Skip(pos=pos)
        if tok.is_("KW", "crash"):
            self.advance()
            return A.Crash(pos=pos)
        if tok.is_("KW", "assert"):
            self.advance()
            self.expect_sym("(")
            e = self.expr()
            self.expect_sym(")")
            return A.Assert(e, pos=pos)
        if tok.is_("KW", "let"):
            self.advance()
            name = self.expect_ident()
            self.expect_sym(":")
            t = self.type_()
            self.expect_sym("=")
            value = self.expr()
            self.expect_kw("in")
            return A.LetS(name, t, value, self.stmt(), pos=pos)
        if tok.is_("KW", "for"):
            self.advance()
            var = self.expect_ident()
            self.expect_kw("in")
            start = self.expect_int()
            self.expect_sym("..")
            stop = self.expect_int()
            return A.For(var, start, stop, self.braced_stmt(), pos=pos)
        if tok.is_("KW", "if"):
            self.advance()
            cond = self.expr()
            self.expect_kw("then")
            then = self.braced_stmt()
            els: A.Stmt = A.Skip()
            if self.at_kw("else"):
                self.advance()
                els = self.braced_stmt()
            return A.IfS(cond, then, els, pos=pos)
        if tok.is_("SYM", "*"):
            self.advance()
            target = self.unary()
            self.expect_sym("<-")
            return A.Assign(target, self.expr(), pos=pos)
        if tok.is_("SYM", "["):
            self.advance()
            addr = self.expr()
            self.expect_sym("]")
            self.expect_sym(":")
            width = self.expect_int()
            self.expect_sym("<-")
            return A.Store(addr, width, self.expr(), pos=pos)
        if tok.kind == "IDENT" and self.peek().is_("SYM", "("):
            name = self.advance().text
            self.advance()
            args = []
            if not self.at_sym(")"):
                args.append(self.expr())
                while self.accept_sym(","):
                    args.append(self.expr())
            self.expect_sym(")")
            return A.Call(name, tuple(args), pos=pos)
        raise self.error("expected a statement")

    # ------------------------------------------------------------ declarations
    def params(self) -> tuple:
        self.expect_sym("(")
        out = []
        if not self.at_sym(")"):
            out.append(self.param())
            while self.accept_sym(","):
                out.append(self.param())
        self.expect_sym(")")
        return tuple(out)

    def param(self) -> A.Param:
        pos = self.tok.pos
        name = self.expect_ident()
        self.expect_sym(":")
        return A.Param(name, self.type_(), pos=pos)

    def at_decl(self) -> bool:
        if self.ale:
            return self.tok.kind == "KW" and self.tok.text in (
                "require", "provide", "region")
        return self.tok.kind == "KW" and self.tok.text in (
            "type", "let", "def", "proc", "letstate", "defop")

    def decl(self) -> A.Decl:
        if self.ale:
            return self.ale_decl()
        tok = self.tok
        pos = tok.pos
        if tok.is_("KW", "defop"):
            return self.defop()
        if tok.is_("KW", "type"):
            self.advance()
            name = self.expect_ident()
            self.expect_sym("=")
            d: A.Decl = A.TypeDecl(name, self.type_(), pos=pos)
        elif tok.is_("KW", "let"):
            self.advance()
            name = self.expect_ident()
            if self.at_sym("."):
                self.advance()
                self.expect_kw("txt")
                self.expect_sym("=")
                d = A.TxtDecl(name, self.expr(), pos=pos)
            else:
                self.expect_sym(":")
                t = self.type_()
                self.expect_sym("=")
                d = A.LetDecl(name, t, self.expr(), pos=pos)
        elif tok.is_("KW", "def"):
            self.advance()
            name = self.expect_ident()
            params = self.params()
            self.expect_sym(":")
            result = self.type_()
            self.expect_sym("=")
            d = A.DefDecl(name, params, result, self.expr(), pos=pos)
        elif tok.is_("KW", "proc"):
            self.advance()
            name = self.expect_ident()
            params = self.params()
            self.expect_sym("=")
            d = A.ProcDecl(name, params, self.stmt(), pos=pos)
        elif tok.is_("KW", "letstate"):
            self.advance()
            control = False
            if self.at_kw("control"):
                self.advance()
                control = True
            name = self.expect_ident()
            self.expect_sym(":")
            t = self.type_()
            if isinstance(t, A.MemT):
                if control:
                    raise ParseError("a memory region cannot be a control register", pos=pos)
                label = None
                if self.at_kw("with"):
                    self.advance()
                    label = self.expect_ident()
                d = A.MemDecl(name, t, label, pos=pos)
            else:
                d = A.RegDecl(name, t, control, pos=pos)
        else:
            raise self.error("expected a declaration")
        self.expect_sym(";;")
        return d

    def defop(self) -> A.Defop:
        pos = self.expect_kw("defop").pos
        name = self.expect_ident()
        params = []
        if self.at("IDENT"):
            params.append(self.param())
            while self.accept_sym(","):
                params.append(self.param())
        self.expect_sym("{")
        self.expect_kw("txt")
        self.expect_sym("=")
        txt = self.expr()
        self.expect_sym(",")
        self.expect_kw("sem")
        self.expect_sym("=")
        if self.at_sym("}"):
            sem: A.Stmt = A.Skip()
        else:
            sem = self.stmt()
        self.expect_sym("}")
        self.accept_sym(";;")
        return A.Defop(name, tuple(params), txt, sem, pos=pos)

    def ale_decl(self) -> A.Decl:
        tok = self.tok
        pos = tok.pos
        if tok.is_("KW", "require"):
            self.advance()
            if self.at_kw("type"):
                self.advance()
                d: A.Decl = A.RequireType(self.expect_ident(), pos=pos)
            elif self.at_kw("value"):
                self.advance()
                name = self.expect_ident()
                self.expect_sym(":")
                d = A.RequireValue(name, self.type_(), pos=pos)
            elif self.at_kw("func"):
                self.advance()
                name = self.expect_ident()
                self.expect_sym(":")
                t = self.type_()
                if not isinstance(t, A.FuncT):
                    raise ParseError("require func needs a function type", pos=pos)
                d = A.RequireFunc(name, t, pos=pos)
            else:
                raise self.error("expected 'type', 'value' or 'func'")
        elif tok.is_("KW", "provide"):
            self.advance()
            if self.at_kw("type"):
                self.advance()
                name = self.expect_ident()
                self.expect_sym("=")
                d = A.ProvideType(name, self.type_(), pos=pos)
            elif self.at_kw("value"):
                self.advance()
                name = self.expect_ident()
                self.expect_sym(":")
                t = self.type_()
                self.expect_sym("=")
                d = A.ProvideValue(name, t, self.expr(), pos=pos)
            elif self.at_kw("func"):
                self.advance()
                name = self.expect_ident()
                params = self.params()
                self.expect_sym(":")
                result = self.type_()
                self.expect_sym("=")
                d = A.ProvideFunc(name, params, result, self.expr(), pos=pos)
            else:
                raise self.error("expected 'type', 'value' or 'func'")
        elif tok.is_("KW", "region"):
            self.advance()
            name = self.expect_ident()
            self.expect_sym(":")
            t = self.type_()
            if not isinstance(t, A.MemT):
                raise ParseError("region needs a memory type", pos=pos)
            label = None
            if self.at_kw("with"):
                self.advance()
                label = self.expect_ident()
            d = A.Region(name, t, label, pos=pos)
        else:
            raise self.error("expected 'require', 'provide' or 'region'")
        self.expect_sym(";;")
        return d

    def block_let(self) -> A.LetDecl:
        pos = self.expect_kw("let").pos
        name = self.expect_ident()
        self.expect_sym(":")
        t = self.type_()
        self.expect_sym("=")
        value = self.expr()
        self.expect_sym(";;")
        return A.LetDecl(name, t, value, pos=pos)

    # ------------------------------------------------------------ frames and files
    def frame(self) -> A.Frame:
        regs: list = []
        mems: list = []
        while True:
            if self.at_kw("reg-modify"):
                self.advance()
                self.expect_sym(":")
                while self.at("IDENT"):
                    regs.append(self.advance().text)
                    self.accept_sym(",")
            elif self.at_kw("mem-modify"):
                self.advance()
                self.expect_sym(":")
                while self.at_sym("["):
                    pos = self.advance().pos
                    region = self.expect_ident()
                    self.expect_sym(",")
                    offset = self.expr()
                    self.expect_sym("]")
                    mems.append(A.PtrForm(region, offset, pos=pos))
                    self.accept_sym(",")
            else:
                break
            self.accept_sym(";;")
        return A.Frame(tuple(regs), tuple(mems))

    def pre_post(self) -> tuple[A.Expr, A.Expr]:
        self.expect_kw("pre")
        self.expect_sym(":")
        pre = self.expr()
        self.accept_sym(";;")
        self.expect_kw("post")
        self.expect_sym(":")
        post = self.expr()
        self.accept_sym(";;")
        return pre, post

    def machine(self) -> A.Machine:
        decls, defops = [], []
        while not self.at("EOF"):
            d = self.decl()
            (defops if isinstance(d, A.Defop) else decls).append(d)
        return A.Machine(tuple(decls), tuple(defops))

    def spec(self) -> A.Spec:
        pos = self.tok.pos
        decls = []
        while self.at_decl():
            decls.append(self.decl())
        frame = self.frame()
        pre, post = self.pre_post()
        self.expect_eof()
        return A.Spec(tuple(decls), frame, pre, post, pos=pos)

    def program(self) -> A.Program:
        insts = []
        while not self.at("EOF"):
            if self.accept_sym(";"):
                continue
            tok = self.tok
            if tok.kind != "IDENT":
                raise self.error("expected an instruction name")
            self.advance()
            args = []
            while not self.at("EOF") and not self.at_sym(";") \
                    and self.tok.pos.line == tok.pos.line \
                    and self.tok.pos.file == tok.pos.file:
                args.append(self.operand())
            insts.append(A.Inst(tok.text, tuple(args), pos=tok.pos))
        return A.Program(tuple(insts))

    def mapping(self) -> list[A.Module]:
        modules = []
        while not self.at("EOF"):
            pos = self.expect_kw("module").pos
            name = self.expect_ident()
            self.expect_sym("{")
            decls = []
            while self.at_decl():
                decls.append(self.decl())
            frame = self.frame()
            self.expect_sym("}")
            modules.append(A.Module(name, tuple(decls), frame, pos=pos))
        return modules

    def alewife(self) -> A.AleSpec:
        pos = self.tok.pos
        decls = []
        while self.at_decl():
            decls.append(self.decl())
        bpos = self.expect_kw("block").pos
        name = self.expect_ident()
        self.expect_sym("{")
        lets = []
        while self.at_kw("let"):
            lets.append(self.block_let())
        frame = self.frame()
        pre, post = self.pre_post()
        self.expect_sym("}")
        self.expect_eof()
        block = A.Block(name, tuple(lets), frame, pre, post, pos=bpos)
        return A.AleSpec(tuple(decls), block, pos=pos)


# ---------------------------------------------------------------- entry points

def _run(src: Source, rule: str, ale: bool = False):
    p = Parser(_tokens(src), ale=ale)
    result = getattr(p, rule)()
    p.expect_eof()
    return result


def parse_machine(src: Source) -> A.Machine:
    return _run(src, "machine")


def parse_spec(src: Source) -> A.Spec:
    return _run(src, "spec")


def parse_program(src: Source) -> A.Program:
    return _run(src, "program")


def parse_mapping(src: Source) -> list[A.Module]:
    return _run(src, "mapping")


def parse_alewife(src: Source) -> A.AleSpec:
    return _run(src, "alewife", ale=True)


def parse_type(src: Source, ale: bool = False) -> A.Type:
    return _run(src, "type_", ale)


def parse_expr(src: Source, ale: bool = False) -> A.Expr:
    return _run(src, "expr", ale)


def parse_stmt(src: Source) -> A.Stmt:
    return _run(src, "stmt")


def parse_decl(src: Source, ale: bool = False) -> A.Decl:
    return _run(src, "decl", ale)
