"""Tokenizer shared by all front ends.

``include "path"`` directives are resolved here, at token level: the tokens
of the included file are spliced in place of the directive. Paths resolve
relative to the including file, each file is inlined at most once, and an
include cycle is an error.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Optional

from .errors import ParseError, Pos

KEYWORDS = frozenset("""
    let in if then else for true false fail skip crash assert type def proc
    letstate control with defop txt sem module include pre post
    bit loc reg set label len ref int bool string unit
    band bor bxor bnot union intersect subset setminus member
    require provide value func region block forall exists vec ptr
    reg-modify mem-modify
""".split())

# longest alternatives first
SYMBOLS = [
    ">>>",
    "bs<=", "bs>=", "bs<", "bs>", "b<=", "b>=", "b<", "b>", "b+", "b-", "b*", "b/",
    ";;", "==", "!=", "<=", ">=", "<<", ">>", "&&", "||", "^^", "<-", "->", "..",
    "+", "-", "*", "/", "<", ">", "!", "|", "(", ")", "[", "]", "{", "}",
    ",", ";", ":", ".", "=",
]

TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*|\#[^\n]*)
  | (?P<block>/\*.*?(?:\*/|\Z))
  | (?P<bvlit>0[bB][01]+|0[xX][0-9a-fA-F]+)
  | (?P<int>[0-9]+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<bvop>bs?(?:<=|>=|<|>)|b[-+*/])
  | (?P<word>(?:reg-modify|mem-modify)|[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>""" + "|".join(re.escape(s) for s in SYMBOLS) + r""")
""", re.VERBOSE | re.DOTALL)

_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", '"': '"'}


@dataclass(frozen=True)
class Token:
    kind: str  # INT, BV, STR, IDENT, KW, SYM, EOF
    text: str
    pos: Pos

    def is_(self, kind: str, text: Optional[str] = None) -> bool:
        return self.kind == kind and (text is None or self.text == text)


def unescape(body: str) -> str:
    out, i = [], 0
    while i < len(body):
        c = body[i]
        if c == "\\" and i + 1 < len(body):
            out.append(_ESCAPES.get(body[i + 1], body[i + 1]))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def escape(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace(
        "\n", "\\n").replace("\t", "\\t") + '"'


def tokenize(text: str, filename: str = "<input>") -> list[Token]:
    """Tokens of ``text`` with no include processing, ending in EOF."""
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", "LexError",
                             Pos(filename, line, i - line_start + 1))
        kind = m.lastgroup
        pos = Pos(filename, line, i - line_start + 1)
        chunk = m.group()
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "block":
            if not chunk.endswith("*/") or len(chunk) < 4:
                raise ParseError("unterminated comment", "LexError", pos)
            nls = chunk.count("\n")
            if nls:
                line += nls
                line_start = i + chunk.rfind("\n") + 1
        elif kind in ("ws", "comment"):
            pass
        elif kind == "bvlit":
            tokens.append(Token("BV", chunk, pos))
        elif kind == "int":
            tokens.append(Token("INT", chunk, pos))
        elif kind == "string":
            tokens.append(Token("STR", unescape(chunk[1:-1]), pos))
        elif kind == "bvop":
            tokens.append(Token("SYM", chunk, pos))
        elif kind == "word":
            tokens.append(Token("KW" if chunk in KEYWORDS else "IDENT", chunk, pos))
        else:
            tokens.append(Token("SYM", chunk, pos))
        i = m.end()
    tokens.append(Token("EOF", "", Pos(filename, line, i - line_start + 1)))
    return tokens


def tokenize_file(path: str, _active: Optional[list] = None,
                  _seen: Optional[set] = None) -> list[Token]:
    """Tokens of the file at ``path`` with includes spliced in."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return tokenize_with_includes(text, path, _active, _seen)


def tokenize_with_includes(text: str, path: str = "<input>",
                           _active: Optional[list] = None,
                           _seen: Optional[set] = None) -> list[Token]:
    real = os.path.realpath(path) if path != "<input>" else path
    active = (_active or []) + [real]
    seen = _seen if _seen is not None else {real}
    raw = tokenize(text, path)
    out: list[Token] = []
    i = 0
    while i < len(raw):
        tok = raw[i]
        if tok.is_("KW", "include"):
            target = raw[i + 1] if i + 1 < len(raw) else None
            if target is None or target.kind != "STR":
                raise ParseError("include expects a quoted path", pos=tok.pos)
            base = os.path.dirname(path) if path != "<input>" else os.getcwd()
            inc = os.path.realpath(os.path.join(base, target.text))
            if inc in active:
                chain = " -> ".join(active + [inc])
                raise ParseError(f"include cycle: {chain}", "IncludeCycle", tok.pos)
            if inc not in seen:
                seen.add(inc)
                if not os.path.exists(inc):
                    raise ParseError(f"cannot find included file {target.text!r}",
                                     "IncludeNotFound", tok.pos)
                out.extend(tokenize_file(inc, active, seen)[:-1])
            i += 2
            continue
        out.append(tok)
        i += 1
    return out
