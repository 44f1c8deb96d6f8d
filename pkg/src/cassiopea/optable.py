"""Operator tables shared by the parser and the pretty printer."""

# binary operators, lowest precedence first; all left-associative
BINARY_LEVELS = [
    ("||",),
    ("^^",),
    ("&&",),
    ("bor",),
    ("bxor",),
    ("band",),
    ("==", "!="),
    ("<", "<=", ">", ">=", "b<", "b<=", "b>", "b>=",
     "bs<", "bs<=", "bs>", "bs>=", "member", "subset"),
    ("<<", ">>", ">>>"),
    ("+", "-", "b+", "b-", "union", "setminus"),
    ("*", "/", "b*", "b/", "intersect"),
]

BINARY_PREC = {op: i + 1 for i, ops in enumerate(BINARY_LEVELS) for op in ops}

PREFIX_PREC = len(BINARY_LEVELS) + 1     # - ! b- bnot *
POSTFIX_PREC = PREFIX_PREC + 1           # e[i]  e[lo:hi]  e.txt
ATOM_PREC = POSTFIX_PREC + 1
LOWEST_PREC = 0                          # let-in, if-then-else, quantifiers

UNARY_OPS = ("-", "!", "b-", "bnot")
