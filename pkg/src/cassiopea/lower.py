"""Translating an Alewife spec into a Cassiopea spec for one machine.

The mapping module whose name matches the Alewife block supplies the
machine-specific declarations. Mapping declarations, lowered Alewife
declarations and block-lets are lifted into one list and sorted so that every
identifier is defined before it is used. They are then processed in that
order, threading the typing environments and the integer constants (Σ) that
symbolic widths resolve against. Each emitted declaration is typechecked as it
is produced, and the finished spec is typechecked against the machine.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field, replace
from typing import Optional

from . import ast as A
from .errors import CaspError, LowerError
from .typecheck import (BuiltinT, TypeEnvs, compatible, resolve, show, type_decl,
                        type_frame, type_machine, type_spec)


# ---------------------------------------------------------------- Σ

def extract_constants(decls, sigma: Optional[dict] = None) -> dict:
    """Integer constants: exactly the ``let x : int = C`` declarations with literal C."""
    out = dict(sigma or {})
    for d in decls:
        if isinstance(d, A.LetDecl) and isinstance(d.type, A.IntT) \
                and isinstance(d.value, A.IntLit):
            out[d.name] = d.value.value
    return out


@dataclass
class LowerContext:
    envs: TypeEnvs
    sigma: dict
    # names bound to register-set literals, usable as quantifier domains
    set_literals: dict = field(default_factory=dict)
    allow_quantifiers: bool = True


def _origin(kind: str, d) -> str:
    name = getattr(d, "name", "")
    where = f" at {d.pos}" if getattr(d, "pos", None) else ""
    return f"{kind} {name!r}{where}"


# ---------------------------------------------------------------- types

def lower_width(ctx: LowerContext, n: A.Width, node=None) -> int:
    if isinstance(n, int):
        return n
    if n in ctx.sigma:
        return ctx.sigma[n]
    raise LowerError(f"symbolic constant {n!r} has no integer value",
                     "UnresolvedSymbol", getattr(node, "pos", None))


def lower_type(ctx: LowerContext, t: A.Type) -> A.Type:
    w = lambda n: lower_width(ctx, n, t)  # noqa: E731
    if isinstance(t, (A.IntT, A.BoolT, A.UnitT, A.StringT)):
        return type(t)()
    if isinstance(t, A.AliasT):
        if t.name not in ctx.envs.gamma:
            raise LowerError(f"unknown type {t.name!r}", "UnknownTypeAlias", t.pos)
        return A.AliasT(t.name)
    if isinstance(t, (A.VecT, A.PtrT, A.BVT)):
        return A.BVT(w(t.width))
    if isinstance(t, A.LocT):
        return A.LocT(w(t.width))
    if isinstance(t, A.LabelT):
        return A.LabelT(w(t.width))
    if isinstance(t, A.RegSetT):
        return A.RegSetT(w(t.width))
    if isinstance(t, A.MemT):
        return A.MemT(w(t.cell_width), w(t.length), w(t.ptr_width))
    if isinstance(t, A.FuncT):
        return A.FuncT(tuple(lower_type(ctx, p) for p in t.params), lower_type(ctx, t.result))
    raise LowerError(f"cannot lower type {t!r}", "UnknownTypeAlias", t.pos)


# ---------------------------------------------------------------- expressions

def _check_name(ctx: LowerContext, name: str, bound: frozenset, node) -> None:
    if name not in bound and name not in ctx.envs.delta:
        raise LowerError(f"{name!r} is not bound", "UnboundName", getattr(node, "pos", None))


def substitute(e, var: str, name: str):
    """Replace free occurrences of variable ``var`` by ``name``."""
    if isinstance(e, A.Var):
        return A.Var(name) if e.name == var else e
    if isinstance(e, A.RegSetLit):
        return A.RegSetLit(tuple(name if n == var else n for n in e.names))
    if isinstance(e, A.LetE) and e.name == var:
        return replace(e, value=substitute(e.value, var, name))
    if isinstance(e, (A.Forall, A.Exists)) and e.var == var:
        return replace(e, domain=substitute(e.domain, var, name))
    if not isinstance(e, A.Node):
        return e
    changes = {}
    for fname in e.__dataclass_fields__:
        if fname == "pos":
            continue
        v = getattr(e, fname)
        if isinstance(v, tuple):
            changes[fname] = tuple(substitute(x, var, name) for x in v)
        elif isinstance(v, A.Expr):
            changes[fname] = substitute(v, var, name)
    return replace(e, **changes)


def _domain_names(ctx: LowerContext, dom: A.Expr) -> tuple:
    if isinstance(dom, A.RegSetLit):
        return dom.names
    if isinstance(dom, A.Var) and dom.name in ctx.set_literals:
        return ctx.set_literals[dom.name]
    if isinstance(dom, A.App) and dom.func == "empty":
        return ()
    raise LowerError("quantifier domain must be a register-set literal or a name bound "
                     "to one", "QuantifierOverNonLiteralSet", dom.pos)


def lower_expr(ctx: LowerContext, e: A.Expr, bound: frozenset = frozenset()) -> A.Expr:
    rec = lambda x: lower_expr(ctx, x, bound)  # noqa: E731
    if isinstance(e, (A.IntLit, A.BoolLit, A.StrLit, A.BVLit, A.FailLit)):
        return replace(e, pos=None)
    if isinstance(e, A.Var):
        _check_name(ctx, e.name, bound, e)
        return A.Var(e.name)
    if isinstance(e, A.Txt):
        return A.Txt(rec(e.target))
    if isinstance(e, A.App):
        if e.func not in ctx.envs.delta:
            raise LowerError(f"function {e.func!r} is not bound", "UnboundName", e.pos)
        return A.App(e.func, tuple(rec(a) for a in e.args))
    if isinstance(e, A.Unop):
        return A.Unop(e.op, rec(e.operand))
    if isinstance(e, A.Binop):
        return A.Binop(e.op, rec(e.left), rec(e.right))
    if isinstance(e, A.BitIndex):
        return A.BitIndex(rec(e.target), e.index)
    if isinstance(e, A.Slice):
        return A.Slice(rec(e.target), e.lo, e.hi)
    if isinstance(e, A.LetE):
        return A.LetE(e.name, lower_type(ctx, e.type), rec(e.value),
                      lower_expr(ctx, e.body, bound | {e.name}))
    if isinstance(e, A.IfE):
        return A.IfE(rec(e.cond), rec(e.then), rec(e.els))
    if isinstance(e, A.PtrForm):
        _check_name(ctx, e.region, frozenset(), e)
        return A.PtrForm(e.region, rec(e.offset))
    if isinstance(e, A.Deref):
        return A.Deref(rec(e.target))
    if isinstance(e, A.Fetch):
        return A.Fetch(rec(e.addr), lower_width(ctx, e.width, e))
    if isinstance(e, A.RegSetLit):
        for n in e.names:
            _check_name(ctx, n, bound, e)
        return A.RegSetLit(e.names)
    if isinstance(e, A.SetSize):
        return A.SetSize(rec(e.target))
    if isinstance(e, A.Member):
        return A.Member(rec(e.elem), rec(e.set))
    if isinstance(e, (A.Forall, A.Exists)):
        if not ctx.allow_quantifiers:
            raise LowerError("quantifiers are disabled", "QuantifiersDisabled", e.pos)
        names = _domain_names(ctx, e.domain)
        is_all = isinstance(e, A.Forall)
        if not names:
            return A.BoolLit(is_all)
        parts = [lower_expr(ctx, substitute(e.body, e.var, n), bound) for n in names]
        out = parts[0]
        for p in parts[1:]:
            out = A.Binop("&&" if is_all else "||", out, p)
        return out
    raise LowerError(f"cannot lower {type(e).__name__}", "LoweringError", e.pos)


# ---------------------------------------------------------------- declarations

def _same_type(ctx: LowerContext, want: A.Type, have: A.Type) -> bool:
    try:
        want, have = resolve(ctx.envs.gamma, want), resolve(ctx.envs.gamma, have)
    except CaspError:
        return False
    return compatible(want, have)


def lower_decl(ctx: LowerContext, d: A.Decl) -> list[A.Decl]:
    """Cassiopea declarations for one Alewife declaration (empty for requires)."""
    if isinstance(d, A.RequireType):
        if d.name not in ctx.envs.gamma:
            raise LowerError(f"required type {d.name!r} is not provided", "RequireUnmet",
                             d.pos)
        return []
    if isinstance(d, (A.RequireValue, A.RequireFunc)):
        have = ctx.envs.delta.get(d.name)
        if have is None or isinstance(have, BuiltinT):
            raise LowerError(f"required {'value' if isinstance(d, A.RequireValue) else 'function'}"
                             f" {d.name!r} is not provided", "RequireUnmet", d.pos)
        want = lower_type(ctx, d.type)
        if not _same_type(ctx, want, have):
            raise LowerError(f"{d.name!r} is required at {show(want)} but provided at "
                             f"{show(have)}", "TypeMismatch", d.pos)
        return []
    if isinstance(d, A.ProvideType):
        return [A.TypeDecl(d.name, lower_type(ctx, d.type))]
    if isinstance(d, A.ProvideValue):
        return [A.LetDecl(d.name, lower_type(ctx, d.type), lower_expr(ctx, d.value))]
    if isinstance(d, A.ProvideFunc):
        params = tuple(A.Param(p.name, lower_type(ctx, p.type)) for p in d.params)
        bound = frozenset(p.name for p in d.params)
        return [A.DefDecl(d.name, params, lower_type(ctx, d.result),
                          lower_expr(ctx, d.body, bound))]
    if isinstance(d, A.Region):
        return [A.MemDecl(d.name, lower_type(ctx, d.type), d.label)]
    raise LowerError(f"cannot lower {type(d).__name__}", "LoweringError", d.pos)


def lower_blocklet(ctx: LowerContext, bl: A.LetDecl) -> A.LetDecl:
    return A.LetDecl(bl.name, lower_type(ctx, bl.type), lower_expr(ctx, bl.value))


# ---------------------------------------------------------------- ordering

@dataclass
class Item:
    """One declaration lifted for ordering."""

    kind: str            # "mapping", "alewife" or "block-let"
    decl: A.Decl
    defines: tuple
    refs: tuple
    index: int = 0

    @property
    def origin(self) -> str:
        return _origin(f"{self.kind} declaration", self.decl)


def _type_refs(t, out: list) -> None:
    if isinstance(t, A.AliasT):
        out.append(t.name)
    elif isinstance(t, A.MemT):
        out.extend(w for w in (t.cell_width, t.length, t.ptr_width) if isinstance(w, str))
    elif isinstance(t, A.FuncT):
        for p in t.params:
            _type_refs(p, out)
        _type_refs(t.result, out)
    elif isinstance(t, A.ProcT):
        for p in t.params:
            _type_refs(p, out)
    elif isinstance(t, A.Type) and isinstance(getattr(t, "width", None), str):
        out.append(t.width)


def _expr_refs(e, bound: frozenset, out: list) -> None:
    if isinstance(e, A.Var):
        if e.name not in bound:
            out.append(e.name)
        return
    if isinstance(e, A.App):
        out.append(e.func)
    if isinstance(e, A.PtrForm):
        out.append(e.region)
    if isinstance(e, A.Fetch) and isinstance(e.width, str):
        out.append(e.width)
    if isinstance(e, A.RegSetLit):
        out.extend(n for n in e.names if n not in bound)
        return
    if isinstance(e, A.LetE):
        _type_refs(e.type, out)
        _expr_refs(e.value, bound, out)
        _expr_refs(e.body, bound | {e.name}, out)
        return
    if isinstance(e, (A.Forall, A.Exists)):
        _expr_refs(e.domain, bound, out)
        _expr_refs(e.body, bound | {e.var}, out)
        return
    if isinstance(e, A.Stmt):
        _stmt_refs(e, bound, out)
        return
    if isinstance(e, A.Node):
        for fname in e.__dataclass_fields__:
            if fname == "pos":
                continue
            v = getattr(e, fname)
            for child in (v if isinstance(v, tuple) else (v,)):
                if isinstance(child, A.Expr):
                    _expr_refs(child, bound, out)


def _stmt_refs(s, bound: frozenset, out: list) -> None:
    if isinstance(s, A.LetS):
        _type_refs(s.type, out)
        _expr_refs(s.value, bound, out)
        _stmt_refs(s.body, bound | {s.name}, out)
        return
    if isinstance(s, A.For):
        _stmt_refs(s.body, bound | {s.var}, out)
        return
    if isinstance(s, A.Call):
        out.append(s.proc)
    for fname in s.__dataclass_fields__:
        if fname == "pos":
            continue
        v = getattr(s, fname)
        for child in (v if isinstance(v, tuple) else (v,)):
            if isinstance(child, A.Stmt):
                _stmt_refs(child, bound, out)
            elif isinstance(child, A.Expr):
                _expr_refs(child, bound, out)


def decl_names(d: A.Decl) -> tuple[tuple, tuple]:
    """(names defined, names referenced) by a declaration of either language."""
    refs: list = []
    if isinstance(d, (A.TypeDecl, A.ProvideType)):
        _type_refs(d.type, refs)
        return (d.name,), tuple(refs)
    if isinstance(d, (A.LetDecl, A.ProvideValue)):
        _type_refs(d.type, refs)
        _expr_refs(d.value, frozenset(), refs)
        return (d.name,), tuple(refs)
    if isinstance(d, A.TxtDecl):
        _expr_refs(d.value, frozenset(), refs)
        return (), (d.name,) + tuple(refs)
    if isinstance(d, (A.DefDecl, A.ProvideFunc, A.ProcDecl)):
        for p in d.params:
            _type_refs(p.type, refs)
        bound = frozenset(p.name for p in d.params)
        if isinstance(d, A.ProcDecl):
            _stmt_refs(d.body, bound, refs)
        else:
            _type_refs(d.result, refs)
            _expr_refs(d.body, bound, refs)
        return (d.name,), tuple(refs)
    if isinstance(d, (A.MemDecl, A.Region)):
        _type_refs(d.type, refs)
        return (d.name,) + ((d.label,) if d.label else ()), tuple(refs)
    if isinstance(d, A.RegDecl):
        _type_refs(d.type, refs)
        return (d.name,), tuple(refs)
    if isinstance(d, (A.RequireType,)):
        return (), (d.name,)
    if isinstance(d, (A.RequireValue, A.RequireFunc)):
        _type_refs(d.type, refs)
        return (), (d.name,) + tuple(refs)
    raise LowerError(f"cannot order {type(d).__name__}", "LoweringError", d.pos)


def order_decls(items: list[Item]) -> list[Item]:
    """Stable topological order: definitions first, ties broken by input position."""
    for i, it in enumerate(items):
        it.index = i
    definer: dict = {}
    for it in items:
        for name in it.defines:
            if name in definer:
                raise LowerError(f"{name!r} is declared twice ({definer[name].origin} and "
                                 f"{it.origin})", "DuplicateBinding", it.decl.pos)
            definer[name] = it
    deps = {it.index: set() for it in items}
    users: dict = {it.index: set() for it in items}
    for it in items:
        for ref in it.refs:
            target = definer.get(ref)
            if target is None:
                continue
            deps[it.index].add(target.index)
            users[target.index].add(it.index)
    ready = [i for i, d in deps.items() if not d]
    heapq.heapify(ready)
    remaining = {i: set(d) for i, d in deps.items()}
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(items[i])
        for u in sorted(users[i]):
            remaining[u].discard(i)
            if not remaining[u] and u not in (x.index for x in order) and u not in ready:
                heapq.heappush(ready, u)
    if len(order) != len(items):
        cycle = _find_cycle(items, deps, {x.index for x in order})
        names = " -> ".join(items[i].defines[0] if items[i].defines else items[i].refs[0]
                            for i in cycle)
        raise LowerError(f"circular reference: {names}", "CircularReference",
                         items[cycle[0]].decl.pos)
    return order


def _find_cycle(items, deps, done: set) -> list[int]:
    stack_pos: dict = {}
    path: list = []

    def dfs(i):
        stack_pos[i] = len(path)
        path.append(i)
        for j in sorted(deps[i]):
            if j in done:
                continue
            if j in stack_pos:
                return path[stack_pos[j]:] + [j]
            found = dfs(j)
            if found:
                return found
        path.pop()
        del stack_pos[i]
        return None

    for it in items:
        if it.index not in done:
            found = dfs(it.index)
            if found:
                return found
    return [next(it.index for it in items if it.index not in done)]


# ---------------------------------------------------------------- whole specs

def _set_literal_names(decls, out: dict) -> None:
    for d in decls:
        if isinstance(d, (A.LetDecl, A.ProvideValue)) and isinstance(d.value, A.RegSetLit):
            out[d.name] = d.value.names


def lower_spec(machine: A.Machine, modules: list[A.Module], ale: A.AleSpec,
               allow_quantifiers: bool = True, trace: Optional[list] = None,
               machine_envs: Optional[TypeEnvs] = None) -> A.Spec:
    """Lower ``ale`` using the mapping module named after its block.

    ``trace``, when given, receives one line per emitted declaration listing
    its dependencies, in processing order.
    """
    block = ale.block
    module = next((m for m in modules if m.name == block.name), None)
    if module is None:
        raise LowerError(f"no mapping module named {block.name!r}", "NoSuchModule",
                         block.pos)
    envs = machine_envs if machine_envs is not None else type_machine(machine)
    set_lits: dict = {}
    _set_literal_names(machine.decls, set_lits)
    ctx = LowerContext(envs, extract_constants(machine.decls), set_lits, allow_quantifiers)

    items = [Item("mapping", d, *decl_names(d)) for d in module.decls]
    items += [Item("alewife", d, *decl_names(d)) for d in ale.decls]
    items += [Item("block-let", d, *decl_names(d)) for d in block.lets]
    _check_requires(items, envs)
    ordered = order_decls(items)

    out: list[A.Decl] = []
    for it in ordered:
        try:
            emitted = _process(ctx, it)
        except LowerError as exc:
            if exc.origin:
                raise
            raise LowerError(exc.message, exc.code, exc.pos, origin=it.origin) from None
        except CaspError as exc:
            raise LowerError(exc.message, exc.code, exc.pos, origin=it.origin) from None
        out.extend(emitted)
        if trace is not None:
            defs = ", ".join(it.defines) or f"(require {it.refs[0]})"
            deps = sorted({r for r in it.refs if any(r in o.defines for o in ordered
                                                    if o is not it)})
            trace.append(f"{it.kind} {defs} <- {', '.join(deps) if deps else '-'}")

    try:
        frame = _lower_frame(ctx, block.frame).union(replace(module.frame, pos=None))
        pre = lower_expr(ctx, block.pre)
        post = lower_expr(ctx, block.post)
    except LowerError as exc:
        raise LowerError(exc.message, exc.code, exc.pos,
                         origin=f"block {block.name!r}") from None
    spec = A.Spec(tuple(out), frame, pre, post)
    try:
        type_spec(machine, spec, machine_envs=envs)
    except CaspError as exc:
        raise LowerError(exc.message, exc.code, exc.pos,
                         origin=f"lowered spec for block {block.name!r}") from None
    return spec


def _check_requires(items: list[Item], envs: TypeEnvs) -> None:
    defined = {n for it in items for n in it.defines}
    for it in items:
        d = it.decl
        if isinstance(d, (A.RequireType, A.RequireValue, A.RequireFunc)):
            known = d.name in defined or d.name in envs.gamma or (
                d.name in envs.delta and not isinstance(envs.delta[d.name], BuiltinT))
            if not known:
                raise LowerError(f"required name {d.name!r} is not provided by the "
                                 "machine or the mapping", "RequireUnmet", d.pos,
                                 origin=it.origin)


def _process(ctx: LowerContext, it: Item) -> list[A.Decl]:
    if it.kind == "mapping":
        emitted = [it.decl]
    elif it.kind == "alewife":
        emitted = lower_decl(ctx, it.decl)
    else:
        emitted = [lower_blocklet(ctx, it.decl)]
    for d in emitted:
        if isinstance(d, (A.RegDecl, A.Defop)):
            raise LowerError(f"{d.name!r}: machine state and operations cannot be "
                             "declared in a spec", "StateDeclInSpec", d.pos)
        ctx.envs = type_decl(ctx.envs, d, machine_mode=False, allow_state=False)
    if it.kind != "block-let":
        ctx.sigma = extract_constants(emitted, ctx.sigma)
        _set_literal_names(emitted, ctx.set_literals)
    return emitted


def _lower_frame(ctx: LowerContext, frame: A.Frame) -> A.Frame:
    for name in frame.regs:
        _check_name(ctx, name, frozenset(), frame)
    mems = tuple(lower_expr(ctx, m) for m in frame.mems)
    out = A.Frame(frame.regs, mems)
    type_frame(ctx.envs, out)
    return out
