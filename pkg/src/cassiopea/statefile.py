"""Text format for machine states.

One entry per line::

    reg r1 = 0b01
    mem stack[4] = 0x00ff
    reg sp = [stack, 8]

Registers and cells that are not listed are zero. Values are bitvector
literals or pointer forms, read with the same lexer as source files. A leading
``PASS``/``FAIL`` verdict line is skipped, so a verifier counterexample can be
fed back in unchanged.
"""

from __future__ import annotations

import re

from . import ast as A
from .bitvec import BitVec
from .errors import StateError
from .interp import StateLayout, zero_state
from .parser import parse_expr
from .values import Env, MachineState, Ptr, RegionInfo

_REG_LINE = re.compile(r"^reg\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$")
_MEM_LINE = re.compile(r"^mem\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(-?\d+)\s*\]\s*=\s*(.+)$")

_VERDICT_LINE = re.compile(r"^(PASS|FAIL)\b")


def format_value(v) -> str:
    if isinstance(v, BitVec):
        return v.literal()
    if isinstance(v, Ptr):
        return f"[{v.region}, {v.offset}]"
    return repr(v)


def dump_state(layout: StateLayout, state: MachineState) -> str:
    lines = []
    for r in layout.regs:
        lines.append(f"reg {r.name} = {format_value(state.regs.get(r))}")
    for (region, off), _w in layout.cells:
        cell = state.mem.get((region, off))
        lines.append(f"mem {region}[{off}] = {format_value(cell[0] if cell else None)}")
    return "\n".join(lines) + ("\n" if lines else "")


def _literal(text: str, env: Env, lineno: int):
    try:
        e = parse_expr(text.strip())
    except Exception as exc:  # the parser's own diagnostics are too noisy here
        raise StateError(f"line {lineno}: bad value {text.strip()!r}: {exc}",
                         "BadStateFile") from None
    if isinstance(e, A.BVLit):
        return e.value
    if isinstance(e, A.PtrForm) and isinstance(e.offset, A.IntLit):
        region = env.get(e.region)
        if not isinstance(region, RegionInfo):
            raise StateError(f"line {lineno}: unknown region {e.region!r}", "BadStateFile")
        return Ptr(e.region, e.offset.value, region.ptr_width)
    raise StateError(f"line {lineno}: expected a bitvector literal or pointer",
                     "BadStateFile")


def load_state(text: str, layout: StateLayout, env: Env) -> MachineState:
    """Parse a state file on top of the all-zero state for ``layout``."""
    state = zero_state(layout)
    regs_by_name = {r.name: r for r in layout.regs}
    cell_widths = dict(layout.cells)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("//")[0].split("#")[0].strip()
        if not line or _VERDICT_LINE.match(line):
            continue
        m = _REG_LINE.match(line)
        if m:
            name, value = m.group(1), _literal(m.group(2), env, lineno)
            if name not in regs_by_name:
                raise StateError(f"line {lineno}: unknown register {name!r}",
                                 "UnknownRegister")
            reg = regs_by_name[name]
            if value.width != reg.width:
                raise StateError(f"line {lineno}: {name} is {reg.width} bits wide",
                                 "WrongWidth")
            state = state.with_reg(reg, value)
            continue
        m = _MEM_LINE.match(line)
        if m:
            key = (m.group(1), int(m.group(2)))
            value = _literal(m.group(3), env, lineno)
            if key not in cell_widths:
                raise StateError(f"line {lineno}: no memory cell {key[0]}[{key[1]}]",
                                 "ExtraCell")
            if value.width != cell_widths[key]:
                raise StateError(f"line {lineno}: cell is {cell_widths[key]} bits wide",
                                 "WrongWidth")
            state = state.with_cell(key, value, cell_widths[key])
            continue
        raise StateError(f"line {lineno}: cannot parse {raw.strip()!r}", "BadStateFile")
    return state
