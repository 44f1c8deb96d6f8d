"""Runtime values, the execution environment and the machine state."""

from __future__ import annotations

from collections import ChainMap
from dataclasses import dataclass, field
from typing import Any, Optional

from .bitvec import BitVec


@dataclass(frozen=True)
class UnitValue:
    def __repr__(self) -> str:
        return "UNIT"


@dataclass(frozen=True)
class FailValue:
    def __repr__(self) -> str:
        return "FAIL"


UNIT = UnitValue()
FAIL = FailValue()


@dataclass(frozen=True)
class Reg:
    """An opaque register identity. Equality is by ``ident`` alone."""

    ident: int
    name: str = field(compare=False)
    width: int = field(compare=False)

    def __repr__(self) -> str:
        return f"Reg({self.name}#{self.ident})"


@dataclass(frozen=True)
class Ptr:
    """A pointer: memory region name plus a byte offset, ``width`` bits wide."""

    region: str
    offset: int
    width: int


@dataclass(frozen=True)
class RegSetValue:
    regs: frozenset
    width: int


@dataclass(frozen=True)
class FuncClosure:
    params: tuple
    body: Any


@dataclass(frozen=True)
class ProcClosure:
    params: tuple
    body: Any


@dataclass(frozen=True)
class OpDef:
    params: tuple
    txt: Any
    sem: Any


@dataclass(frozen=True)
class RegionInfo:
    """Shape of a declared memory region; needed to build pointers at runtime."""

    name: str
    cell_width: int
    length: int
    ptr_width: int
    label: Optional[str] = None

    def offsets(self) -> list[int]:
        stride = self.cell_width // 8
        return [i * stride for i in range(self.length)]


class RebindError(Exception):
    pass


class Env:
    """The execution environment (Λ).

    Keys are variable names (``str``) or ``Reg`` identities for ``.txt``
    bindings. Binding an existing key is an error; ``scope`` opens a child
    scope for let-binders and parameter lists.
    """

    def __init__(self, maps: Optional[ChainMap] = None, reg_count: int = 0):
        self._maps = maps if maps is not None else ChainMap({})
        self.reg_count = reg_count

    def __contains__(self, key) -> bool:
        return key in self._maps

    def __getitem__(self, key):
        return self._maps[key]

    def get(self, key, default=None):
        return self._maps.get(key, default)

    def keys(self):
        return self._maps.keys()

    def items(self):
        return self._maps.items()

    def bind(self, key, value) -> None:
        if key in self._maps.maps[0]:
            raise RebindError(f"{key!r} is already bound")
        self._maps.maps[0][key] = value

    def scope(self, bindings: Optional[dict] = None) -> "Env":
        return Env(self._maps.new_child(dict(bindings or {})), self.reg_count)

    def fresh_reg(self, name: str, width: int) -> Reg:
        reg = Reg(self.reg_count, name, width)
        self.reg_count += 1
        return reg

    def copy(self) -> "Env":
        return Env(ChainMap(*[dict(m) for m in self._maps.maps]), self.reg_count)

    def regions(self) -> list[RegionInfo]:
        return [v for v in self._maps.values() if isinstance(v, RegionInfo)]

    def registers(self) -> list[Reg]:
        seen = {}
        for v in self._maps.values():
            if isinstance(v, Reg):
                seen[v.ident] = v
        return [seen[k] for k in sorted(seen)]

    def name_of(self, value) -> Optional[str]:
        """First variable name bound to ``value``, for display."""
        for k, v in self._maps.items():
            if isinstance(k, str) and v == value and type(v) is type(value):
                return k
        return None


class MachineState:
    """Register store and memory store.

    ``regs`` maps ``Reg`` to a value; ``mem`` maps ``(region, offset)`` to
    ``(value, cell_width)``. Updates return a new state and never extend
    either domain. An optional ``reads`` set records every register read.
    """

    __slots__ = ("regs", "mem", "reads")

    def __init__(self, regs: Optional[dict] = None, mem: Optional[dict] = None,
                 reads: Optional[set] = None):
        self.regs = dict(regs or {})
        self.mem = dict(mem or {})
        self.reads = reads

    def __eq__(self, other) -> bool:
        return (isinstance(other, MachineState) and self.regs == other.regs
                and self.mem == other.mem)

    def __repr__(self) -> str:
        return f"MachineState(regs={self.regs!r}, mem={self.mem!r})"

    def read_reg(self, reg: Reg):
        if self.reads is not None:
            self.reads.add(reg)
        return self.regs.get(reg)

    def with_reg(self, reg: Reg, value) -> "MachineState":
        regs = dict(self.regs)
        regs[reg] = value
        return MachineState(regs, self.mem, self.reads)

    def with_cell(self, key: tuple, value, width: int) -> "MachineState":
        mem = dict(self.mem)
        mem[key] = (value, width)
        return MachineState(self.regs, mem, self.reads)

    def traced(self) -> "MachineState":
        return MachineState(self.regs, self.mem, set())


def is_bitvector(v) -> bool:
    return isinstance(v, (BitVec, Ptr))


def value_width(v) -> Optional[int]:
    if isinstance(v, (BitVec, Ptr)):
        return v.width
    return None
