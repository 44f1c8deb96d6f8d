"""Runtime behaviour of the builtin functions.

Every misuse (wrong arity, wrong argument kind) yields ``FAIL`` rather than
raising, so evaluation never gets stuck.
"""

from __future__ import annotations

import re

from .bitvec import BitVec
from .values import FAIL, Ptr, RegionInfo, RegSetValue


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _hex(v):
    if _is_int(v):
        return ("-" if v < 0 else "") + "0x" + format(abs(v), "x")
    if isinstance(v, BitVec):
        return "0x" + format(v.value, "0{}x".format((v.width + 3) // 4))
    return FAIL


def _bin(v):
    if _is_int(v):
        return ("-" if v < 0 else "") + "0b" + format(abs(v), "b")
    if isinstance(v, BitVec):
        return "0b" + format(v.value, "0{}b".format(v.width))
    return FAIL


def _dec(v):
    if _is_int(v):
        return str(v)
    if isinstance(v, BitVec):
        return str(v.value)
    return FAIL


_PLACEHOLDER = re.compile(r"\$(\$|\d+)")


def format_text(fmt: str, args: list[str]):
    """Replace ``$N`` with the N-th (1-based) argument and ``$$`` with ``$``."""
    missing = []

    def sub(m):
        key = m.group(1)
        if key == "$":
            return "$"
        idx = int(key)
        if not 1 <= idx <= len(args):
            missing.append(idx)
            return ""
        return args[idx - 1]

    out = _PLACEHOLDER.sub(sub, fmt)
    return FAIL if missing else out


def call_builtin(name: str, args: list, env=None):
    if any(a is FAIL for a in args):
        return FAIL
    n = len(args)
    if name == "empty":
        if n == 1 and _is_int(args[0]) and args[0] > 0:
            return RegSetValue(frozenset(), args[0])
        return FAIL
    if name in ("hex", "bin", "dec"):
        if n != 1:
            return FAIL
        return {"hex": _hex, "bin": _bin, "dec": _dec}[name](args[0])
    if name == "lbl":
        if n != 1 or not isinstance(args[0], Ptr) or args[0].offset != 0 or env is None:
            return FAIL
        region = env.get(args[0].region)
        if isinstance(region, RegionInfo) and region.label:
            return region.label
        return FAIL
    if name == "format":
        if n < 1 or not all(isinstance(a, str) for a in args):
            return FAIL
        return format_text(args[0], list(args[1:]))
    if name == "bv_to_len":
        if n == 2 and _is_int(args[0]) and args[0] > 0 and isinstance(args[1], BitVec):
            return args[1].resize(args[0])
        return FAIL
    if name == "bv_to_uint":
        if n == 1 and isinstance(args[0], BitVec):
            return args[0].to_uint()
        return FAIL
    if name == "uint_to_bv_l":
        if n == 2 and _is_int(args[0]) and args[0] > 0 and _is_int(args[1]) and args[1] >= 0:
            return BitVec.wrap(args[0], args[1])
        return FAIL
    if name == "isptr":
        if n == 1 and isinstance(args[0], Ptr):
            return True
        if n == 1 and isinstance(args[0], BitVec):
            return False
        return FAIL
    return FAIL
