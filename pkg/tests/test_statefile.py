import random

import pytest
from hypothesis import given, strategies as st

from cassiopea.bitvec import BitVec
from cassiopea.errors import StateError
from cassiopea.interp import eval_machine, reg_by_name, state_layout, validate_state
from cassiopea.parser import parse_machine
from cassiopea.statefile import dump_state, load_state
from cassiopea.typecheck import type_machine
from cassiopea.values import Ptr

MACHINE = parse_machine("""
letstate a: 8 bit loc;;
letstate b: 3 bit loc;;
letstate buf: 16 bit 2 len 8 ref;;
""")
ENVS = type_machine(MACHINE)
ENV = eval_machine(MACHINE)
LAYOUT = state_layout(ENVS, ENV)
A_REG, B_REG = reg_by_name(ENV, "a"), reg_by_name(ENV, "b")


def test_unlisted_entries_are_zero():
    st_ = load_state("reg b = 0b101\n", LAYOUT, ENV)
    assert st_.regs[A_REG] == BitVec(8, 0)
    assert st_.regs[B_REG] == BitVec(3, 5)
    assert st_.mem[("buf", 2)] == (BitVec(16, 0), 16)
    validate_state(ENVS, ENV, st_)


def test_dump_format():
    st_ = load_state("reg a = [buf, 2]\nmem buf[0] = 0xbeef  // comment\n", LAYOUT, ENV)
    assert dump_state(LAYOUT, st_) == (
        "reg a = [buf, 2]\nreg b = 0b000\nmem buf[0] = 0xbeef\nmem buf[2] = 0x0000\n")
    assert st_.regs[A_REG] == Ptr("buf", 2, 8)


def test_verdict_header_is_ignored():
    text = "FAIL PostFalse at state:\n# postcondition is false\nreg a = 0x01\n"
    assert load_state(text, LAYOUT, ENV).regs[A_REG] == BitVec(8, 1)


@pytest.mark.parametrize("text,code", [
    ("reg zz = 0x00", "UnknownRegister"),
    ("reg a = 0b1", "WrongWidth"),
    ("mem buf[1] = 0x0000", "ExtraCell"),
    ("mem buf[0] = 0x00", "WrongWidth"),
    ("reg a = 12", "BadStateFile"),
    ("reg a = [nope, 0]", "BadStateFile"),
    ("what is this", "BadStateFile"),
])
def test_bad_state_files(text, code):
    with pytest.raises(StateError) as info:
        load_state(text, LAYOUT, ENV)
    assert info.value.code == code


@given(st.integers(0, 2**32 - 1))
def test_dump_load_roundtrip(seed):
    rng = random.Random(seed)
    st_ = load_state("", LAYOUT, ENV)
    st_ = st_.with_reg(A_REG, BitVec(8, rng.randrange(256)) if rng.random() < 0.7
                       else Ptr("buf", rng.choice([0, 2]), 8))
    st_ = st_.with_reg(B_REG, BitVec(3, rng.randrange(8)))
    for off in (0, 2):
        st_ = st_.with_cell(("buf", off), BitVec(16, rng.randrange(1 << 16)), 16)
    assert load_state(dump_state(LAYOUT, st_), LAYOUT, ENV) == st_
