import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cassiopea import ast as A
from cassiopea.bitvec import BitVec
from cassiopea.errors import ConfigError
from cassiopea.interp import eval_expr, eval_machine, eval_program, reg_by_name, state_layout
from cassiopea.parser import parse_machine, parse_program, parse_spec
from cassiopea.typecheck import type_spec
from cassiopea.values import MachineState, Ptr
from cassiopea.verify import (VerifyConfig, augment_frame, check_frame, gen_states,
                              layout_env, state_space_size, verify)
from helpers import load_machine

TOY = load_machine("toy2")
TOY_ENV = eval_machine(TOY)
R1, R2 = reg_by_name(TOY_ENV, "r1"), reg_by_name(TOY_ENV, "r2")

ONE_REG = parse_machine("""
letstate r: 2 bit loc;;
let r.txt = "r";;
defop NOP { txt = "nop", sem = skip }
defop INC x: 2 bit loc { txt = "inc", sem = *x <- *x b+ 0b01 }
defop DIE { txt = "die", sem = assert(false) }
""")

MEM = parse_machine("""
letstate p: 8 bit loc;;
letstate q: 8 bit loc;;
defop ST v: 8 bit loc, a: 8 bit loc { txt = "st", sem = [*a]:8 <- *v }
defop NOP { txt = "nop", sem = skip }
""")


def toy_state(a: int, b: int) -> MachineState:
    return MachineState({R1: BitVec(2, a), R2: BitVec(2, b)}, {})


# ---------------------------------------------------------------- frames

def test_check_frame_examples():
    before = toy_state(1, 2)
    assert check_frame(TOY_ENV, before, before, A.Frame()) is None
    after = toy_state(3, 2)
    assert check_frame(TOY_ENV, before, after, A.Frame(("r1",))) is None
    violation = check_frame(TOY_ENV, before, after, A.Frame())
    assert violation is not None and "r1" in str(violation)


def test_augment_frame_examples():
    spec = parse_spec("pre: true post: *r1 == 0b00")
    assert augment_frame(spec).regs == ("r1",)
    spec = parse_spec("pre: true post: 1 + 1 == 2")
    assert augment_frame(spec) == A.Frame()
    spec = parse_spec("reg-modify: r2\npre: true post: [[stack, 4]]:8 == 0x00")
    frame = augment_frame(spec)
    assert frame.regs == ("r2",)
    assert frame.mems == (A.PtrForm("stack", A.IntLit(4)),)


def test_memory_frame():
    spec_text = "letstate buf: 8 bit 2 len 8 ref;;\n{frame}\npre: *q == [buf, 1]\npost: true"
    prog = parse_program("ST p q")
    cfg = VerifyConfig(exhaustive=False, samples=3000, seed_pointers=(("q", "buf"),))
    bad = verify(MEM, parse_spec(spec_text.format(frame="")), prog, cfg)
    assert not bad.passed and bad.reason == "FrameViolation"
    assert "buf[1]" in bad.detail
    good = verify(MEM, parse_spec(spec_text.format(frame="mem-modify: [buf, 1]")), prog, cfg)
    assert good.passed


# ---------------------------------------------------------------- state generation

def _layout(machine, spec_text="pre: true post: true"):
    spec = parse_spec(spec_text)
    envs = type_spec(machine, spec)
    env = layout_env(eval_machine(machine), spec)
    return state_layout(envs, env), env


def test_state_counts():
    layout, env = _layout(ONE_REG)
    assert len(list(gen_states(layout, env, VerifyConfig()))) == 4
    two = parse_machine("letstate a: 1 bit loc;; letstate b: 1 bit loc;;")
    layout, env = _layout(two)
    states = list(gen_states(layout, env, VerifyConfig()))
    assert len(states) == 4 and len(set(map(repr, states))) == 4


def test_sampling_is_deterministic():
    layout, env = _layout(MEM)
    cfg = VerifyConfig(exhaustive=False, samples=100, seed=7)
    first = list(gen_states(layout, env, cfg))
    assert first == list(gen_states(layout, env, cfg))
    other = list(gen_states(layout, env, VerifyConfig(exhaustive=False, samples=100, seed=8)))
    assert first != other


def test_exhaustive_cap():
    layout, env = _layout(MEM)
    with pytest.raises(ConfigError) as info:
        list(gen_states(layout, env, VerifyConfig(cap=1000)))
    assert info.value.code == "StateSpaceTooLarge"


def test_pointer_seeding():
    layout, env = _layout(MEM, "letstate buf: 8 bit 2 len 8 ref;;\npre: true post: true")
    cfg = VerifyConfig(seed_pointers=(("q", "buf"),), cap=1 << 40)
    space = 256 * (256 + 2) * 256 * 256
    assert state_space_size(layout, env, cfg) == space
    with pytest.raises(ConfigError):
        list(gen_states(layout, env, VerifyConfig(seed_pointers=(("zz", "buf"),))))
    with pytest.raises(ConfigError):
        list(gen_states(layout, env, VerifyConfig(seed_pointers=(("q", "zz"),))))


def test_no_pointers_without_seeding():
    layout, env = _layout(MEM, "letstate buf: 8 bit 2 len 8 ref;;\npre: true post: true")
    for s in gen_states(layout, env, VerifyConfig(exhaustive=False, samples=200)):
        assert not any(isinstance(v, Ptr) for v in s.regs.values())


# ---------------------------------------------------------------- verdicts

INC_SPEC = parse_spec("let old_r: 2 bit = *r;;\npre: true\npost: *r == old_r b+ 0b01")


def test_trivial_spec_passes_empty_program():
    v = verify(ONE_REG, parse_spec("pre: true post: true"), parse_program(""))
    assert v.passed and v.states == 4


def test_inc_spec():
    v = verify(ONE_REG, INC_SPEC, parse_program("INC r"))
    assert v.passed and v.states == 4
    bad = verify(ONE_REG, INC_SPEC, parse_program("NOP"))
    assert not bad.passed and bad.reason == "PostFalse"
    assert bad.render().startswith("FAIL PostFalse at state:\n")
    assert "reg r = 0b00" in bad.render()


def test_crash_reason():
    v = verify(ONE_REG, parse_spec("pre: true post: true"), parse_program("DIE"))
    assert not v.passed and v.reason == "Crash"


def test_unsatisfiable_precondition():
    v = verify(ONE_REG, parse_spec("pre: false post: false"), parse_program("NOP"))
    assert not v.passed and v.reason == "PreUnsatNever"


def test_failing_pre_and_decls_are_vacuous():
    spec = parse_spec("pre: bv_to_uint(*r) / bv_to_uint(*r) == 1\npost: *r != 0b00")
    v = verify(ONE_REG, spec, parse_program("NOP"))
    assert v.passed and v.vacuous == 1
    spec = parse_spec("let k: int = 6 / bv_to_uint(*r);;\npre: true\npost: k > 1")
    v = verify(ONE_REG, spec, parse_program("NOP"))
    assert v.passed and v.vacuous == 1


def test_failing_post_is_post_false():
    spec = parse_spec("pre: true post: 1 / 0 == 0")
    v = verify(ONE_REG, spec, parse_program("NOP"))
    assert v.reason == "PostFalse"


def test_read_lint_is_opt_in():
    spec = parse_spec("reg-modify: r1\npre: true post: true")
    prog = parse_program("MOV r1 r2")
    assert verify(TOY, spec, prog).warnings == []
    warned = verify(TOY, spec, prog, VerifyConfig(lint_reads=True))
    assert warned.passed
    assert any("r2" in w for w in warned.warnings)
    quiet = verify(TOY, parse_spec("reg-modify: r1\npre: *r2 == *r2 post: true"), prog,
                   VerifyConfig(lint_reads=True))
    assert quiet.warnings == []


# ---------------------------------------------------------------- properties

OPS = ["NOP", "MOV r1 r2", "MOV r2 r1", "XOR r1 r2", "XOR r2 r1", "INC r1", "INC r2"]
POSTS = ["*r1 == old1", "*r2 == old2", "*r1 == old2", "*r1 == old1 b+ 0b01",
         "(*r1 bxor *r2) == (old1 bxor old2)", "true"]


def _toy_case(rng: random.Random):
    prog = parse_program("\n".join(rng.choice(OPS) for _ in range(rng.randint(0, 4))))
    frame = " ".join(r for r in ("r1", "r2") if rng.random() < 0.5)
    spec = parse_spec("let old1: 2 bit = *r1;;\nlet old2: 2 bit = *r2;;\n"
                      + (f"reg-modify: {frame}\n" if frame else "")
                      + f"pre: true\npost: {rng.choice(POSTS)}")
    return prog, spec


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_counterexamples_replay(seed):
    prog, spec = _toy_case(random.Random(seed))
    v = verify(TOY, spec, prog)
    if not v.passed:
        again = verify(TOY, spec, prog, states=[v.counterexample])
        assert again.reason == v.reason and again.detail == v.detail


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_exhaustive_pass_implies_sampled_pass(seed):
    rng = random.Random(seed)
    prog, spec = _toy_case(rng)
    if verify(TOY, spec, prog).passed:
        cfg = VerifyConfig(exhaustive=False, samples=50, seed=rng.randrange(1000))
        assert verify(TOY, spec, prog, cfg).passed


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_pass_means_changes_stay_in_frame(seed):
    prog, spec = _toy_case(random.Random(seed))
    if not verify(TOY, spec, prog).passed:
        return
    allowed = set(augment_frame(spec).regs)
    for a, b in itertools.product(range(4), repeat=2):
        before = toy_state(a, b)
        after = eval_program(TOY_ENV, before, prog).state
        changed = {r.name for r in before.regs if before.regs[r] != after.regs[r]}
        assert changed <= allowed


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_verdict_agrees_with_brute_force(seed):
    prog, spec = _toy_case(random.Random(seed))
    v = verify(TOY, spec, prog)
    env = TOY_ENV.scope()
    frame = set(augment_frame(spec).regs)
    first_bad = None
    for a, b in itertools.product(range(4), repeat=2):
        before = toy_state(a, b)
        after = eval_program(TOY_ENV, before, prog).state
        local = env.scope({"old1": BitVec(2, a), "old2": BitVec(2, b)})
        post_ok = eval_expr(local, after, spec.post) is True
        frame_ok = all(before.regs[r] == after.regs[r] for r in before.regs if r.name not in frame)
        if not (post_ok and frame_ok):
            first_bad = (a, b)
            break
    assert v.passed == (first_bad is None)
    if first_bad:
        cex = v.counterexample
        assert (cex.regs[R1].value, cex.regs[R2].value) == first_bad
