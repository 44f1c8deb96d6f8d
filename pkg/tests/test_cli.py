import pytest

from cassiopea.cli import main
from helpers import CORPUS

TOY = str(CORPUS / "machines/toy2.casp")
MINI = str(CORPUS / "machines/mini8.casp")
SWAP_SPEC = str(CORPUS / "specs/toy2_swap.casp")


def prog(name: str) -> str:
    return str(CORPUS / "programs" / f"{name}.prog")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys):
    assert run(capsys, "check", TOY)[0] == 0
    assert run(capsys, "check", TOY, "--spec", SWAP_SPEC, "--program", prog("toy2_swap"))[0] == 0
    assert run(capsys, "check", MINI, "--program", prog("mini8_load"))[0] == 0


def test_check_rejects_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.casp"
    bad.write_text("letstate r: 2 bit loc;;\nlet x: 2 bit = true;;\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "TypeMismatch" in err
    bad.write_text("letstate r: 2 bit\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "ParseError" in err
    assert run(capsys, "check", str(tmp_path / "missing.casp"))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_verify_swap(capsys):
    code, out, _ = run(capsys, "verify", TOY, SWAP_SPEC, prog("toy2_swap"))
    assert code == 0 and out == "PASS (16 states)\n"


def test_verify_counterexample_replays(capsys, tmp_path):
    cex = tmp_path / "cex.state"
    code, out, _ = run(capsys, "verify", TOY, SWAP_SPEC, prog("toy2_nop"), "-o", str(cex))
    assert code == 1 and out.startswith("FAIL PostFalse")
    # both the saved state and the verdict text itself replay
    verdict = tmp_path / "verdict.txt"
    verdict.write_text(out)
    for init in (cex, verdict):
        again = run(capsys, "verify", TOY, SWAP_SPEC, prog("toy2_nop"), "--init", str(init))
        assert again[0] == 1 and again[1] == out
    code, final, _ = run(capsys, "run", TOY, prog("toy2_nop"), "--init", str(cex))
    assert code == 0 and final == cex.read_text()


def test_verify_is_deterministic(capsys):
    argv = ["verify", TOY, SWAP_SPEC, prog("toy2_nop")]
    first = run(capsys, *argv)
    assert first[0] == 1 and first == run(capsys, *argv)
    argv = ["verify", TOY, SWAP_SPEC, prog("toy2_nop"), "--samples", "5", "--seed", "3"]
    first = run(capsys, *argv)
    assert first[0] == 1 and first == run(capsys, *argv)


def test_verify_bad_seed_pointer(capsys):
    code, _, err = run(capsys, "verify", TOY, SWAP_SPEC, prog("toy2_swap"),
                       "--seed-pointer", "r1")
    assert code == 2
    code, _, err = run(capsys, "verify", TOY, SWAP_SPEC, prog("toy2_swap"),
                       "--seed-pointer", "r1=nowhere")
    assert code == 2 and "nowhere" in err


def test_run_and_extract(capsys, tmp_path):
    init = str(CORPUS / "states/toy2_a.state")
    code, out, _ = run(capsys, "run", TOY, prog("toy2_swap"), "--init", init)
    assert code == 0 and out == "reg r1 = 0b10\nreg r2 = 0b01\n"
    code, out, _ = run(capsys, "extract", TOY, prog("toy2_swap"))
    assert code == 0 and out == "xor r1, r2\nxor r2, r1\nxor r1, r2\n"
    dest = tmp_path / "asm.s"
    assert run(capsys, "extract", TOY, prog("toy2_swap"), "-o", str(dest)) == (0, "", "")
    assert dest.read_text() == out


def test_lower_then_verify(capsys, tmp_path):
    lowered = tmp_path / "swap.casp"
    argv = ["lower", TOY, str(CORPUS / "mappings/toy2.map"), str(CORPUS / "alewife/swap.ale")]
    assert run(capsys, *argv, "-o", str(lowered))[0] == 0
    assert run(capsys, "check", TOY, "--spec", str(lowered))[0] == 0
    code, out, _ = run(capsys, "verify", TOY, str(lowered), prog("toy2_swap"))
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, *argv)
    assert out == lowered.read_text()


def test_lower_trace_goes_to_stderr(capsys):
    argv = ["lower", TOY, str(CORPUS / "mappings/toy2.map"), str(CORPUS / "alewife/clear.ale")]
    code, out, err = run(capsys, *argv, "--emit-map-trace")
    assert code == 0
    assert "alewife (require zero) <- zero" in err.splitlines()
    assert out == run(capsys, *argv)[1]


@pytest.mark.parametrize("flag,code", [
    ("--allow-quantifiers=false", 1),
    ("--allow-quantifiers=true", 0),
    ("--allow-quantifiers", 0),
    ("--allow-quantifiers=maybe", 2),
])
def test_quantifier_flag(capsys, flag, code):
    argv = ["lower", MINI, str(CORPUS / "mappings/mini8.map"),
            str(CORPUS / "alewife/zero_pair.ale"), flag]
    got, _, err = run(capsys, *argv)
    assert got == code
    if code == 1:
        assert "QuantifiersDisabled" in err


def test_lower_errors_exit_one(capsys, tmp_path):
    ale = tmp_path / "x.ale"
    ale.write_text("block nosuch { pre: true post: true }\n")
    code, _, err = run(capsys, "lower", TOY, str(CORPUS / "mappings/toy2.map"), str(ale))
    assert code == 1 and "NoSuchModule" in err
    ale.write_text("require value missing: vec;;\nblock swap { pre: true post: true }\n")
    code, _, err = run(capsys, "lower", TOY, str(CORPUS / "mappings/toy2.map"), str(ale))
    assert code == 1 and "RequireUnmet" in err


def test_crashing_run_exits_one(capsys, tmp_path):
    m = tmp_path / "m.casp"
    m.write_text('letstate r: 2 bit loc;;\ndefop DIE { txt = "die", sem = assert(false) }\n')
    p = tmp_path / "p.prog"
    p.write_text("DIE\n")
    code, out, err = run(capsys, "run", str(m), str(p))
    assert code == 1 and "crashed" in err and out == "reg r = 0b00\n"
