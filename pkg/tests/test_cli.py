import subprocess
import sys

import pytest

from stacked_bases.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decompose_example(capsys):
    code, out, _ = run(capsys, "decompose", "--ring", "Z", "--matrix", "2,0;0,3;0,0")
    assert code == 0
    assert "torsion 1                ideal(6)" in out
    assert "free_rank                1" in out


def test_diagonalize_example(capsys):
    code, out, _ = run(capsys, "diagonalize", "--ring", "Z/12", "--matrix", "2,0;3,4",
                       "--format", "machine")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "stacked-bases-report v1"
    assert "diagonal: 1, 4" in lines
    assert any(line.startswith("P: ") for line in lines)
    assert any(line.startswith("Q: ") for line in lines)


def test_ideal_mul_example(capsys):
    code, out, _ = run(capsys, "ideal", "--ring", "Q[-5]", "mul", "ideal(2,1+1*w)", "ideal(2,1+1*w)")
    assert code == 0
    assert out.splitlines()[-1].split()[-1] == "ideal(2)"


@pytest.mark.parametrize("op,args,expected", [
    ("principal", ["ideal(2,1+1*w)"], "principal  no"),
    ("isomorphic", ["ideal(2,1+1*w)", "ideal(3,1+1*w)"], "isomorphic  yes"),
    ("norm", ["ideal(2,1+1*w)"], "result   2"),
])
def test_ideal_ops(capsys, op, args, expected):
    code, out, _ = run(capsys, "ideal", "--ring", "Q[-5]", op, *args)
    assert code == 0
    assert expected in out.splitlines()


def test_verify_passes(capsys):
    code, _, _ = run(capsys, "verify", "--ring", "Q[-5]", "--matrix", "2,1+1*w")
    assert code == 0


def test_exit_codes(capsys):
    # unsupported ring for the requested operation
    assert run(capsys, "decompose", "--ring", "Z/4", "--matrix", "2")[0] == 1
    assert run(capsys, "diagonalize", "--ring", "Q[-5]", "--matrix", "2,1+1*w")[0] == 1
    # parse and usage errors
    assert run(capsys, "decompose", "--ring", "Z", "--matrix", "2,x")[0] == 2
    assert run(capsys, "decompose", "--ring", "Q[1]", "--matrix", "2")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_input_file_and_out(tmp_path, capsys):
    src = tmp_path / "h.txt"
    src.write_text("2,0;0,3\n", encoding="utf-8")
    dest = tmp_path / "report.txt"
    code, _, _ = run(capsys, "stacked", "--ring", "Z", "--input", str(src), "--format", "machine",
                     "--out", str(dest))
    assert code == 0
    assert dest.read_text(encoding="utf-8").startswith("stacked-bases-report v1")


def test_machine_output_is_deterministic():
    cmd = [sys.executable, "-m", "stacked_bases", "decompose", "--ring", "Q[-5]",
           "--matrix", "2;1+1*w", "--format", "machine"]
    outs = set()
    for seed in ("0", "1", "2"):
        env = {"PYTHONHASHSEED": seed, "PATH": ""}
        outs.add(subprocess.run(cmd, capture_output=True, env=env, check=True).stdout)
    assert len(outs) == 1


def test_matrix_literal_round_trip(capsys):
    code, out, _ = run(capsys, "stacked", "--ring", "prod(Z, Z/6)",
                       "--matrix", "(2, 1),(0, 3);(1, 1),(4, 5)", "--format", "machine")
    assert code == 0
    assert "input.H: (2, 1),(0, 3);(1, 1),(4, 5)" in out
