import json
import subprocess
import sys


from fibergroup.cli import main, run


def call(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_burnside_order(capsys):
    code, out, err = call(["burnside", "--n", "3", "--order", "--no-timing"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["checks"][0]["payload"]["order"] == 2187
    assert rep["schema"].startswith("fibergroup.report/")
    assert "pass" in err


def test_unknown_subcommand(capsys):
    code, out, _ = call(["frobnicate"], capsys)
    assert code == 64 and out == ""


def test_missing_file(capsys, tmp_path):
    code, out, _ = call(["enum", str(tmp_path / "nope.txt")], capsys)
    assert code == 66 and out == ""


def test_enum_file(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("gens: a b\nrels: a^2, b^3, (a b)^5\n")
    code, out, _ = call(["enum", str(f), "--subgroup", "b", "--no-timing"], capsys)
    assert code == 0 and json.loads(out)["checks"][0]["payload"]["index"] == 20
    f.write_text("gens: a b\nrels: a^3, b^3, (a b)^3\n")
    code, out, _ = call(["enum", str(f), "--max-cosets", "500"], capsys)
    assert code == 2 and json.loads(out)["status"] == "unknown"


def test_fiberquot_file(capsys, tmp_path):
    f = tmp_path / "fiber.txt"
    f.write_text("genus: 1\npunctured: true\nmonodromy: none\ncycle: a1 ^3\ncycle: b1 ^3\ncycle: a1 b1 ^3\ncycle: a1 b1^2 ^3\n")
    code, out, _ = call(["fiberquot", str(f), "--oracles", "abelian,enum", "--no-timing"], capsys)
    payload = json.loads(out)["checks"][0]["payload"]
    assert code == 0 and payload["verdict"] == {"kind": "FiniteUpperEvidence", "order": 27, "source": "coset enumeration"}


def test_scan_fixture(capsys):
    code, out, _ = call(["scan", "--fixture", "two-torus-chain", "--no-timing"], capsys)
    assert code == 0 and json.loads(out)["checks"][0]["payload"]["verdict"] == "CandidateCounterexample"
    code, out, _ = call(["scan", "--fixture", "two-torus-chain", "--closed"], capsys)
    assert code == 2


def test_bad_split(capsys):
    code, _, _ = call(["scan", "--fixture", "two-torus-chain", "--split", "0"], capsys)
    assert code == 64


def test_timing_flag(capsys):
    _, out, _ = call(["witness", "--eisenstein", "--power-check", "10"], capsys)
    assert "runtime_ms" in json.loads(out)["checks"][0]
    _, out, _ = call(["witness", "--eisenstein", "--power-check", "10", "--no-timing"], capsys)
    assert "runtime_ms" not in json.loads(out)["checks"][0]


def test_nilpotent_even_N_is_usage_error(capsys):
    code, _, _ = call(["nilpotent", "--g", "1", "--N", "4"], capsys)
    assert code == 64


def test_console_script_determinism():
    cmd = [sys.executable, "-m", "fibergroup.cli", "verify-appendix-b", "--seed", "7", "--no-timing"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["status"] == "pass"


def test_run_returns_report():
    code, rep = run(["monodromy", "--trials", "20", "--words", "5", "--seed", "3"])
    assert code == 0 and rep.status == "pass"
