import json
import subprocess
import sys

import pytest

import ncdiv.cli as cli
from ncdiv.cli import JobConfig, main, run
from ncdiv.derivation import parse_derivation
from ncdiv.divergence import coboundary, div_cochain
from ncdiv.solver import SolverVerificationError
from ncdiv.tensor import Alphabet


def run_main(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_verify_div_passes(capsys):
    code, out = run_main(
        ["--command", "verify-div", "--n", "2", "--max-degree", "3", "--seed", "7", "--samples", "10"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "pass"
    assert report["schema_version"] == 1
    assert all(c["status"] == "pass" for c in report["checks"])


def test_solve_cocycles_dimension(capsys):
    code, out = run_main(
        ["--command", "solve-cocycles", "--n", "3", "--mode", "equivariant", "--max-degree", "3"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["dimension"] == 2


def test_n1_job(capsys):
    code, out = run_main(["--command", "n1-cocycles", "--max-degree", "4"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["dimension"] == 3
    assert report["job"]["n"] == 1


def test_verify_msz_job(capsys):
    code, out = run_main(["--command", "verify-msz", "--n", "2", "--max-degree", "2"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["report"]["dim_target"] == 16


def test_reports_deterministic_modulo_timings(capsys):
    args = ["--command", "solve-cocycles", "--n", "2", "--mode", "equivariant", "--max-degree", "2", "--seed", "11"]
    _, out1 = run_main(args, capsys)
    _, out2 = run_main(args, capsys)
    r1, r2 = json.loads(out1), json.loads(out2)
    r1.pop("timings_ms")
    r2.pop("timings_ms")
    assert r1 == r2


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"command": "verify-msz", "n": 2, "max_degree": 2}))
    code, out = run_main(["--config", str(cfg)], capsys)
    assert code == 0
    assert json.loads(out)["job"]["n"] == 2
    # flags override file fields
    code, out = run_main(["--config", str(cfg), "--n", "3"], capsys)
    assert code == 0
    assert json.loads(out)["job"]["n"] == 3


def test_config_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["--config", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 1" in err

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"command": "verify-msz", "bogus": 1}))
    assert main(["--config", str(unknown)]) == 2

    assert main(["--n", "2"]) == 2  # no command


def test_out_file_and_text_format(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _ = run_main(
        ["--command", "verify-msz", "--n", "2", "--max-degree", "2", "--out", str(out_path)],
        capsys,
    )
    assert code == 0
    assert json.loads(out_path.read_text())["status"] == "pass"
    code, out = run_main(
        ["--command", "verify-msz", "--n", "2", "--max-degree", "2", "--format", "text"], capsys
    )
    assert code == 0
    assert "status: pass" in out


def test_check_failure_exits_1(monkeypatch, capsys):
    def boom(ansatz, seed=0, **kw):
        raise SolverVerificationError("bad", {"d1": "1*d1*:1", "d2": "1*d1*:1.1"})

    monkeypatch.setattr(cli, "solve", boom)
    code, out = run_main(["--command", "solve-cocycles", "--n", "2", "--max-degree", "2"], capsys)
    assert code == 1
    report = json.loads(out)
    assert report["status"] == "fail"
    payload = report["checks"][0]["counterexample"]
    # counterexamples are replayable through the module operations
    alphabet = Alphabet(2)
    d1 = parse_derivation(alphabet, payload["d1"])
    d2 = parse_derivation(alphabet, payload["d2"])
    assert coboundary(div_cochain(alphabet), d1, d2).is_zero()


def test_parse_derivation_round_trip():
    alphabet = Alphabet(3)
    from fractions import Fraction

    from ncdiv.derivation import DerBasisElem, Derivation

    d = Derivation(
        alphabet,
        {DerBasisElem(1, (1, 2)): Fraction(-3, 2), DerBasisElem(2, ()): Fraction(5)},
    )
    assert parse_derivation(alphabet, repr(d)) == d
    assert parse_derivation(alphabet, "0").is_zero()


def test_unknown_command_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--command", "frobnicate"])
    assert exc.value.code == 2


def test_run_function_directly():
    report = run(JobConfig(command="es-trace", n=2, seed=1, samples=5))
    assert report["status"] == "pass"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ncdiv", "--command", "verify-msz", "--n", "2", "--max-degree", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
