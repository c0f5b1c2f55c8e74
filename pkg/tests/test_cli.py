import json

import pytest

from lengthsets.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_nm_lengths(capsys):
    doc = run_json(capsys, "nm", "lengths", "--gens", "3,4,5", "--elem", "10")
    assert doc["lengths"] == [2, 3]
    assert doc["monoid"] == {"atoms": [3, 4, 5]}
    assert doc["config"]["budget"] == 10 ** 6


def test_nm_frobenius(capsys):
    doc = run_json(capsys, "nm", "frobenius", "--gens", "9,89")
    assert doc["frobenius"] == 703


def test_mp_lengths(capsys):
    doc = run_json(capsys, "mp", "lengths", "--q", "1", "--cap", "10")
    assert doc["lengths"] == [2, 3, 5, 7]
    assert doc["symbolic"] == {"kind": "shifted", "base": 0, "copies": 1, "stream": "primes"}
    assert doc["cap"] == 10


def test_mp_decompose(capsys):
    doc = run_json(capsys, "mp", "decompose", "--q", "5/6")
    assert doc["member"] is True
    assert doc["decomposition"] == {"N": 0, "coeffs": {"2": 1, "3": 1}}
    doc = run_json(capsys, "mp", "decompose", "--q", "5/4")
    assert doc["member"] is False
    assert doc["witness"]["details"] == {"prime": 2, "valuation": -2}


def test_mp_lengths_non_member_exits_2(capsys):
    code, out, err = run(capsys, "mp", "lengths", "--q", "5/4")
    assert code == 2
    assert json.loads(err)["error"] == "domain"
    assert out == ""


def test_realize_and_accp_round_trip(capsys, tmp_path):
    trace_file = tmp_path / "trace.json"
    doc = run_json(
        capsys,
        "realize",
        "--set",
        "2,3,10",
        "--tail",
        "13,17",
        "--depth",
        "2",
        "--emit",
        str(trace_file),
    )
    assert doc["final_lengths"] == [2, 3, 10, 13, 17]
    assert doc["base"] == {"atoms": [4, 18, 27], "element": 54, "L0": [2, 3, 10]}
    assert [s["ell"] for s in doc["stages"]] == [13, 17]

    on_disk = json.loads(trace_file.read_text())
    assert on_disk == doc

    check = run_json(capsys, "accp", "check", "--cert", str(trace_file))
    assert check["verified"] is True
    assert [r["rule"] for r in check["report"]] == [
        "prime-reciprocal",
        "positive-sum",
        "ascending-union",
    ]


def test_accp_check_rejects_bad_certificate(capsys, tmp_path):
    cert_file = tmp_path / "cert.json"
    cert_file.write_text(
        json.dumps(
            {
                "kind": "positive-sum",
                "base": {"kind": "bounded-below", "threshold": "1"},
                "summand": {"type": "reciprocal", "stream": "primes"},
            }
        )
    )
    code, out, err = run(capsys, "accp", "check", "--cert", str(cert_file))
    assert code == 2
    doc = json.loads(out)
    assert doc["verified"] is False
    assert "summand is not finitely generated" in doc["reason"]


def test_accp_example34(capsys):
    doc = run_json(capsys, "accp", "example34", "--q", "5/4")
    assert doc["factorable"] is False
    assert doc["in_monoid"] is True
    assert doc["obstruction"]["details"] == {"prime": 2, "valuation": -2}

    doc = run_json(capsys, "accp", "example34", "--q", "5/6")
    assert doc["factorable"] is True
    assert doc["factorization"] == {"1/2": 1, "1/3": 1}
    assert doc["length"] == 2


def test_algebra_lengths_from_trace(capsys, tmp_path):
    trace_file = tmp_path / "trace.json"
    run_json(
        capsys,
        "realize", "--set", "2,3,10", "--tail", "13,17", "--depth", "2",
        "--emit", str(trace_file),
    )
    doc = run_json(capsys, "algebra", "lengths", "--monoid", str(trace_file), "--exp", "1")
    assert doc["lengths"] == [2, 3, 10, 13, 17]


def test_algebra_lengths_from_monoid_file(capsys, tmp_path):
    m_file = tmp_path / "m.json"
    m_file.write_text(json.dumps({"atoms": [2, 3]}))
    doc = run_json(capsys, "algebra", "lengths", "--monoid", str(m_file), "--exp", "6")
    assert doc["lengths"] == [2, 3]

    p_file = tmp_path / "p.json"
    p_file.write_text(json.dumps({"atoms": ["1/3", "1/2"]}))
    doc = run_json(capsys, "algebra", "lengths", "--monoid", str(p_file), "--exp", "1")
    assert doc["lengths"] == [2, 3]

    s_file = tmp_path / "s.json"
    s_file.write_text(json.dumps({"stream": "primes"}))
    doc = run_json(capsys, "algebra", "lengths", "--monoid", str(s_file), "--exp", "5/6")
    assert doc["symbolic"] == {"kind": "finite", "set": [2]}


def test_budget_exhausted_exits_3(capsys):
    code, out, err = run(capsys, "realize", "--set", "2,3,10", "--budget", "5")
    assert code == 3
    doc = json.loads(err)
    assert doc["error"] == "budget-exhausted"
    assert doc["frontier"]["nodes"] == 5
    assert doc["frontier"]["pool"] == "pairs"


def test_usage_errors_exit_64(capsys):
    assert run(capsys, "nm", "lengths", "--gens", "3,4,5")[0] == 64  # missing --elem
    assert run(capsys, "warp")[0] == 64
    assert run(capsys)[0] == 64
    assert run(capsys, "nm")[0] == 64


def test_domain_errors_exit_2(capsys):
    code, out, err = run(capsys, "nm", "lengths", "--gens", "2,4", "--elem", "6")
    assert code == 2
    assert json.loads(err)["error"] == "domain"
    code, out, err = run(capsys, "nm", "lengths", "--gens", "x,y", "--elem", "6")
    assert code == 2
    code, out, err = run(capsys, "algebra", "lengths", "--monoid", "/nonexistent.json", "--exp", "1")
    assert code == 2
    assert json.loads(err)["error"] == "io"


def test_global_flags_both_positions(capsys):
    before = run_json(capsys, "--cap", "10", "mp", "lengths", "--q", "1")
    after = run_json(capsys, "mp", "lengths", "--q", "1", "--cap", "10")
    assert before == after
    assert before["lengths"] == [2, 3, 5, 7]


def test_artifacts_byte_identical(capsys):
    argv = ("realize", "--set", "2,3,10", "--tail", "13", "--depth", "1", "--seed", "7")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert (code1, code2) == (0, 0)
    assert out1 == out2
    assert json.loads(out1)["config"]["seed"] == 7


def test_table_format(capsys):
    code, out, err = run(capsys, "nm", "frobenius", "--gens", "5,6", "--format", "table")
    assert code == 0
    assert "frobenius: 19" in out
    assert not out.lstrip().startswith("{")


def test_config_file_env(capsys, tmp_path, monkeypatch):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"cap": 10, "seed": 42}))
    monkeypatch.setenv("LENGTHSETS_CONFIG", str(cfg_file))
    doc = run_json(capsys, "mp", "lengths", "--q", "1")
    assert doc["config"]["cap"] == 10
    assert doc["config"]["seed"] == 42
    assert doc["lengths"] == [2, 3, 5, 7]
    # explicit flags override the config file
    doc = run_json(capsys, "mp", "lengths", "--q", "1", "--cap", "7")
    assert doc["config"]["cap"] == 7
    assert doc["lengths"] == [2, 3, 5, 7]


def test_config_file_invalid(capsys, tmp_path, monkeypatch):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"cap": -3}))
    monkeypatch.setenv("LENGTHSETS_CONFIG", str(cfg_file))
    code, out, err = run(capsys, "mp", "lengths", "--q", "1")
    assert code == 2
