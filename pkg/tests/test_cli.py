import json
import subprocess
import sys

import pytest

from twistcheck.cli import run


def invoke(argv, stdin_doc=None, capsys=None, monkeypatch=None):
    if stdin_doc is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(stdin_doc)))
        argv = argv + ["-"]
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


AUG5_Q = {
    "group": {"type": "cyclic", "order": 5},
    "lattice": {"name": "augmentation"},
    "endomorphism_algebra": {"type": "Q"},
    "hypotheses": {"dimension": 1, "end_stability": "derive"},
}


def test_check_simple(capsys, monkeypatch):
    code, out = invoke(["check"], AUG5_Q, capsys, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"]["outcome"] == "simple"
    assert doc["verdict"]["rule"] == "prop_main"
    assert doc["oracle_crosscheck"]["status"] == "agree"


def test_check_not_simple_q8(capsys, monkeypatch):
    problem = {
        "group": {"type": "quaternion8"},
        "lattice": {"name": "q8_quaternion"},
        "endomorphism_algebra": {"type": "quadratic", "d": -3},
    }
    code, out = invoke(["check"], problem, capsys, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"]["outcome"] == "not_simple"


def test_check_exit_codes(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("not json"))
    code = run(["check", "-"])
    out = capsys.readouterr().out
    assert code == 1
    assert json.loads(out)["error"]["code"] == "invalid_input"

    bad_schema = dict(AUG5_Q)
    bad_schema["extra_key"] = 1
    code, out = invoke(["check"], bad_schema, capsys, monkeypatch)
    assert code == 1
    assert "extra_key" in json.loads(out)["error"]["message"]

    unsupported = {
        "group": {"type": "quaternion8"},
        "lattice": {"name": "q8_quaternion"},
        "endomorphism_algebra": {"type": "nongalois_quartic_cm", "d0": 5},
    }
    code, out = invoke(["check"], unsupported, capsys, monkeypatch)
    assert code == 2
    assert json.loads(out)["verdict"]["outcome"] == "unsupported"

    too_big = {
        "group": {"type": "cyclic", "order": 24},
        "lattice": {"name": "regular"},
        "endomorphism_algebra": {"type": "quaternion", "a": -1, "b": -1},
        "hypotheses": {"end_stability": "asserted"},
    }
    code, out = invoke(["oracle"], too_big, capsys, monkeypatch)
    assert code == 3
    assert json.loads(out)["error"]["code"] == "resource_limit"


def test_check_gate_failure_exit(capsys, monkeypatch):
    problem = {
        "group": {"type": "cyclic", "order": 3},
        "lattice": {"name": "augmentation"},
        "endomorphism_algebra": {"type": "Q"},
        "hypotheses": {
            "dimension": 2,
            "principally_polarised": False,
            "end_stability": "derive",
        },
    }
    code, out = invoke(["check"], problem, capsys, monkeypatch)
    assert code == 2
    doc = json.loads(out)
    assert doc["verdict"]["rule"] == "hypothesis_failure"
    assert not doc["gate"]["passed"]


def test_no_oracle_crosscheck_flag(capsys, monkeypatch):
    code, out = invoke(["check", "--no-oracle-crosscheck"], AUG5_Q, capsys, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["oracle_crosscheck"] == {"ran": False, "reason": "disabled by flag"}


def test_output_byte_stable(capsys, monkeypatch):
    code1, out1 = invoke(["check"], AUG5_Q, capsys, monkeypatch)
    code2, out2 = invoke(["check"], AUG5_Q, capsys, monkeypatch)
    assert out1 == out2 and code1 == code2 == 0


def test_decompose(capsys, monkeypatch):
    doc_in = {"group": {"type": "dihedral", "order": 10}}
    code, out = invoke(["decompose"], doc_in, capsys, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["total_dimension"] == 10
    assert [f["factor"] for f in doc["factors"]] == ["trivial", "sign", "dihedral_rho(5)"]


def test_scenario_cli(capsys, monkeypatch):
    doc_in = {"name": "q8_H", "params": {"d": 7}}
    code, out = invoke(["scenario"], doc_in, capsys, monkeypatch)
    assert code == 0
    assert json.loads(out)["verdict"]["outcome"] == "simple"

    doc_in = {"name": "theorem2", "params": {"dim": 1}}
    code, out = invoke(["scenario"], doc_in, capsys, monkeypatch)
    assert code == 0
    assert json.loads(out)["sufficient_prime_bound"] == 26244


def test_oracle_subcommand(capsys, monkeypatch):
    problem = {
        "group": {"type": "cyclic", "order": 5},
        "lattice": {"name": "augmentation"},
        "endomorphism_algebra": {"type": "quadratic", "d": 5},
    }
    code, out = invoke(["oracle"], problem, capsys, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "zero_divisor"
    assert doc["dimension"] == 8
    assert doc["witness"] is not None

    code, out = invoke(["oracle", "--include-basis"], problem, capsys, monkeypatch)
    doc = json.loads(out)
    assert len(doc["basis"]) == 8

    code, out = invoke(["oracle", "--method", "direct"], problem, capsys, monkeypatch)
    assert json.loads(out)["verdict"] == "zero_divisor"


def test_oracle_verdict_consistent_with_check(capsys, monkeypatch):
    """Certificate replay: the oracle subcommand reproduces the check outcome."""
    problem = {
        "group": {"type": "cyclic", "order": 7},
        "lattice": {"name": "augmentation"},
        "endomorphism_algebra": {"type": "quadratic", "d": -7},
    }
    code, out = invoke(["check"], problem, capsys, monkeypatch)
    verdict = json.loads(out)["verdict"]["outcome"]
    code, out = invoke(["oracle"], problem, capsys, monkeypatch)
    oracle = json.loads(out)["verdict"]
    assert verdict == "not_simple" and oracle == "zero_divisor"


def test_table_json_and_text(capsys, monkeypatch):
    doc_in = {"group": {"type": "cyclic", "order": 1}}
    code, out = invoke(["table"], doc_in, capsys, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["classes"]) == 1 and len(doc["characters"]) == 1

    doc_in = {"group": {"type": "quaternion8"}}
    code, out = invoke(["table", "--format", "text"], doc_in, capsys, monkeypatch)
    assert code == 0
    assert "std" in out and "-2" in out

    code, out = invoke(["table"], doc_in, capsys, monkeypatch)
    doc = json.loads(out)
    std = doc["characters"][-1]
    assert std["degree"] == 2 and std["indicator"] == -1


def test_symbols_operations(capsys, monkeypatch):
    cases = [
        ({"operation": "hilbert_symbol", "a": -1, "b": -1, "place": "oo"}, -1),
        ({"operation": "hilbert_symbol", "a": -1, "b": -1, "place": 2}, -1),
        ({"operation": "ramified_places", "a": 2, "b": 3}, [2, 3]),
        ({"operation": "is_sum_of_three_squares", "d": 7}, False),
        ({"operation": "squarefree_part", "d": -18}, -2),
    ]
    for doc_in, expected in cases:
        code, out = invoke(["symbols"], doc_in, capsys, monkeypatch)
        assert code == 0
        assert json.loads(out)["result"] == expected


def test_big_integers_accepted_as_strings(capsys, monkeypatch):
    doc_in = {"name": "theorem2", "params": {"dim": 1, "p": "26249"}}
    code, out = invoke(["scenario"], doc_in, capsys, monkeypatch)
    assert code == 0
    assert json.loads(out)["prime_exceeds_bound"] is True


def test_explicit_matrices_lattice(capsys, monkeypatch):
    problem = {
        "group": {"type": "cyclic", "order": 3},
        "lattice": {"matrices": [[[-1, -1], [1, 0]]]},
        "endomorphism_algebra": {"type": "Q"},
    }
    code, out = invoke(["check"], problem, capsys, monkeypatch)
    assert code == 0
    assert json.loads(out)["verdict"]["outcome"] == "simple"


def test_subprocess_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "twistcheck", "symbols", "-"],
        input=json.dumps({"operation": "squarefree_part", "d": 12}),
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == 3
