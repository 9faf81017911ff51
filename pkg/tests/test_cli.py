import json
from fractions import Fraction

import pytest

from hurwitzkit.cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, run
from hurwitzkit.services.hurwitz_engine import HurwitzEngine


def run_json(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, json.loads(captured.out), captured.err


def test_hurwitz_with_oracle_crosscheck(capsys):
    code, document, _ = run_json(capsys, ["hurwitz", "--mu", "2", "--nu", "1,1", "--flavor", "monotone", "--b", "1"])
    assert code == EXIT_OK
    assert document["result"] == "1/2"
    assert document["query"]["genus"] == 0
    assert document["crosschecks"] == [{"method": "oracle", "agrees": True, "value": "1/2"}]


def test_hurwitz_block_vector(capsys):
    code, document, _ = run_json(capsys, ["hurwitz", "--mu", "2,1", "--nu", "2,1",
                                          "--block", "completed_cycle:2", "--block", "monotone:1"])
    assert code == EXIT_OK
    assert len(document["query"]["blocks"]) == 2


def test_jucys_expansion(capsys):
    code, document, _ = run_json(capsys, ["jucys", "--n", "5", "--basis", "h", "--b", "2"])
    assert code == EXIT_OK
    assert document["result"] == {"3,1,1": "2", "2,2,1": "1", "1,1,1,1,1": "10"}
    assert all(check["agrees"] for check in document["crosschecks"])


def test_oracle_product(capsys):
    code, document, _ = run_json(capsys, ["oracle", "--product", "2,1", "2,1"])
    assert code == EXIT_OK
    assert document["result"] == {"3": "3", "1,1,1": "3"}


def test_qcurve_verified(capsys):
    code, document, _ = run_json(capsys, ["qcurve", "--flavor", "atlantes", "--r", "2", "--order", "4"])
    assert code == EXIT_OK
    assert document["result"]["status"] == "verified"
    assert document["query"]["N"] == 4


def test_qcurve_needs_times(capsys):
    assert run(["qcurve", "--flavor", "monotone", "--order", "4"]) == EXIT_ERROR
    assert "needs --times" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["hurwitz", "--mu", "2"],
    ["hurwitz", "--mu", "2", "--nu", "1"],
    ["hurwitz", "--mu", "2", "--nu", "1,1", "--block", "bogus:1"],
    ["no-such-command"],
    ["jucys", "--n", "3", "--basis", "sigma", "--b", "3"],
    ["elsv-k", "--order", "2", "--format", "csv"],
])
def test_usage_errors(capsys, argv):
    assert run(argv) == EXIT_ERROR


def test_missing_config_file(capsys, tmp_path):
    assert run(["elsv-k", "--config", str(tmp_path / "missing.json")]) == EXIT_ERROR
    assert "usage error" in capsys.readouterr().err


def test_oracle_enumeration_limit(capsys):
    assert run(["oracle", "--mu", "8", "--nu", "8"]) == EXIT_ERROR
    assert "enumeration limit" in capsys.readouterr().err


def test_pole_is_reported(capsys):
    assert run(["hurwitz", "--mu", "3", "--nu", "3", "--block", "hyper_z:1/2"]) == EXIT_ERROR
    assert "pole" in capsys.readouterr().err


def test_oracle_skipped_message(capsys):
    code = run(["hurwitz", "--mu", "4,4", "--nu", "4,4", "--flavor", "monotone", "--b", "2"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert json.loads(captured.out)["crosschecks"] == []
    assert "oracle cross-check skipped: n=8 exceeds enumeration limit 7" in captured.err


def test_failed_verification_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(HurwitzEngine, "hurwitz_number", lambda self, problem: Fraction(42))
    code = run(["hurwitz", "--mu", "2", "--nu", "1,1", "--flavor", "monotone", "--b", "1", "--format", "text"])
    captured = capsys.readouterr()
    assert code == EXIT_FAILED
    last_line = captured.out.strip().splitlines()[-1]
    assert json.loads(last_line) == {"crosscheck": "oracle", "value": "1/2"}
    assert "verification failed: oracle" in captured.err


def test_output_is_deterministic(capsys):
    argv = ["hurwitz", "--mu", "2,1", "--nu", "1,1,1", "--flavor", "atlantes", "--b", "3"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_table_as_csv(capsys):
    code = run(["hurwitz", "--table", "--flavor", "monotone", "--genus", "0", "--degrees", "2", "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "flavor,g,mu,b,value"
    assert "monotone,0,2,1,1/2" in lines


def test_elsv_k(capsys):
    code, document, _ = run_json(capsys, ["elsv-k", "--order", "2"])
    assert code == EXIT_OK
    assert document["result"] == {"K": ["-3", "-21/2"]}


def test_constraints(capsys):
    code, document, _ = run_json(capsys, ["constraints", "--check", "R", "--n", "1,2", "--beta", "1/7",
                                          "--times", "1,1/2", "--truncation", "4"])
    assert code == EXIT_OK
    assert [report["status"] for report in document["result"]] == ["verified", "verified"]


def test_cut_and_join(capsys):
    code, document, _ = run_json(capsys, ["constraints", "--check", "cut-and-join", "--hbar", "1/7",
                                          "--truncation", "4"])
    assert code == EXIT_OK
    assert document["result"]["status"] == "verified"


def test_selftest_subset(capsys):
    code, document, err = run_json(capsys, ["selftest", "--only", "w_table", "--quick"])
    assert code == EXIT_OK
    assert document["result"] == {"passed": 1, "total": 1}
    assert "selftest: 1/1 passed" in err


def test_output_file(capsys, tmp_path):
    target = tmp_path / "k.json"
    assert run(["elsv-k", "--order", "2", "--output", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["result"] == {"K": ["-3", "-21/2"]}


def test_custom_responses_from_config(capsys, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"ui_preferences": {"custom_responses": {
        "verification_passed": "passed {subject} ({checked})",
        "selftest_summary": "",
    }}}), encoding="utf-8")
    code = run(["selftest", "--only", "w_table", "--quick", "--config", str(config)])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert "selftest:" not in captured.err
    assert "passed selftest (0)" in captured.err
