import json

import pytest

from nilpotent_as.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_presets(capsys):
    code, out, _ = run(capsys, "--preset", "q_p-zeta-x")
    assert code == 0
    doc = json.loads(out)
    assert doc["form"] == "group" and doc["params"]["mode"] == "char_0"
    code, out, _ = run(capsys, "--preset", "simplest-char-p", "--p", "5")
    assert code == 0 and out.startswith("# p=5 N=2")


def test_determinism(capsys):
    outs = [run(capsys, "--preset", "q_p-zeta-x")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_usage_errors(capsys):
    assert run(capsys, "--p", "4")[0] == 2
    assert run(capsys, "--beta", "0,1:1")[0] == 2
    assert run(capsys, "--class", "5")[0] == 2
    assert run(capsys, "--mode", "char_0", "--N0", "2", "--p", "3", "--form", "group", "--window", "2:1")[0] == 2
    assert run(capsys, "--verify", "nonsense")[0] == 2
    with pytest.raises(SystemExit):
        main(["--format", "yaml"])


def test_verify_and_out(capsys, tmp_path):
    path = tmp_path / "pres.tex"
    code, out, _ = run(capsys, "--window", "2:1", "--format", "latex", "--out", str(path), "--verify", "ch-axioms",
                       "--seed", "2")
    assert code == 0
    assert path.read_text().startswith(r"\begin{align*}")
    assert "PASS ch-axioms p=5 class=2 associativity" in out
    code, out, _ = run(capsys, "--window", "2:1", "--out", str(path), "--verify", "splitting")
    assert code == 1 and "FAIL splitting F_5 SR=0" in out


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"p": 7, "N": 1, "cbar0": "7", "beta": "0:2", "format": "json"}))
    code, out, _ = run(capsys, "--config", str(cfg))
    assert code == 0
    doc = json.loads(out)
    assert doc["params"]["p"] == 7 and [r["label"] for r in doc["relations"]] == ["R0(1)"]
    code, out, _ = run(capsys, "--config", str(cfg), "--p", "5", "--cbar0", "5")
    assert json.loads(out)["params"]["p"] == 5
