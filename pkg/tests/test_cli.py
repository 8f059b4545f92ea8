import io
import json
import os
import subprocess
import sys

import pytest

from mcld.cli import main
from mcld.hypothesis import HypothesisClass, constant_class, make_threshold_pair_class
from mcld.repdim import point_mass


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def verdicts(report):
    return {c["name"]: c["verdict"] for c in report["checks"]}


@pytest.fixture
def files(tmp_path):
    tp = tmp_path / "tp5.json"
    tp.write_text(make_threshold_pair_class(5).dumps())
    single = tmp_path / "single.json"
    single.write_text(constant_class([1], 3, 2).dumps())
    binary = tmp_path / "bin.json"
    binary.write_text(HypothesisClass([(0, 0), (1, 0), (1, 1)], 1).dumps())
    return {"tp": str(tp), "single": str(single), "bin": str(binary), "dir": tmp_path}


def test_construct_outputs_class_json(capsys, files):
    code, js = run(capsys, "construct", "--threshold-pair", "5")
    assert code == 0 and HypothesisClass.from_json(js) == make_threshold_pair_class(5)
    code, js = run(capsys, "construct", "--point", "1", "3")
    assert code == 0 and len(js["functions"]) == 3
    p = files["dir"] / "p.json"
    p.write_text(json.dumps(js))
    code, js = run(capsys, "construct", "--product", str(p), str(p), "--k", "3")
    assert code == 0 and js["k"] == 3 and len(js["functions"]) == 9
    code, js = run(capsys, "construct", "--amplify", files["tp"], "2")
    assert code == 0 and js["domain_size"] == 6


def test_dims_report_shape(capsys, files):
    rep_path = files["dir"] / "r.json"
    code, js = run(capsys, "dims", files["tp"], "--report", str(rep_path))
    assert code == 0
    assert set(js) == {"command", "version", "config", "checks", "result", "timings"}
    assert js["result"]["mld"] == 1
    assert js["config"]["seed"] == 0 and "max_class_size" in js["config"]["caps"]
    names = [c["name"] for c in js["checks"]]
    assert names == sorted(names)
    assert all(c["anchor"] for c in js["checks"])
    assert json.loads(rep_path.read_text())["checks"] == js["checks"]


def test_covers(capsys, files):
    w = files["dir"] / "w.json"
    code, js = run(capsys, "covers", files["tp"], "--depth", "2", "--exact", "--witness", str(w),
                   "--seed", "4")
    assert code == 0 and set(verdicts(js).values()) == {"pass"}
    assert js["result"]["min_cover_size"] <= js["result"]["cover_size"]
    assert json.loads(w.read_text())["certified"]


@pytest.mark.parametrize("learner", ["soa", "bitwise", "wm"])
def test_online(capsys, files, learner):
    code, js = run(capsys, "online", files["tp"], "--learner", learner, "--horizon", "3",
                   "--adversary")
    assert code == 0 and set(verdicts(js).values()) == {"pass"}
    code, js = run(capsys, "online", files["tp"], "--learner", learner, "--horizon", "4", "--seed", "2")
    assert code == 0


def test_dp_verify(capsys, files):
    ds = files["dir"] / "ds.json"
    ds.write_text(json.dumps({"points": [[0, 1], [1, 0]]}))
    code, js = run(capsys, "dp-verify", files["bin"], "--dataset", str(ds), "--eps", "1")
    assert code == 0 and js["result"]["passed"]
    code, js = run(capsys, "dp-verify", files["bin"], "--dataset", str(ds), "--eps", "1",
                   "--mode", "mc", "--samples", "400", "--seed", "3")
    assert code == 0


def test_learn(capsys, files):
    s = files["dir"] / "s.json"
    f = make_threshold_pair_class(5).rows[1]
    s.write_text(json.dumps([[x, f[x]] for x in (0, 1, 2, 0, 1, 2)]))
    code, js = run(capsys, "learn", files["tp"], "--reduction", "--sample", str(s), "--eps", "2",
                   "--target", "1", "--seed", "5")
    assert code == 0 and len(js["result"]["hypothesis"]) == 3


def test_repdim(capsys, files):
    rep = files["dir"] / "rep.json"
    H = HypothesisClass.from_json(json.load(open(files["bin"])))
    rep.write_text(json.dumps(point_mass(H).to_json()))
    code, js = run(capsys, "repdim", files["bin"], "--check", str(rep), "--bruteforce",
                   "--wm-experiment", "--trials", "20", "--seed", "1")
    assert code == 0 and set(verdicts(js).values()) == {"pass"}
    assert "monte_carlo_mean_mistakes" in js["result"]["wm_experiment"]


def test_verify_all_examples(capsys, files, monkeypatch):
    code, js = run(capsys, "verify-all", files["single"])
    assert code == 0 and js["result"]["class0000"]["mld"] == 0
    monkeypatch.setattr(sys, "stdin", io.StringIO(make_threshold_pair_class(5).dumps()))
    code, js = run(capsys, "verify-all", "-")
    assert code == 0 and js["result"]["class0000"]["mld"] == 1
    code, js = run(capsys, "verify-all", "--construct", "threshold-pair", "5")
    assert code == 0


def test_verify_all_random_is_deterministic(capsys):
    code1, a = run(capsys, "verify-all", "--random", "200", "--seed", "7")
    code2, b = run(capsys, "verify-all", "--random", "200", "--seed", "7")
    assert code1 == code2 == 0
    a.pop("timings"), b.pop("timings")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "fail" not in {c["verdict"] for c in a["checks"]}


def test_tightness_examples(capsys):
    code, js = run(capsys, "tightness", "--k", "5", "--d", "1")
    assert code == 0 and set(verdicts(js).values()) == {"pass"}
    code, js = run(capsys, "tightness", "--k", "3", "--d", "1")
    assert code == 0 and verdicts(js) == {"point_product_mld_equals_d_bits": "pass"}
    code, js = run(capsys, "tightness", "--k", "3", "--d", "0")
    assert code == 0 and verdicts(js) == {"zero_dimension_trivial": "pass"}


def test_end_to_end_examples(capsys, files):
    code, js = run(capsys, "end-to-end", files["single"], "--concept", "0", "--n", "4", "--eps", "1")
    assert code == 0 and js["result"]["error"] == "0/1" and js["result"]["dp"]["passed"]
    code, js = run(capsys, "end-to-end", files["tp"], "--concept", "2", "--n", "3", "--eps", "0.01",
                   "--seed", "3")
    assert code == 0 and js["result"]["dp"]["passed"]


def test_exit_codes(capsys, files):
    assert main(["dims", str(files["dir"] / "missing.json")]) == 2
    assert main(["dims"]) == 2
    bad = files["dir"] / "bad.json"
    bad.write_text("{not json")
    assert main(["dims", str(bad)]) == 2
    assert main(["end-to-end", files["tp"], "--concept", "9", "--n", "3", "--eps", "1"]) == 2
    assert main(["tightness", "--k", "7", "--d", "2"]) == 3
    assert main(["dims", files["tp"], "--cap", "bogus=1"]) == 2
    capsys.readouterr()


def test_failed_check_gives_exit_one(capsys, files, monkeypatch):
    import mcld.cli as cli
    from mcld.experiments import Check
    monkeypatch.setattr(cli, "tightness", lambda k, d, caps: [Check("x", 1, 0, "fail", "a")])
    assert main(["tightness", "--k", "5", "--d", "1"]) == 1
    capsys.readouterr()


def test_env_cap_override(files):
    env = dict(os.environ, MCLD_MAX_CLASS_SIZE="2")
    out = subprocess.run([sys.executable, "-m", "mcld.cli", "dims", files["tp"]], env=env,
                         capture_output=True, text=True)
    assert out.returncode == 3
    rep = json.loads(out.stdout)
    assert rep["config"]["caps"]["max_class_size"] == 2
    assert [c["verdict"] for c in rep["checks"]] == ["skipped-cap"]
