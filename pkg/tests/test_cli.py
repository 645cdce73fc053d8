import io
import json

import pytest

from ternpoly.cli import OutputRecord, bench_triple, check_triple, corpus, main


def run(argv, capsys):
    code = main(["--no-timestamp"] + argv)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines()]


def test_profile_example(capsys):
    code, recs = run(["profile", "3", "5", "7"], capsys)
    assert code == 0
    prof = recs[0]["results"]["profile"]
    assert prof["coeff_set"] == [-2, -1, 0, 1] and prof["height"] == 2 and prof["diameter"] == 3


def test_profile_both_and_flat(capsys):
    code, recs = run(["profile", "3", "5", "16", "--both"], capsys)
    assert code == 0 and recs[0]["verified"] is True
    assert recs[0]["results"]["profile"]["height"] == 1


def test_profile_invalid(capsys):
    code, recs = run(["profile", "3", "5", "6"], capsys)
    assert code == 2 and recs == []


def test_profile_oracle_cap(capsys):
    code, _ = run(["--cap-degree", "100", "profile", "5", "37", "93", "--oracle"], capsys)
    assert code == 2


@pytest.mark.parametrize("mode", ["--engine", "--oracle"])
def test_emit_coeffs(tmp_path, capsys, mode):
    path = tmp_path / "c.csv"
    code, _ = run(["profile", "3", "5", "7", mode, "--emit-coeffs", str(path)], capsys)
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "m,a_m" and len(lines) == 50
    assert lines[1] == "0,1" and lines[8] == "7,-2"


def test_predict(capsys):
    code, recs = run(["predict", "5", "2", "37", "93"], capsys)
    pred = recs[0]["results"]["prediction"]
    assert code == 0 and (pred["case"], pred["a_minus"], pred["a_plus"]) == ("iv", -3, 2)
    code, recs = run(["predict", "5", "2", "37", "92"], capsys)
    pred = recs[0]["results"]["prediction"]
    assert code == 0 and pred["mirrored"] and (pred["a_minus"], pred["a_plus"]) == (-2, 3)
    code, recs = run(["predict", "5", "3", "37", "93"], capsys)
    assert code == 2 and any("not t=3" in v for v in recs[0]["results"]["violations"])


def test_predict_loose_verifies(capsys):
    code, recs = run(["predict", "3", "2", "5", "7", "--no-strict"], capsys)
    assert code == 0 and recs[0]["verified"] is True
    assert recs[0]["results"]["computed"]["coeff_set"] == [-2, -1, 0, 1]


def test_solve(capsys):
    code, recs = run(["solve", "height", "7", "4", "--verify"], capsys)
    w = recs[0]["results"]["witness"]
    assert code == 0 and (w["t"], w["q"], w["r"], w["verified"]) == (5, 61, 171, True)
    code, recs = run(["solve", "diameter", "13", "6"], capsys)
    assert code == 0 and recs[0]["results"]["witness"]["t"] == 6
    code, recs = run(["solve", "diameter", "11", "4"], capsys)
    assert code == 0 and recs[0]["results"]["witness"] is None
    code, recs = run(["solve", "diameter-any-p", "9"], capsys)
    assert code == 0 and recs[0]["results"]["witness"]["p"] == 11


def test_solve_bad_input(capsys):
    assert run(["solve", "height", "7", "5"], capsys)[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["solve", "height", "7"])
    assert e.value.code == 2


def test_verify_corpus_single_and_empty(capsys):
    code, recs = run(["verify-corpus", "--triple", "3", "5", "7"], capsys)
    assert code == 0 and "pinned" in recs[0]["results"]["checks"]
    assert recs[-1]["results"]["summary"] == {"triples": 1, "passed": 1, "failed": 0}
    code, recs = run(["verify-corpus", "0", "0", "0"], capsys)
    assert code == 0 and recs[-1]["results"]["summary"] == {"triples": 0, "passed": 0, "failed": 0}


def test_verify_corpus_small(capsys):
    code, recs = run(["--jobs", "2", "verify-corpus", "9", "11", "13"], capsys)
    assert code == 0
    assert recs[-1]["results"]["summary"]["triples"] == len(list(corpus(9, 11, 13))) > 10


def test_check_triple_covers_identities():
    res = check_triple((3, 11, 17))
    assert not res["failures"]
    assert {"shift", "negation", "case-table"} <= set(res["checks"])
    assert "flat" in check_triple((3, 5, 16))["checks"]


def test_audit(capsys):
    code, recs = run(["audit", "L11", "L12", "L14", "--conforming", "5"], capsys)
    assert code == 0 and len(recs) == 12 and all(r["verified"] for r in recs)
    skipped = [r for r in recs if "skipped" in r["results"]]
    assert len(skipped) == 2 and all(r["results"]["height"] == 1 for r in skipped)
    code, recs = run(["audit", "L5", "L6", "--all-small", "--max-degree", "500"], capsys)
    assert code == 0 and [r["results"]["lemma"] for r in recs] == ["L5", "L6"]
    code, recs = run(["audit", "L1"], capsys)
    assert code == 0 and recs[0]["results"]["failures"] == []


def test_audit_usage(capsys):
    assert run(["audit", "L11"], capsys)[0] == 2
    assert run(["audit", "L77", "--conforming", "3"], capsys)[0] == 2


def test_bench(capsys):
    code, recs = run(["bench", "--degree", "2e5"], capsys)
    res = recs[0]["results"]
    assert code == 0 and res["degree"] >= 2 * 10**5 and res["steps_per_second"] > 0


def test_bench_triple():
    t = bench_triple(5 * 10**7)
    assert t.degree >= 5 * 10**7 and (t.p, t.q) == (11, 127)


def test_record_round_trip(capsys):
    main(["profile", "3", "5", "7"])
    line = capsys.readouterr().out.strip()
    assert OutputRecord.from_json(line).to_json() == line
    assert json.loads(line)["timestamp"] is not None


def test_deterministic(capsys):
    a = run(["solve", "height", "5", "3"], capsys)
    b = run(["solve", "height", "5", "3"], capsys)
    assert a == b


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"cap_degree": 100}))
    code, _ = run(["--config", str(cfg), "profile", "5", "37", "93", "--oracle"], capsys)
    assert code == 2


def test_module_entry():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-m", "ternpoly", "--no-timestamp", "profile", "3", "5", "7"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert json.loads(out)["results"]["profile"]["height"] == 2


def test_output_record_fields():
    rec = OutputRecord("x", {"a": 1}, {"b": 2}, True, None)
    assert list(json.loads(rec.to_json())) == ["schema_version", "command", "inputs", "results", "verified", "timestamp"]
    assert isinstance(io.StringIO(rec.to_json()).read(), str)
