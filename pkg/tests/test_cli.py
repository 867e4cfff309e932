import csv
import json

import pytest

from lckpot.cli import SchemaMismatchError, main, report_diff, run
from lckpot.config import ConfigError, parse_config

SMALL = """
sampler: {count: 2000}
regmax: {pairs: 5000}
psh: {pairs: 4}
positivize: {count: 5000}
"""


def write(tmp_path, text, name="cfg.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_defaults_resolve():
    cfg = parse_config("")
    d = cfg.resolved()
    assert d["model"] == {"n": 2, "lambda": 2.0}
    assert d["pipeline"] == {"c": 0.5, "eps_scale": 0.1, "eps_band": 0.02, "delta": 0.01}
    assert cfg.selected_suites()[0] == "vuletescu"


@pytest.mark.parametrize(
    "text,msg",
    [
        ("model: {n: 2, lam: 3}", "unknown key model.lam"),
        ("bogus: 1", "unknown key bogus"),
        ("sampler: {count: many}", "expected an integer"),
        ("suites: [nope]", "unknown suite"),
        ("model: {lambda: 0.5}", "must exceed 1"),
        ("model: [1, 2", "line"),
        ("pipeline: 3", "expected a table"),
    ],
)
def test_config_errors(text, msg):
    with pytest.raises(ConfigError) as e:
        parse_config(text)
    assert msg in str(e.value)


def test_vuletescu_run_writes_witness_row(tmp_path):
    cfg = write(tmp_path, "suites: [vuletescu]\n")
    assert main(["run", cfg, "--out-dir", str(tmp_path / "out")]) == 0
    rows = list(csv.DictReader((tmp_path / "out" / "vuletescu.csv").open()))
    assert {"z1_re", "z2_im", "value", "min_eigenvalue", "verdict", "form_deviation"} <= set(rows[0])
    neg = [r for r in rows if float(r["value"]) < 0]
    assert neg and min(float(r["form_deviation"]) for r in neg) < 1e-15
    rec = json.loads((tmp_path / "out" / "run_record.json").read_text())
    assert rec["pass"] and rec["suites"]["vuletescu"]["pass"]
    assert rec["config"]["vuletescu"]["A"] == 3.0


def test_regmax_run_reports_zero_band_deviation(tmp_path):
    cfg = write(tmp_path, "suites: [regmax]\nregmax: {pairs: 20000}\n")
    assert main(["run", cfg, "--out-dir", str(tmp_path / "o")]) == 0
    rec = json.loads((tmp_path / "o" / "run_record.json").read_text())
    assert rec["suites"]["regmax"]["metrics"]["band_max_deviation"] == 0.0


def test_parse_error_exit_code(tmp_path, capsys):
    cfg = write(tmp_path, 'fields:\n  phi: "Re("\n')
    assert main(["run", cfg, "--out-dir", str(tmp_path / "o")]) == 2
    err = capsys.readouterr().err
    assert "fields.phi" in err and "column 4" in err


def test_missing_field_reference(tmp_path):
    cfg = write(tmp_path, "suites: [psh]\npsh: {field: nothere}\n")
    assert main(["run", cfg, "--out-dir", str(tmp_path / "o")]) == 2


def test_suite_failure_names_invariant(tmp_path, capsys):
    cfg = write(tmp_path, "suites: [vuletescu]\nvuletescu: {A: 1.0}\n")
    assert main(["run", cfg, "--out-dir", str(tmp_path / "o")]) == 1
    assert "negative-witness" in capsys.readouterr().out


def test_env_out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("LCKPOT_OUT_DIR", str(tmp_path / "env"))
    cfg = write(tmp_path, "suites: [levi]\n")
    assert main(["run", cfg]) == 0
    assert (tmp_path / "env" / "run_record.json").exists()


def test_determinism_and_diff(tmp_path, capsys):
    cfg = write(tmp_path, SMALL + "output: {svg: true}\n")
    a, b, c = (tmp_path / x for x in "abc")
    assert main(["run", cfg, "--out-dir", str(a)]) == 0
    assert main(["run", cfg, "--out-dir", str(b)]) == 0
    strip = lambda p: [l for l in p.read_text().splitlines() if '"timestamp"' not in l]  # noqa: E731
    assert strip(a / "run_record.json") == strip(b / "run_record.json")
    assert (a / "glue.svg").read_bytes() == (b / "glue.svg").read_bytes()
    assert (a / "psh.csv").read_bytes() == (b / "psh.csv").read_bytes()
    capsys.readouterr()
    assert main(["diff", str(a / "run_record.json"), str(b / "run_record.json")]) == 0
    assert capsys.readouterr().out == ""

    assert main(["run", cfg, "--out-dir", str(c), "--seed", "3"]) == 0
    ra, rc = (json.loads((p / "run_record.json").read_text()) for p in (a, c))
    d = report_diff(ra, rc)
    assert d.empty and d.drift
    assert any(p == "config.sampler.seed" for p, _, _ in d.drift)


def test_diff_names_flipped_suite(tmp_path):
    base = "suites: [glue]\nsampler: {count: 2000}\n"
    a = write(tmp_path, base, "a.yaml")
    b = write(tmp_path, base + "tolerances: {strict_margin: 1.0}\n", "b.yaml")
    run(parse_config(open(a).read()), tmp_path / "ra")
    run(parse_config(open(b).read()), tmp_path / "rb")
    ra, rb = (json.loads((tmp_path / p / "run_record.json").read_text()) for p in ("ra", "rb"))
    d = report_diff(ra, rb)
    assert d.flipped_suites == ["glue"]
    assert "flipped suites: glue" in d.text()


def test_diff_schema_mismatch(tmp_path):
    a = {"schema_version": "1.0", "suites": {}}
    b = {"schema_version": "2.0", "suites": {}}
    with pytest.raises(SchemaMismatchError):
        report_diff(a, b)
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    pa.write_text(json.dumps(a))
    pb.write_text(json.dumps(b))
    assert main(["diff", str(pa), str(pb)]) == 2


def test_timestamp_ignored():
    a = {"schema_version": "1.0", "timestamp": "x", "pass": True}
    b = dict(a, timestamp="y")
    d = report_diff(a, b)
    assert d.empty and not d.drift
