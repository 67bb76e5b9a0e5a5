import json

import numpy as np
import pytest

from rieffel.cli import main
from rieffel.grids import GridSpec
from rieffel.mgf import read_mgf, write_mgf
from rieffel.module_space import ModuleFunction
from rieffel.suites import (SUITE_NAMES, SuiteConfig, check_rng, run_suite)


def stored_field(path, seed, npts=32, k=2, alpha=0.5):
    g = GridSpec(2, npts, 8.0)
    r = np.random.default_rng(seed)
    mesh = g.mesh()
    r2 = sum(m * m for m in mesh)
    M = r.normal(size=(k, k)) + 1j * r.normal(size=(k, k))
    f = ModuleFunction(g, np.exp(-alpha * r2)[..., None, None] * M)
    write_mgf(path, f)
    return f


# ---- suite machinery


def test_check_rng_deterministic():
    a = check_rng(7, "suite.check").normal(size=4)
    b = check_rng(7, "suite.check").normal(size=4)
    c = check_rng(7, "suite.other").normal(size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_suite_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(suite="nope")
    with pytest.raises(ValueError):
        SuiteConfig(points=48)
    with pytest.raises(ValueError):
        SuiteConfig(n=3)


def test_run_suite_deterministic_payload():
    cfg = SuiteConfig(suite="module_axioms", points=16, seed=11)
    r1 = run_suite(cfg)
    r2 = run_suite(cfg)
    assert r1.passed
    assert r1.canonical_payload() == r2.canonical_payload()


def test_tolerance_override_can_fail_suite():
    cfg = SuiteConfig(suite="fourier", points=32, seed=3,
                      tolerances={"fourier.round_trip": 1e-300})
    report = run_suite(cfg)
    assert not report.passed
    bad = [c for c in report.checks if c.check_id == "fourier.round_trip"]
    assert len(bad) == 1 and not bad[0].passed


def test_report_serialization():
    report = run_suite(SuiteConfig(suite="fourier", points=16, seed=5))
    doc = json.loads(report.to_json())
    assert doc["suite"] == "fourier"
    assert "generated" in doc
    csv = report.to_csv()
    assert csv.splitlines()[0] == "check,residual,tolerance,passed"
    assert len(csv.splitlines()) == len(report.checks) + 1


# ---- CLI subcommands (in-process)


def test_cli_info(capsys):
    assert main(["info"]) == 0
    out = capsys.readouterr().out
    assert "rieffel" in out and "suites" in out


def test_cli_info_on_file(tmp_path, capsys):
    p = tmp_path / "f.mgf"
    stored_field(p, 0)
    assert main(["info", str(p)]) == 0
    assert "n=2 N=32" in capsys.readouterr().out


def test_cli_verify_small(tmp_path, capsys):
    out = tmp_path / "report.json"
    csv = tmp_path / "report.csv"
    code = main(["verify", "module_axioms", "--grid", "2,16,8.0",
                 "--seed", "9", "--out", str(out), "--csv", str(csv)])
    assert code == 0
    printed = capsys.readouterr().out
    assert "suite module_axioms: PASS" in printed
    doc = json.loads(out.read_text())
    assert doc["passed"] is True
    assert csv.read_text().startswith("check,")


def test_cli_verify_bad_suite():
    assert main(["verify", "bogus"]) == 2


def test_cli_verify_config_file(tmp_path):
    cfgp = tmp_path / "cfg.json"
    cfgp.write_text(json.dumps({"points": 16, "seed": 4}))
    assert main(["verify", "module_axioms", "--config", str(cfgp)]) == 0


def test_cli_verify_rejects_unknown_config_field(tmp_path, capsys):
    cfgp = tmp_path / "cfg.json"
    cfgp.write_text(json.dumps({"points": 16, "bogus_field": 1}))
    assert main(["verify", "module_axioms", "--config", str(cfgp)]) == 2
    assert "unknown config fields" in capsys.readouterr().err


def test_cli_product_matches_apply(tmp_path):
    fp, up = tmp_path / "F.mgf", tmp_path / "u.mgf"
    stored_field(fp, 1)
    stored_field(up, 2)
    pp, ap = tmp_path / "prod.mgf", tmp_path / "app.mgf"
    assert main(["product", str(fp), str(up), "--out", str(pp)]) == 0
    assert main(["apply", str(fp), str(up), "--out", str(ap)]) == 0
    prod = read_mgf(pp)
    app = read_mgf(ap)
    assert np.array_equal(prod.samples, app.samples)


def test_cli_product_requires_out(tmp_path, capsys):
    fp = tmp_path / "F.mgf"
    stored_field(fp, 3)
    assert main(["product", str(fp), str(fp)]) == 2
    assert "requires --out" in capsys.readouterr().err


def test_cli_recover_accepts_translation_symbol(tmp_path, capsys):
    fp = tmp_path / "F.mgf"
    stored_field(fp, 4, alpha=1.0)
    out = tmp_path / "rec.mgf"
    assert main(["recover", str(fp), "--out", str(out)]) == 0
    assert "recovery sup error" in capsys.readouterr().out
    assert out.exists()


def test_cli_recover_tight_tolerance_fails(tmp_path):
    fp = tmp_path / "F.mgf"
    stored_field(fp, 5, alpha=1.0)
    assert main(["recover", str(fp), "--tol", "1e-300"]) == 1


def test_cli_truncated_file(tmp_path, capsys):
    fp = tmp_path / "F.mgf"
    stored_field(fp, 6)
    fp.write_bytes(fp.read_bytes()[:-8])
    assert main(["info", str(fp)]) == 2
    assert "grid file error" in capsys.readouterr().err


def test_cli_no_command(capsys):
    assert main([]) == 2


def test_all_suite_names_registered():
    from rieffel.suites import SUITE_CHECKS
    assert set(SUITE_NAMES) == set(SUITE_CHECKS)
