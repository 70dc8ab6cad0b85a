import json

import pytest

from pseudobosons import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_passes_inside_disk(capsys):
    code, out, err = run(capsys, "verify", "--alpha", "0.3",
                         "--dim", "48", "--nmax", "10")
    assert code == 0
    assert "FAIL" not in out
    assert "PASS commutator_identity" in out
    assert "PASS biorthonormality" in out
    assert "SKIP counterexample: not applicable" in out


def test_verify_rejects_disk_violation(capsys):
    code, out, err = run(capsys, "verify", "--alpha", "0.6")
    assert code == 2
    assert out == ""
    assert "disk" in err


def test_verify_bad_dimension_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--dim", "8", "--nmax", "16")
    assert code == 2
    assert "dim" in err


def test_verify_tolerance_override_can_fail(capsys):
    code, out, _ = run(capsys, "verify", "--alpha", "0.3", "--dim", "48",
                       "--nmax", "10", "--tol", "biorthonormality=1e-30")
    assert code == 1
    assert "FAIL biorthonormality" in out


def test_verify_json_report_structure(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--alpha", "0.3", "--dim", "48",
                     "--nmax", "10", "--format", "json", "--out", str(out_file))
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["meta"]["alpha"] == "0.29999999999999999,0"
    assert report["meta"]["dim"] == 48
    names = [c["name"] for c in report["checks"]]
    assert "eigen_phi" in names and "frame_psd" in names
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["counterexample"]["status"] == "not-applicable"
    assert all(c["pass"] for c in report["checks"])


def test_json_reports_are_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code, _, _ = run(capsys, "verify", "--family", "gauss-raising",
                         "--beta", "0.2", "--dim", "48", "--nmax", "10",
                         "--format", "json", "--out", str(p))
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_raising_family_skips_reconstruction(tmp_path, capsys):
    out_file = tmp_path / "gr.json"
    code, _, _ = run(capsys, "verify", "--family", "gauss-raising",
                     "--beta", "0.2", "--dim", "48", "--nmax", "10",
                     "--format", "json", "--out", str(out_file))
    assert code == 0
    by_name = {c["name"]: c for c in json.loads(out_file.read_text())["checks"]}
    assert by_name["reconstruction"]["status"] == "not-applicable"
    assert by_name["adjoint_gap"]["comparison"] == "ge"


def test_landau_suite(tmp_path, capsys):
    out_file = tmp_path / "landau.json"
    code, _, _ = run(capsys, "landau", "--alpha", "0.3", "--beta", "0.2",
                     "--dim", "16", "--nmax", "4", "--format", "json",
                     "--out", str(out_file))
    assert code == 0
    by_name = {c["name"]: c for c in json.loads(out_file.read_text())["checks"]}
    for name in ("quadrature_ccr", "coordinate_form_1", "coordinate_form_2",
                 "combined_commutator", "two_index_biorthonormality",
                 "counterexample", "counterexample_f_norm"):
        assert by_name[name]["pass"], name


def test_landau_rejects_outside_disk(capsys):
    code, _, err = run(capsys, "landau", "--alpha", "0.5", "--beta", "0.2",
                       "--dim", "16", "--nmax", "4")
    assert code == 2
    assert "disk" in err


def test_sweep_table(tmp_path, capsys):
    out_file = tmp_path / "sweep.json"
    code, _, _ = run(capsys, "sweep", "--grid", "0;0.3;0.55",
                     "--dim", "48", "--nmax", "10",
                     "--format", "json", "--out", str(out_file))
    assert code == 0
    table = json.loads(out_file.read_text())["tables"]["sweep"]
    rows = {row[0]: row for row in table["rows"]}
    assert rows["0.29999999999999999,0"][1] == "convergent"
    assert float(rows["0.29999999999999999,0"][2]) == pytest.approx(1.25, abs=1e-9)
    divergent = rows["0.55000000000000004,0"]
    assert divergent[1] == "divergent"
    assert divergent[2:] == [None, None, None, None]


def test_sweep_requires_grid(capsys):
    code, _, err = run(capsys, "sweep")
    assert code == 2
    assert "grid" in err


def test_sweep_rejects_large_parameter(capsys):
    code, _, err = run(capsys, "sweep", "--grid", "0.1;1.5")
    assert code == 2


def test_nogo_report(tmp_path, capsys):
    out_file = tmp_path / "nogo.json"
    code, _, _ = run(capsys, "nogo", "--power", "2", "--alpha", "1",
                     "--kmax", "20", "--format", "json", "--out", str(out_file))
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["meta"]["classification"] == "divergent"
    assert report["meta"]["crossing_index"] is not None
    coeffs = report["tables"]["coefficients"]["rows"]
    assert coeffs[0] == [0, 0]
    # log10 |c_3|^2 = log10(2/3)
    assert float(coeffs[1][1]) == pytest.approx(-0.17609125905568124, rel=1e-12)


def test_nogo_usage_errors(capsys):
    code, _, err = run(capsys, "nogo", "--power", "1", "--alpha", "0.5")
    assert code == 2
    code, _, err = run(capsys, "nogo", "--alpha", "0.5")
    assert code == 2
    assert "power" in err


def test_csv_format_has_header(capsys):
    code, out, _ = run(capsys, "verify", "--alpha", "0", "--dim", "24",
                       "--nmax", "6", "--format", "csv")
    assert code == 0
    header = out.splitlines()[0]
    assert header == "name,status,observed,tolerance,comparison,pass,provenance"


def test_config_file_merging(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("alpha = 0.3  # deformation\ndim = 48\nnmax = 10\n"
                   "tol.biorthonormality = 1e-8\n")
    out_file = tmp_path / "merged.json"
    code, _, _ = run(capsys, "verify", "--config", str(cfg), "--nmax", "8",
                     "--format", "json", "--out", str(out_file))
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["meta"]["nmax"] == 8  # explicit flag wins
    assert report["meta"]["dim"] == 48
    assert float(report["meta"]["tolerances"]["biorthonormality"]) == 1e-8


def test_config_file_malformed_line(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("alpha 0.3\n")
    code, _, err = run(capsys, "verify", "--config", str(cfg))
    assert code == 2
    assert "malformed" in err


def test_parse_complex():
    assert cli.parse_complex("0.3") == 0.3 + 0j
    assert cli.parse_complex("0.1,-0.2") == 0.1 - 0.2j
    with pytest.raises(Exception):
        cli.parse_complex("1,2,3")
