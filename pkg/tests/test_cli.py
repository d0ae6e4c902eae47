import json
from pathlib import Path

import pytest

from profam.cli import EXIT_CHECK, EXIT_IO, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_torus_nf(capsys):
    rc, out, _ = run(capsys, "torus", "nf", "--p", "3", "--q", "3", "--word", "x*y*x^-1")
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload == {"central": -1, "syllables": [["x", 1], ["y", 1], ["x", 2]]}


def test_torus_pairs(capsys):
    rc, out, _ = run(capsys, "torus", "pairs", "--p", "3", "--q", "3", "--bound", "5")
    assert rc == EXIT_OK
    assert json.loads(out) == [[1, 1], [4, 5]]


def test_torus_kernel(capsys):
    rc, out, _ = run(capsys, "torus", "kernel", "--p", "2", "--q", "2")
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["abelianization"] == {"free_rank": 2, "torsion": []}


def test_usage_errors(capsys):
    rc, _, _ = run(capsys, "torus", "frobnicate")
    assert rc == EXIT_USAGE
    rc, _, err = run(capsys, "torus", "nf", "--p", "3", "--q", "3", "--word", "zz")
    assert rc == EXIT_USAGE and "error" in err


def test_io_error(capsys):
    rc, _, err = run(capsys, "family", "fingerprint", "--family", "/nonexistent/f.json")
    assert rc == EXIT_IO and "i/o error" in err


def test_verify_example32_certificate(tmp_path, capsys):
    out = tmp_path / "cert.json"
    rc, _, _ = run(capsys, "verify", "example32", "--out", str(out))
    assert rc == EXIT_OK
    cert = json.loads(out.read_text())
    assert cert["schema"] == 1
    assert cert["pass"] is True
    assert len(cert["checks"]) == 9
    assert all(c["status"] == "pass" for c in cert["checks"])


def test_certificates_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "fingroup", "gaschutz", "--trials", "5", "--out", str(a))
    run(capsys, "fingroup", "gaschutz", "--trials", "5", "--out", str(b))
    ca, cb = json.loads(a.read_text()), json.loads(b.read_text())
    ca.pop("wall_time_s")
    cb.pop("wall_time_s")
    assert ca == cb


def test_seed_changes_witnesses(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "fingroup", "gaschutz", "--trials", "5", "--seed", "1", "--out", str(a))
    run(capsys, "fingroup", "gaschutz", "--trials", "5", "--seed", "2", "--out", str(b))
    ca, cb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ca["pass"] and cb["pass"]
    assert ca["parameters"]["seed"] != cb["parameters"]["seed"]


def test_reps_phi_matrix_output(tmp_path, capsys):
    out = tmp_path / "m.json"
    rc, _, _ = run(capsys, "reps", "phi", "--word", "x*y^-1", "--out", str(out))
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["rows"] == payload["cols"] == 12
    from profam.intmat import IntMatrix

    m = IntMatrix.from_json(payload)
    assert abs(m.det()) == 1


def test_reps_kernel_basis(capsys):
    rc, out, _ = run(capsys, "reps", "kernel-basis", "--p", "3", "--q", "3")
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["z"] == "x*x*x"


def test_family_pipeline_with_report(tmp_path, capsys):
    fam = tmp_path / "family.json"
    rc, _, _ = run(capsys, "family", "build", "--pairs", "2", "--out", str(fam))
    assert rc == EXIT_OK

    report = tmp_path / "fp.json"
    cert = tmp_path / "fp_cert.json"
    rc, _, _ = run(
        capsys,
        "family", "fingerprint", "--family", str(fam), "--max-order", "4",
        "--report", str(report), "--out", str(cert),
    )
    assert rc == EXIT_OK
    assert report.exists()
    assert report.with_suffix(".csv").exists()
    assert report.with_suffix(".png").exists()
    payload = json.loads(report.read_text())
    assert payload["all_equal"] is True
    assert payload["members"] == [[1, 1], [4, 5]]
    csv_text = report.with_suffix(".csv").read_text()
    assert csv_text.splitlines()[0] == "target,hom_1_1,epi_1_1,hom_4_5,epi_4_5"


def test_family_congruence_failure_exit_code(tmp_path, capsys):
    # a planted family whose second member has a non-generating pair
    fam = tmp_path / "family.json"
    run(capsys, "family", "build", "--pairs", "1", "--out", str(fam))
    payload = json.loads(fam.read_text())
    corrupt = dict(payload["members"][0])
    corrupt["my"] = corrupt["mx"]
    payload["members"].append(corrupt)
    fam.write_text(json.dumps(payload))
    rc, _, err = run(capsys, "family", "congruence", "--family", str(fam), "--mod", "3")
    assert rc == EXIT_CHECK
    assert "FAIL" in err


def test_tsys_bfs_cli(tmp_path, capsys):
    out = tmp_path / "bfs.json"
    rc, _, _ = run(
        capsys,
        "tsys", "bfs", "--p", "3", "--q", "3", "--from", "1,1", "--to", "1,1",
        "--depth", "2", "--cap", "30", "--out", str(out),
    )
    assert rc == EXIT_OK
    assert json.loads(out.read_text())["status"] == "found"


def test_tsys_orbits_cli(tmp_path, capsys):
    gpath = tmp_path / "c5.json"
    from profam.fingroup import cyclic

    gpath.write_text(json.dumps(cyclic(5).to_json()))
    rc, out, _ = run(capsys, "tsys", "orbits", "--group", str(gpath), "--d", "1", "--mode", "tsystem")
    assert rc == EXIT_OK
    assert len(json.loads(out)["orbits"]) == 1


def test_tsys_invariants_cli(tmp_path, capsys):
    fam = tmp_path / "family.json"
    run(capsys, "family", "build", "--pairs", "2", "--out", str(fam))
    report = tmp_path / "inv.json"
    rc, _, _ = run(
        capsys, "tsys", "invariants", "--family", str(fam), "--mods", "2,4",
        "--report", str(report),
    )
    assert rc == EXIT_OK
    assert report.exists()
    assert report.with_suffix(".csv").exists()
    assert report.with_suffix(".png").exists()
    payload = json.loads(report.read_text())
    assert {v["status"] for v in payload["verdicts"]} <= {"conclusive", "inconclusive"}


def test_fingroup_krasner_cli(tmp_path, capsys):
    from profam.fingroup import cyclic

    data = {"group": cyclic(4).to_json(), "kernel": [0, 2]}
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(data))
    out = tmp_path / "cert.json"
    rc, _, _ = run(capsys, "fingroup", "krasner", "--input", str(path), "--out", str(out))
    assert rc == EXIT_OK
    cert = json.loads(out.read_text())
    assert cert["pass"] is True
    assert cert["checks"][0]["witness"]["wreath_order"] == 8


def test_help_exits_zero(capsys):
    rc, out, _ = run(capsys, "--help")
    assert rc == EXIT_OK


def test_version(capsys):
    rc, out, _ = run(capsys, "--version")
    assert rc == EXIT_OK
