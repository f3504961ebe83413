"""Command-line interface: JSON round trips, exit codes, and self-checks.

Commands run in-process through cli.main so coverage and monkeypatching
work; two subprocess tests at the bottom exercise the real entry points.
"""

import json
import subprocess
import sys

import pytest

from nullcert import VerificationResult
from nullcert.cli import (
    EXIT_BUDGET,
    EXIT_DOMAIN,
    EXIT_NO_CERT,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_SELF_CHECK,
    main,
    parse_system_doc,
    serialize_system,
)
from helpers import chain_system


def run_cli(capsys, argv):
    try:
        rc = main(argv)
    except SystemExit as e:      # argparse usage errors
        rc = e.code
    captured = capsys.readouterr()
    out = captured.out
    try:
        parsed = json.loads(out) if out.strip() else None
    except json.JSONDecodeError:
        parsed = out
    return rc, parsed, captured.err


def write_doc(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.fixture
def chain33_path(tmp_path):
    doc = serialize_system(chain_system(3, 3), ["x", "y", "z"])
    return write_doc(tmp_path, "chain33.json", doc)


@pytest.fixture
def laurent_pair_path(tmp_path):
    doc = {
        "schema": "nullcert/1",
        "vars": ["x", "y"],
        "laurent": True,
        "polys": [
            [{"exp": [1, 0], "coef": "1"}, {"exp": [0, 1], "coef": "1"}],
            [{"exp": [1, 0], "coef": "1"}, {"exp": [0, 1], "coef": "2"}],
        ],
    }
    return write_doc(tmp_path, "laurent.json", doc)


# -- bound -------------------------------------------------------------------


def test_bound_degree_product(capsys, chain33_path):
    rc, out, _ = run_cli(capsys, ["bound", "--theorem", "thm3", chain33_path])
    assert rc == EXIT_OK
    assert out["theorem"] == "Thm3"
    assert out["degree_bound"] == 48
    assert out["inputs"]["degrees"] == [4, 3, 2]
    assert out["schema"] == "nullcert/1"


def test_bound_identity_support(capsys, chain33_path):
    rc, out, _ = run_cli(capsys, ["bound", "--theorem", "thm1", chain33_path])
    assert rc == EXIT_OK
    assert out["inputs"]["U"] == 12
    assert out["degree_bound"] == 34992          # 3^6 * 4 * 12
    assert out["support"]["dilation"] == 8748    # 3^6 * 12
    assert [1, 0, 0] in out["base_vertices"]


def test_bound_with_delta_flag(capsys, chain33_path):
    rc, out, _ = run_cli(capsys, ["bound", "--theorem", "thm4", "--delta", "2",
                                  chain33_path])
    assert rc == EXIT_OK
    assert out["degree_bound"] == 72
    rc, _, err = run_cli(capsys, ["bound", "--theorem", "thm4", chain33_path])
    assert rc == EXIT_DOMAIN
    assert "--delta" in err


def test_bound_volume_flavor_uses_euclidean_volume(capsys, chain33_path):
    rc, out, _ = run_cli(capsys, ["bound", "--theorem", "thm21", chain33_path])
    assert rc == EXIT_OK
    assert out["inputs"]["vol_P"] == "1/2"
    assert out["exponent_D"] == 27


def test_bound_bezout(capsys, chain33_path):
    rc, out, _ = run_cli(capsys, ["bound", "--theorem", "bezout", chain33_path])
    assert rc == EXIT_OK
    assert out["theorem"] == "bezout"
    assert out["value"] == 8


# -- solve / verify ----------------------------------------------------------


def test_solve_verify_round_trip(capsys, tmp_path, chain33_path):
    cert_path = str(tmp_path / "cert.json")
    rc, out, _ = run_cli(capsys, ["solve", chain33_path, "--budget", "54",
                                  "--emit", cert_path])
    assert rc == EXIT_OK
    emitted = json.loads((tmp_path / "cert.json").read_text())
    assert emitted["status"] == "ok"
    assert emitted["budget"] == 54
    rc, out, _ = run_cli(capsys, ["verify", chain33_path, cert_path])
    assert rc == EXIT_OK
    assert out == {"pass": True, "schema": "nullcert/1"}


def test_solve_auto_budget_comes_from_degree_product(capsys, tmp_path, chain33_path):
    rc, out, _ = run_cli(capsys, ["solve", chain33_path])
    assert rc == EXIT_OK
    assert out["status"] == "ok"
    assert out["budget"] == 48
    assert out["provenance"]["theorem"] == "Thm3"


def test_solve_minimal_reports_smallest_degree(capsys, chain33_path):
    rc, out, _ = run_cli(capsys, ["solve", chain33_path, "--budget", "8",
                                  "--minimal"])
    assert rc == EXIT_OK
    assert out["D_min"] == 6


def test_verify_flags_tampering_with_leading_monomial(capsys, tmp_path, chain33_path):
    cert_path = str(tmp_path / "cert.json")
    run_cli(capsys, ["solve", chain33_path, "--budget", "54", "--emit", cert_path])
    doc = json.loads((tmp_path / "cert.json").read_text())
    doc["cofactors"][0].append({"exp": [1, 1, 1], "coef": "1"})
    bad_path = write_doc(tmp_path, "bad.json", doc)
    rc, out, _ = run_cli(capsys, ["verify", chain33_path, bad_path])
    assert rc == EXIT_NO_CERT
    assert out["pass"] is False
    assert out["offending_monomial"] == [2, 4, 1]
    assert out["detail"]


def test_verify_arity_mismatch_is_a_domain_error(capsys, tmp_path, chain33_path):
    cert = {"schema": "nullcert/1", "vars": ["x", "y", "z"],
            "cofactors": [[{"exp": [0, 0, 0], "coef": "1"}]]}
    bad_path = write_doc(tmp_path, "short.json", cert)
    rc, _, err = run_cli(capsys, ["verify", chain33_path, bad_path])
    assert rc == EXIT_DOMAIN


def test_solve_failure_emits_a_record(capsys, tmp_path):
    doc = {"schema": "nullcert/1", "vars": ["x"],
           "polys": [[{"exp": [2], "coef": "1"}]]}
    path = write_doc(tmp_path, "xsq.json", doc)
    rc, out, _ = run_cli(capsys, ["solve", path, "--budget", "6"])
    assert rc == EXIT_NO_CERT
    assert out["status"] == "no-certificate"
    assert out["budget"] == 6
    rc, out, _ = run_cli(capsys, ["solve", path, "--budget", "6", "--minimal"])
    assert rc == EXIT_NO_CERT
    assert out["status"] == "no-certificate"


def test_solve_polytope_auto_hits_the_enumeration_cap(capsys, chain33_path):
    rc, _, err = run_cli(capsys, ["solve", chain33_path, "--mode", "polytope"])
    assert rc == EXIT_BUDGET
    assert "budget exceeded" in err


def test_solve_polytope_laurent_with_shift(capsys, tmp_path, laurent_pair_path):
    rc, out, _ = run_cli(capsys, ["solve", laurent_pair_path, "--mode",
                                  "polytope", "--budget", "1"])
    assert rc == EXIT_OK
    assert out["status"] == "ok"
    assert out["shift"] == [0, 1]
    cert_path = write_doc(tmp_path, "lcert.json", out)
    rc, out, _ = run_cli(capsys, ["verify", laurent_pair_path, cert_path])
    assert rc == EXIT_OK


def test_solve_self_check_failure_exits_10(capsys, chain33_path, monkeypatch):
    monkeypatch.setattr("nullcert.cli.verify_certificate",
                        lambda *a, **k: VerificationResult(False, "forced", None))
    rc, _, err = run_cli(capsys, ["solve", chain33_path, "--budget", "54"])
    assert rc == EXIT_SELF_CHECK
    assert "self-check" in err


# -- parse and domain errors -------------------------------------------------


def test_parse_errors_exit_2(capsys, tmp_path):
    base = {"schema": "nullcert/1", "vars": ["x"],
            "polys": [[{"exp": [1], "coef": "1"}]]}
    cases = [
        dict(base, schema="wrong/9"),
        dict(base, polys=[[{"exp": [1], "coef": 1.5}]]),
        dict(base, polys=[[{"exp": [1], "coef": "0"}]]),
        dict(base, polys=[[{"exp": [1], "coef": True}]]),
        dict(base, polys=[[{"exp": [1, 0], "coef": "1"}]]),
    ]
    for i, doc in enumerate(cases):
        path = write_doc(tmp_path, f"bad{i}.json", doc)
        rc, _, err = run_cli(capsys, ["volume", path])
        assert rc == EXIT_PARSE, (doc, err)
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    rc, _, _ = run_cli(capsys, ["volume", str(garbled)])
    assert rc == EXIT_PARSE


def test_missing_cofactors_is_a_parse_error(capsys, tmp_path, chain33_path):
    doc = {"schema": "nullcert/1", "vars": ["x", "y", "z"],
           "polys": [[{"exp": [0, 0, 0], "coef": "1"}]]}
    path = write_doc(tmp_path, "notacert.json", doc)
    rc, _, err = run_cli(capsys, ["verify", chain33_path, path])
    assert rc == EXIT_PARSE
    assert "cofactors" in err


def test_empty_system_is_a_domain_error(capsys, tmp_path):
    doc = {"schema": "nullcert/1", "vars": ["x"], "polys": []}
    path = write_doc(tmp_path, "empty.json", doc)
    rc, _, _ = run_cli(capsys, ["solve", path])
    assert rc == EXIT_DOMAIN


def test_duplicate_exponents_merge_on_parse(tmp_path):
    doc = {"schema": "nullcert/1", "vars": ["x"],
           "polys": [[{"exp": [1], "coef": "1"}, {"exp": [1], "coef": "2"}]]}
    polys, _, _, _ = parse_system_doc(doc)
    assert polys[0].coefficient((1,)) == 3


# -- volume / normality / subdivision ----------------------------------------


def test_volume_of_system_document(capsys, chain33_path):
    rc, out, _ = run_cli(capsys, ["volume", chain33_path])
    assert rc == EXIT_OK
    assert out["rho"] == 3
    assert out["normalized_volume"] == 3
    assert out["unmixed_volume"] == 3
    assert out["euclidean_volume"] == "1/2"
    assert [1, 3, 0] in out["vertices"]


def test_volume_of_point_document(capsys, tmp_path):
    doc = {"schema": "nullcert/1", "points": [[0, 0], [1, 0], [0, 2], [1, 2]]}
    path = write_doc(tmp_path, "rect.json", doc)
    rc, out, _ = run_cli(capsys, ["volume", path])
    assert rc == EXIT_OK
    assert out["normalized_volume"] == 4
    assert out["euclidean_volume"] == "2"
    # with bare points there is no system, so unmixed collapses to normalized
    assert out["unmixed_volume"] == out["normalized_volume"]


def test_normality_lifted_polytope(capsys, tmp_path):
    doc = {"schema": "nullcert/1", "points": [[0, 0], [1, 0], [0, 2], [1, 2]]}
    path = write_doc(tmp_path, "rect.json", doc)
    rc, out, _ = run_cli(capsys, ["normality", path, "--lift"])
    assert rc == EXIT_OK
    assert out["normal"] is True


def test_normality_gap_detection(capsys, tmp_path):
    doc = {"schema": "nullcert/1", "points": [[1, 0], [1, 2], [1, 3]]}
    path = write_doc(tmp_path, "gap.json", doc)
    rc, out, _ = run_cli(capsys, ["normality", path])
    assert rc == EXIT_OK
    assert out["normal"] is False
    assert out["counterexample"] == [1, 1]
    assert out["level"] == 1


def test_normality_requires_graded_points(capsys, tmp_path):
    doc = {"schema": "nullcert/1", "points": [[1, 0], [2, 0]]}
    path = write_doc(tmp_path, "ungraded.json", doc)
    rc, _, _ = run_cli(capsys, ["normality", path])
    assert rc == EXIT_DOMAIN


def test_subdivision_command_self_checks(capsys):
    rc, out, _ = run_cli(capsys, ["subdivide-pd", "--n", "2", "--d", "2"])
    assert rc == EXIT_OK
    assert out["count"] == 4
    assert out["normalized_volume"] == 4
    assert out["verified"] is True
    assert len(out["simplices"]) == 4


# -- algdeg ------------------------------------------------------------------


def test_algdeg_with_explicit_matrix(capsys, tmp_path, chain33_path):
    lam = {"schema": "nullcert/1",
           "matrix": [["0", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]]}
    path = write_doc(tmp_path, "rev.json", lam)
    rc, out, _ = run_cli(capsys, ["algdeg", chain33_path, "--lambda-file", path])
    assert rc == EXIT_OK
    assert out["min_delta"] == 2
    assert out["bezout_bound"] == 8
    rec = out["records"][0]
    assert rec["in_gamma"] is True and rec["t"] == 3 and rec["delta"] == 2


def test_algdeg_identity_matrix_true_value(capsys, tmp_path, chain33_path):
    lam = {"schema": "nullcert/1",
           "matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
    path = write_doc(tmp_path, "ident.json", lam)
    rc, out, _ = run_cli(capsys, ["algdeg", chain33_path, "--lambda-file", path])
    assert rc == EXIT_OK
    assert out["min_delta"] == 12


def test_algdeg_degenerate_matrix(capsys, tmp_path, chain33_path):
    lam = {"schema": "nullcert/1",
           "matrix": [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]}
    path = write_doc(tmp_path, "zero.json", lam)
    rc, out, _ = run_cli(capsys, ["algdeg", chain33_path, "--lambda-file", path])
    assert rc == EXIT_OK
    assert out["records"][0]["in_gamma"] is False
    assert out["min_delta"] is None


def test_algdeg_sampling_is_deterministic(capsys, chain33_path):
    rc1, out1, _ = run_cli(capsys, ["algdeg", chain33_path, "--samples", "3",
                                    "--seed", "11"])
    rc2, out2, _ = run_cli(capsys, ["algdeg", chain33_path, "--samples", "3",
                                    "--seed", "11"])
    assert rc1 == rc2 == EXIT_OK
    assert out1 == out2
    assert "note" in out1
    assert len(out1["records"]) == 3


# -- plumbing ----------------------------------------------------------------


def test_output_flag_writes_file(capsys, tmp_path, chain33_path):
    out_path = tmp_path / "report.json"
    rc, stdout, _ = run_cli(capsys, ["bound", "--theorem", "thm3", chain33_path,
                                     "--output", str(out_path)])
    assert rc == EXIT_OK
    assert stdout is None
    assert json.loads(out_path.read_text())["degree_bound"] == 48


def test_stdin_dash_reads_a_document():
    doc = {"schema": "nullcert/1", "points": [[0, 0], [2, 0], [0, 2]]}
    proc = subprocess.run([sys.executable, "-m", "nullcert", "volume", "-"],
                          input=json.dumps(doc), capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["normalized_volume"] == 4


def test_console_help_runs():
    proc = subprocess.run([sys.executable, "-m", "nullcert", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    for sub in ("bound", "solve", "verify", "volume", "normality"):
        assert sub in proc.stdout
