"""Descriptor grammar, report content, exit codes, determinism."""

import json

import pytest

from kmu.cli import (
    build_report,
    load_descriptor,
    main,
    parse_descriptor,
    sweep_report,
)
from kmu.errors import DescriptorError, KmuError
from kmu.report import LAMBDA_NOTE


def write_descriptor(tmp_path, payload, name="model.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def run_cli(capsys, args):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# descriptor grammar
# ---------------------------------------------------------------------------


def test_descriptor_parses_rational_strings():
    desc = parse_descriptor({"n": 3, "alpha": "1/2", "beta": "5/2"})
    assert desc.n == 3
    assert str(desc.alpha) == "1/2"


@pytest.mark.parametrize(
    "payload",
    [
        {"n": 2, "alpha": 0.5, "beta": "2"},
        {"n": 2, "alpha": "1.5", "beta": "2"},
        {"n": 2.0, "alpha": "1", "beta": "2"},
        {"n": 2, "alpha": "1", "beta": "2", "extra": 1},
        {"n": 2, "alpha": "1"},
        {"n": 2, "alpha": "1", "beta": "2", "submanifolds": [{"kind": "x", "q": 1}]},
    ],
)
def test_descriptor_rejects_bad_grammar(payload):
    with pytest.raises((DescriptorError, KmuError)):
        parse_descriptor(payload)


def test_load_descriptor_missing_file():
    with pytest.raises(DescriptorError):
        load_descriptor("/nonexistent/path.json")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_basic_model(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 2, "alpha": "0", "beta": "2"})
    code, out, _ = run_cli(capsys, ["verify", path])
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["invariants"] == {
        "kappa": "0",
        "mu": "4",
        "lambda": "1",
        "boeckx_invariant": "-1",
    }
    assert all(r["status"] == "pass" for r in report["identities"])
    assert all(r["residual"] == "0" for r in report["identities"])
    assert LAMBDA_NOTE in report["notes"]


def test_verify_degenerate_model_fails_with_stage(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 2, "alpha": "1", "beta": "1"})
    code, out, err = run_cli(capsys, ["verify", path])
    assert code == 1
    error = json.loads(err)["error"]
    assert error["stage"] == "verify"
    assert "beta" in error["message"]


def test_verify_with_deformation_block(tmp_path, capsys):
    path = write_descriptor(
        tmp_path, {"n": 3, "alpha": "1", "beta": "3", "deformation_a": "2"}
    )
    code, out, _ = run_cli(capsys, ["verify", path])
    assert code == 0
    block = json.loads(out)["deformation"]
    assert block["after"]["kappa"] == "0"
    assert block["after"]["mu"] == "9/2"
    assert block["after"]["boeckx_invariant"] == "-5/4"
    assert block["kappa_mu_match"] == "pass"
    assert block["boeckx_invariance"] == "pass"


def test_verify_with_submanifold_blocks(tmp_path, capsys):
    path = write_descriptor(
        tmp_path,
        {
            "n": 3,
            "alpha": "0",
            "beta": "2",
            "submanifolds": [
                {"kind": "x"},
                {"kind": "diag", "c": "1", "d": "1"},
            ],
        },
    )
    code, out, _ = run_cli(capsys, ["verify", path])
    assert code == 0
    blocks = json.loads(out)["submanifolds"]
    assert blocks[0]["classification"] == "totally_geodesic"
    assert blocks[1]["classification"] == "totally_umbilical"
    # V = 2 c d lambda / (c^2 + d^2) xi = xi for c = d = lambda = 1
    assert blocks[1]["V"][0] == "1"


# ---------------------------------------------------------------------------
# deform
# ---------------------------------------------------------------------------


def test_deform_command(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 2, "alpha": "0", "beta": "2"})
    code, out, _ = run_cli(capsys, ["deform", path, "--a", "1/2"])
    assert code == 0
    block = json.loads(out)["deformation"]
    assert block["a"] == "1/2"
    assert block["before"]["kappa"] == "0"
    # (0 + 1/4 - 1)/(1/4) = -3 and (4 + 1 - 2)/(1/2) = 6
    assert block["after"]["kappa"] == "-3"
    assert block["after"]["mu"] == "6"
    assert block["boeckx_invariance"] == "pass"


def test_deform_rejects_nonpositive(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 2, "alpha": "0", "beta": "2"})
    code, _, err = run_cli(capsys, ["deform", path, "--a", "0"])
    assert code == 1
    assert "positive" in json.loads(err)["error"]["message"]


# ---------------------------------------------------------------------------
# submanifold
# ---------------------------------------------------------------------------


def test_submanifold_command_diag(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 3, "alpha": "1", "beta": "3"})
    code, out, _ = run_cli(
        capsys, ["submanifold", path, "--kind", "diag", "--c", "2", "--d", "1"]
    )
    assert code == 0
    block = json.loads(out)["submanifold"]
    assert block["kind"] == "diagonal"
    assert block["involutive"] is True
    assert block["classification"] == "totally_umbilical"
    assert block["h1_eigenvalue"] == "6/5"
    assert block["h2_eigenvalue"] == "-8/5"
    assert block["leaf_curvature"] == "-13/5"
    assert block["theta"] == {"sin": "3/5", "cos": "-4/5"}
    assert all(r["status"] == "pass" for r in block["identities"])


def test_submanifold_command_mixed_with_z_choices(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 4, "alpha": "0", "beta": "2"})
    code, out, _ = run_cli(
        capsys, ["submanifold", path, "--kind", "mixed", "--z-choices", "xy"]
    )
    assert code == 0
    block = json.loads(out)["submanifold"]
    assert block["classification"] == "totally_geodesic"
    assert block["e_lambda_dim"] == 2
    assert block["e_minus_lambda_dim"] == 2


def test_submanifold_command_rejects_zero_c(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 2, "alpha": "0", "beta": "2"})
    code, _, err = run_cli(
        capsys, ["submanifold", path, "--kind", "diag", "--c", "0", "--d", "1"]
    )
    assert code == 1
    assert json.loads(err)["error"]["stage"] == "submanifold"


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def test_sweep_grid_and_rejections(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("KMU_THREADS", "2")
    code, out, _ = run_cli(
        capsys, ["sweep", "--n", "2", "--alphas", "0,1,2", "--betas", "1,2,3"]
    )
    assert code == 0
    report = json.loads(out)
    rows = {(r["alpha"], r["beta"]): r for r in report["grid"]}
    assert rows[("0", "1")]["invariants"]["boeckx_invariant"] == "-1"
    assert rows[("1", "2")]["invariants"]["boeckx_invariant"] == "-5/3"
    assert rows[("1", "3")]["invariants"]["boeckx_invariant"] == "-5/4"
    assert rows[("2", "3")]["invariants"]["boeckx_invariant"] == "-13/5"
    assert rows[("1", "1")]["status"] == "rejected"
    assert rows[("2", "2")]["status"] == "rejected"
    assert report["summary"]["points"] == 6
    assert report["summary"]["rejected"] == 3
    assert report["summary"]["max_boeckx_invariant"] == "-1"


def test_sweep_empty_grid_errors(capsys):
    code, _, err = run_cli(capsys, ["sweep", "--n", "2", "--alphas", "2", "--betas", "1"])
    assert code == 1
    assert "empty" in json.loads(err)["error"]["message"]


def test_sweep_report_values_match_closed_form():
    from fractions import Fraction

    report = sweep_report(2, [Fraction(0), Fraction(1)], [Fraction(2), Fraction(3)])
    for row in report["grid"]:
        if row["status"] != "ok":
            continue
        a, b = Fraction(row["alpha"]), Fraction(row["beta"])
        expected = -(b * b + a * a) / (b * b - a * a)
        assert Fraction(row["invariants"]["boeckx_invariant"]) == expected
        assert row["boeckx_invariant_range"] == "pass"


# ---------------------------------------------------------------------------
# dump-tables
# ---------------------------------------------------------------------------


def test_dump_connection_omits_zeros(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 2, "alpha": "0", "beta": "2"})
    code, out, _ = run_cli(capsys, ["dump-tables", path, "--table", "connection"])
    assert code == 0
    entries = json.loads(out)["entries"]
    assert all(value != "0" for value in entries.values())
    # nabla_{X_1} Y_1 = 2 xi: gamma entry (1, 3, 0)
    assert entries["1,3,0"] == "2"
    assert "1,1,0" not in entries


def test_dump_curvature_entries(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 2, "alpha": "0", "beta": "2"})
    code, out, _ = run_cli(capsys, ["dump-tables", path, "--table", "curvature"])
    assert code == 0
    entries = json.loads(out)["entries"]
    # R(X_1, xi) xi = 4 X_1: indices (1, 0, 0, 1)
    assert entries["1,0,0,1"] == "4"


# ---------------------------------------------------------------------------
# report determinism and files
# ---------------------------------------------------------------------------


def test_reports_deterministic_modulo_timestamp(tmp_path, capsys):
    path = write_descriptor(
        tmp_path,
        {"n": 2, "alpha": "1", "beta": "2", "submanifolds": [{"kind": "y"}]},
    )
    _, out1, _ = run_cli(capsys, ["verify", path])
    _, out2, _ = run_cli(capsys, ["verify", path])
    r1, r2 = json.loads(out1), json.loads(out2)
    r1.pop("generated_at")
    r2.pop("generated_at")
    assert json.dumps(r1, sort_keys=False) == json.dumps(r2, sort_keys=False)


def test_out_flag_writes_report_file(tmp_path, capsys):
    path = write_descriptor(tmp_path, {"n": 2, "alpha": "0", "beta": "1"})
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, ["verify", path, "--out", str(out_path)])
    assert code == 0
    assert json.loads(out_path.read_text()) == json.loads(out)


def test_build_report_direct():
    desc = parse_descriptor({"n": 2, "alpha": "0", "beta": "2"})
    report = build_report(desc)
    assert report["pass"] is True
    assert report["model"] == {"n": 2, "alpha": "0", "beta": "2"}
