import json
import subprocess
import sys
from pathlib import Path

import pytest

from triplepole import InvariantViolationError, NotAnIntegerError, __version__
from triplepole.cli import _exit_code, main
from triplepole.config import REPORT_VERSION

REPO = Path(__file__).resolve().parent.parent
CONFIGS = REPO / "configs"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


def write_config(tmp_path, payload) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(payload))
    return str(path)


def gaussian_config(tmp_path, theta1=1, theta2=1, chi=10, X=50000, tau=0.05):
    return write_config(
        tmp_path,
        {
            "version": 1,
            "model": {"kind": "gaussian", "modulus": [7, 0]},
            "labels": {"theta1": theta1, "theta2": theta2, "chi": chi},
            "estimate": {"X": X, "tau": tau},
        },
    )


# ---------------------------------------------------------------------------
# Envelope


def test_envelope_fields(capsys):
    code, report = run_json(
        capsys, "pole-order", "--config", str(CONFIGS / "abelian_z7.json")
    )
    assert code == 0
    assert report["report_version"] == REPORT_VERSION
    assert report["tool"] == {"name": "triplepole", "version": __version__}
    assert report["command"] == "pole-order"
    assert report["seed"] is None and report["workers"] is None
    assert report["elapsed_seconds"] >= 0
    assert "result" in report and "error" not in report


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == __version__


def test_output_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out = run_cli(
        capsys,
        "pole-order",
        "--config",
        str(CONFIGS / "abelian_z7.json"),
        "--output",
        str(out_path),
    )
    assert code == 0
    assert out == ""
    assert json.loads(out_path.read_text())["result"]["ell"] == 3


# ---------------------------------------------------------------------------
# pole-order / factorize


def test_pole_order_sharp_triple(capsys):
    code, report = run_json(
        capsys, "pole-order", "--config", str(CONFIGS / "abelian_z7.json")
    )
    assert code == 0
    result = report["result"]
    assert result["ell"] == 3
    assert result["matrix"]["true_cells"] == [[0, 2], [1, 0], [2, 1]]
    assert result["model"]["kind"] == "abelian"


def test_pole_order_rank2_double(capsys):
    code, report = run_json(
        capsys, "pole-order", "--config", str(CONFIGS / "abelian_z3sq.json")
    )
    assert code == 0
    assert report["result"]["ell"] == 2
    assert report["result"]["matrix"]["true_cells"] == [[0, 0], [1, 1]]


def test_pole_order_degree_mismatch(capsys):
    code, report = run_json(
        capsys, "pole-order", "--config", str(CONFIGS / "generic_mismatch.json")
    )
    assert code == 0
    assert report["result"]["ell"] == 0
    assert report["result"]["matrix"]["true_cells"] == []


def test_pole_order_mixed_base_change(capsys):
    code, report = run_json(
        capsys, "pole-order", "--config", str(CONFIGS / "basechange_z7.json")
    )
    assert code == 0
    result = report["result"]
    assert result["ell"] == 1
    # One side stays cuspidal, so there is no matching matrix to report.
    assert result["matrix"] is None


def test_pole_order_text_format(capsys):
    code, out = run_cli(
        capsys,
        "pole-order",
        "--config",
        str(CONFIGS / "abelian_z7.json"),
        "--format",
        "text",
    )
    assert code == 0
    assert "pole order: 3" in out
    assert ". . #" in out and "# . ." in out and ". # ." in out


def test_factorize_mixed_base_change(capsys):
    code, report = run_json(
        capsys, "factorize", "--config", str(CONFIGS / "basechange_z7.json")
    )
    assert code == 0
    result = report["result"]
    assert result["ell"] == 1
    assert [f["pole_order"] for f in result["factors"]] == [1, 0, 0]
    assert result["factors"][0]["left"]["coords"] == [0]


def test_factorize_both_induced(capsys):
    code, report = run_json(
        capsys, "factorize", "--config", str(CONFIGS / "abelian_z7.json")
    )
    assert code == 0
    result = report["result"]
    assert result["ell"] == 3
    assert len(result["factors"]) == 9
    on = sorted(
        (f["j"], f["k"]) for f in result["factors"] if f["pole_order"] == 1
    )
    assert on == [(0, 2), (1, 0), (2, 1)]


# ---------------------------------------------------------------------------
# sweep / witness


def test_sweep_small_catalogue(capsys):
    code, report = run_json(
        capsys, "sweep", "--config", str(CONFIGS / "sweep_small.json")
    )
    assert code == 0
    result = report["result"]
    assert result["complete"] is True
    assert result["violations"] == [] and result["rigidity_breaches"] == []
    assert result["max_ell"] == 3
    assert sum(result["histogram"].values()) == result["triples_examined"]


def test_sweep_seed_flag_overrides_config(tmp_path, capsys):
    config = write_config(
        tmp_path,
        {
            "version": 1,
            "catalogue": {"p_values": [3], "max_group_order": 9},
            "budget": {"strategy": "sample", "samples": 200, "seed": 3},
        },
    )
    code, report = run_json(capsys, "sweep", "--config", config, "--seed", "42")
    assert code == 0
    assert report["seed"] == 42
    assert report["result"]["rng"] == {"name": "numpy-pcg64", "seed": 42}
    assert report["result"]["triples_examined"] == 200


def test_sweep_violations_exit_code(monkeypatch, tmp_path, capsys):
    # The calculus never produces a violation, so force one through the
    # report to pin the exit-code contract.
    import triplepole.cli as cli_module

    real_sweep = cli_module.sweep

    def tainted(family, budget):
        report = real_sweep(family, budget)
        object.__setattr__(
            report, "violations", [{"model": 0, "ell": 99}]
        )
        return report

    monkeypatch.setattr(cli_module, "sweep", tainted)
    config = write_config(
        tmp_path,
        {"version": 1, "catalogue": {"p_values": [2], "max_group_order": 5}},
    )
    code, report = run_json(capsys, "sweep", "--config", config)
    assert code == 4
    assert report["result"]["violations"] == [{"model": 0, "ell": 99}]


def test_witness_sharp(capsys):
    code, report = run_json(
        capsys, "witness", "--config", str(CONFIGS / "witness_z7.json")
    )
    assert code == 0
    result = report["result"]
    assert result["found"] is True
    assert result["witness"] == {
        "model": 0,
        "theta1": [1],
        "theta2": [3],
        "chi": [0],
        "ell": 3,
    }


def test_witness_exhausted_is_success(capsys):
    code, report = run_json(
        capsys, "witness", "--config", str(CONFIGS / "witness_p2_restricted.json")
    )
    assert code == 0
    result = report["result"]
    assert result["found"] is False and result["witness"] is None
    assert result["require_noninvariant_chi"] is True


def test_witness_text_format(capsys):
    code, out = run_cli(
        capsys,
        "witness",
        "--config",
        str(CONFIGS / "witness_p2_restricted.json"),
        "--format",
        "text",
    )
    assert code == 0
    assert "no witness found" in out


# ---------------------------------------------------------------------------
# oracle-compare


def test_oracle_compare_agrees(capsys):
    code, report = run_json(
        capsys, "oracle-compare", "--config", str(CONFIGS / "abelian_z7.json")
    )
    assert code == 0
    result = report["result"]
    assert result["ell"] == 3 and result["multiplicity"] == 3
    assert result["equal"] is True
    assert result["precondition_violated"] is False


def test_oracle_compare_invariant_inducer_marked(tmp_path, capsys):
    config = write_config(
        tmp_path,
        {
            "version": 1,
            "model": {"kind": "abelian", "factors": [7], "sigma": [[2]], "p": 3},
            "labels": {"theta1": [0], "theta2": [3], "chi": [0]},
        },
    )
    code, report = run_json(capsys, "oracle-compare", "--config", config)
    assert code == 0
    result = report["result"]
    assert result["precondition_violated"] is True
    assert result["ell"] is None and result["equal"] is None


def test_oracle_compare_disagreement_exit_code(monkeypatch, capsys):
    import triplepole.cli as cli_module

    real_compare = cli_module.oracle_compare

    def tainted(model, theta1, theta2, chi):
        comparison = real_compare(model, theta1, theta2, chi)
        object.__setattr__(comparison, "equal", False)
        return comparison

    monkeypatch.setattr(cli_module, "oracle_compare", tainted)
    code, report = run_json(
        capsys, "oracle-compare", "--config", str(CONFIGS / "abelian_z7.json")
    )
    assert code == 4
    assert report["result"]["equal"] is False


def test_oracle_compare_needs_abelian_model(tmp_path, capsys):
    config = gaussian_config(tmp_path)
    code, report = run_json(capsys, "oracle-compare", "--config", config)
    assert code == 2
    assert "abelian" in report["error"]["message"]


# ---------------------------------------------------------------------------
# hecke-estimate


def test_hecke_estimate_demo_triple(tmp_path, capsys):
    config = gaussian_config(tmp_path)
    code, report = run_json(
        capsys, "hecke-estimate", "--config", config, "--workers", "2"
    )
    assert code == 0
    result = report["result"]
    assert result["ell_hat"] == 2 and result["ell_symbolic"] == 2
    assert result["agree"] is True
    verdicts = {(c["j"], c["k"]): c["verdict"] for c in result["cells"]}
    assert verdicts == {
        (0, 0): "pole",
        (0, 1): "no-pole",
        (1, 0): "no-pole",
        (1, 1): "pole",
    }
    assert report["workers"] == 2


def test_hecke_estimate_indeterminate_exit(tmp_path, capsys):
    config = gaussian_config(tmp_path, X=2000, tau=0.9)
    code, report = run_json(capsys, "hecke-estimate", "--config", config)
    assert code == 5
    error = report["error"]
    assert error["type"] == "IndeterminatePoleError"
    assert error["pair"] == [0, 0]
    assert 0.01 < error["ratio"] <= 0.9


def test_hecke_estimate_disagreement_exit_code(monkeypatch, tmp_path, capsys):
    import triplepole.cli as cli_module

    real_estimate = cli_module.numeric_triple_estimate

    def tainted(*args, **kwargs):
        estimate = real_estimate(*args, **kwargs)
        object.__setattr__(estimate, "agree", False)
        return estimate

    monkeypatch.setattr(cli_module, "numeric_triple_estimate", tainted)
    config = gaussian_config(tmp_path, X=5000)
    code, report = run_json(capsys, "hecke-estimate", "--config", config)
    assert code == 4
    assert report["result"]["agree"] is False


def test_hecke_estimate_needs_gaussian_model(capsys):
    code, report = run_json(
        capsys, "hecke-estimate", "--config", str(CONFIGS / "abelian_z7.json")
    )
    assert code == 2
    assert "gaussian" in report["error"]["message"]


# ---------------------------------------------------------------------------
# Error mapping


def test_bad_json_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{nope")
    code, report = run_json(capsys, "pole-order", "--config", str(path))
    assert code == 2
    assert report["error"]["type"] == "ConfigError"


def test_missing_section_exits_2(tmp_path, capsys):
    config = write_config(tmp_path, {"version": 1})
    code, report = run_json(capsys, "pole-order", "--config", config)
    assert code == 2


def test_schema_violation_exits_2(tmp_path, capsys):
    config = write_config(tmp_path, {"version": 1, "surprise": True})
    code, report = run_json(capsys, "sweep", "--config", config)
    assert code == 2


def test_invariant_inducer_exits_3(tmp_path, capsys):
    config = write_config(
        tmp_path,
        {
            "version": 1,
            "model": {"kind": "abelian", "factors": [7], "sigma": [[2]], "p": 3},
            "labels": {"theta1": [0], "theta2": [3], "chi": [0]},
        },
    )
    code, report = run_json(capsys, "pole-order", "--config", config)
    assert code == 3
    assert report["error"]["type"] == "PreconditionError"


def test_invariant_failures_map_to_4():
    assert _exit_code(InvariantViolationError("boom")) == 4
    assert _exit_code(NotAnIntegerError("boom", residual=(1,))) == 4


def test_unexpected_exception_propagates():
    with pytest.raises(ValueError):
        _exit_code(ValueError("not ours"))


def test_unknown_command_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# Entry points


def test_module_entry_point():
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "triplepole",
            "pole-order",
            "--config",
            str(CONFIGS / "abelian_z7.json"),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["ell"] == 3


def test_console_script_entry_point():
    proc = subprocess.run(
        ["triplepole", "--version"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == __version__
