import math

import numpy as np
import pytest

import nisac

SMALL = {"monte_carlo_draws": 5, "design_draws": 2}


def test_ura_response_broadside():
    a = nisac.ura_response(0.0, 0.0, 4, 4)
    assert a.shape == (16,)
    assert np.allclose(a, 1.0)


def test_run_block_is_deterministic():
    a = nisac.run_block(SMALL, seed=3)
    b = nisac.run_block(SMALL, seed=3)
    assert a == b
    assert len(a["phase_indices"]) == 16
    assert a["crlb_angle"] > 0.0
    assert a["objective_trace"] == sorted(a["objective_trace"], reverse=True)


def test_compare_rows():
    rows = nisac.compare({**SMALL, "t_slots": 5}, seed=1, seeds=2, jobs=2)
    systems = {r["system"]: r for r in rows}
    assert set(systems) == {"no_isac", "td_isac", "loc_only"}
    assert systems["no_isac"]["mi_avg_bits"] > systems["td_isac"]["mi_avg_bits"]
    assert math.isnan(systems["loc_only"]["crlb_x"])


def test_sweep_values():
    rows = nisac.sweep("snr", [0, 10], SMALL, seed=2)
    assert [r["value"] for r in rows if r["system"] == "no_isac"] == [0, 10]


def test_config_errors():
    with pytest.raises(nisac.ConfigError):
        nisac.validate_config({"zetta": 1})
    with pytest.raises(ValueError):
        nisac.run_block({"zeta": 3})


def test_singular_information():
    with pytest.raises(nisac.SingularFimError):
        nisac.run_block({"arrays": {"user": [1, 1], "irs": [1, 1]}, "monte_carlo_draws": 1}, phases="random")


def test_verify_passes():
    checks = nisac.verify(seed=1, fim_instances=10, ce_runs=5)
    assert all(c["passed"] for c in checks), checks


def test_cli_round_trip(tmp_path):
    out = tmp_path / "r.csv"
    code, _, err = nisac.run_cli(["crlb", "--seed", "1", "--out", str(out)])
    assert code == 0, err
    header = out.read_text().splitlines()[0].split(",")
    assert header == nisac.csv_header(True)
    code, _, err = nisac.run_cli(["crlb", "--seed", "1", "--config", str(tmp_path / "none.json"), "--out", str(out)])
    assert code == 2
    assert "none.json" in err
