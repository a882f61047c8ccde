import json

import numpy as np
import pytest

from czkit.harness import (
    ExperimentConfig,
    MarginError,
    THEOREMS,
    check_margin,
    make_input,
    run_theorem,
    sweep,
    verify_corollary,
    verify_endpoint,
    verify_maximal_lemmas,
    verify_sharp_pointwise,
    verify_strong,
    verify_two_weight,
    write_sweep_csv,
    write_sweep_json,
)
from czkit.grid import UniformGrid1D
from czkit.young import DomainError


def small_cfg(**overrides) -> ExperimentConfig:
    base = dict(
        a=-4.0,
        b=4.0,
        levels=6,
        f_kind="box",
        f_params={"lo": 0.5, "hi": 1.5},
        symbols=[{"kind": "log", "s": 1.0, "params": {}}],
        weight_kind="step",
        weight_params={"low": 1.0, "high": 2.0},
        theorem="endpoint",
        p_list=[1.5, 2.0],
        delta_list=[0.25],
        eps_list=[0.25, 0.5],
        lambda_list=[0.25],
        mode="all-intervals",
        seed=3,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


# --- config ---------------------------------------------------------------


def test_config_round_trip(tmp_path):
    cfg = small_cfg()
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    back = ExperimentConfig.from_json(path)
    assert back == cfg


def test_config_validation():
    with pytest.raises(DomainError):
        small_cfg(theorem="nope")
    with pytest.raises(DomainError):
        small_cfg(lambda_list=[0.0])
    with pytest.raises(DomainError):
        small_cfg(delta_list=[1.5])
    with pytest.raises(DomainError):
        small_cfg(eps_list=[0.0])
    with pytest.raises(DomainError):
        small_cfg(p_list=[1.0])
    with pytest.raises(DomainError):
        ExperimentConfig.from_dict({"theorem": "endpoint", "bogus": 1})


def test_margin_enforced():
    grid = UniformGrid1D(-4, 4, 6)
    f = make_input("box", grid, lo=-3.5, hi=0.0)
    with pytest.raises(MarginError):
        check_margin(f)
    check_margin(make_input("box", grid, lo=-1.0, hi=1.0))
    check_margin(make_input("zero", grid))


def test_make_input_kinds():
    grid = UniformGrid1D(-4, 4, 7)
    for kind, params in [
        ("box", {"lo": 0.0, "hi": 1.0}),
        ("hat", {"center": 0.0, "width": 1.0}),
        ("bump", {"center": 0.0, "width": 1.0}),
        ("random-cells", {"lo": -1.0, "hi": 1.0}),
    ]:
        f = make_input(kind, grid, seed=1, **params)
        assert np.all(np.isfinite(f.values))
        assert np.any(f.values != 0.0)
    with pytest.raises(DomainError):
        make_input("nope", grid)


# --- verifiers -------------------------------------------------------------


def test_strong_zero_symbol_gives_zero_ratio():
    cfg = small_cfg(theorem="strong", symbols=[{"kind": "constant", "s": 1.0, "params": {}}])
    rep = verify_strong(cfg)
    # constant symbols annihilate the commutator and the seminorm product
    for pt in rep.points:
        assert pt["implied_constant"] == pytest.approx(0.0, abs=1e-12)


def test_strong_zero_input():
    cfg = small_cfg(theorem="strong", f_kind="zero", f_params={})
    rep = verify_strong(cfg)
    assert all(pt["implied_constant"] == 0.0 for pt in rep.points)
    assert rep.contracts_hold


def test_strong_scaling_invariance():
    cfg = small_cfg(theorem="strong")
    rep1 = verify_strong(cfg)
    cfg2 = small_cfg(theorem="strong", f_params={"lo": 0.5, "hi": 1.5, "height": 17.0})
    rep2 = verify_strong(cfg2)
    for a, b in zip(rep1.points, rep2.points):
        assert a["implied_constant"] == pytest.approx(b["implied_constant"], rel=1e-9)


def test_strong_empty_sweep_errors():
    with pytest.raises(DomainError):
        verify_strong(small_cfg(theorem="strong", p_list=[]))


def test_endpoint_report_structure():
    rep = verify_endpoint(small_cfg())
    assert len(rep.points) == 2  # eps x lambda
    assert rep.metadata["mode"] == "all-intervals"
    assert "max_slope" in rep.aggregates
    assert rep.contracts["zero_rhs_only_for_zero_lhs"]


def test_endpoint_scaling_invariance():
    # (f, lambda) -> (c f, c lambda) leaves every ratio unchanged
    c = 3.0
    rep1 = verify_endpoint(small_cfg(lambda_list=[0.25]))
    rep2 = verify_endpoint(
        small_cfg(lambda_list=[0.25 * c], f_params={"lo": 0.5, "hi": 1.5, "height": c})
    )
    for a, b in zip(rep1.points, rep2.points):
        assert a["implied_constant"] == pytest.approx(b["implied_constant"], rel=1e-9)


def test_endpoint_symbol_normalization_invariance():
    # b -> b / ||b|| with the level scaled by 1/||b|| gives matched ratios
    from czkit.orlicz import osc_expls_norm
    from czkit.singular import make_symbol

    grid = UniformGrid1D(-4, 4, 6)
    norm = osc_expls_norm(make_symbol("log", grid), 1.0)
    lam = 0.25
    rep_raw = verify_endpoint(small_cfg(lambda_list=[lam]))
    rep_unit = verify_endpoint(
        small_cfg(
            lambda_list=[lam / norm],
            symbols=[{"kind": "log", "s": 1.0, "params": {"scale": 1.0 / norm}}],
        )
    )
    for a, b in zip(rep_raw.points, rep_unit.points):
        assert a["implied_constant"] == pytest.approx(b["implied_constant"], rel=1e-6)


def test_endpoint_constant_symbol_zero_both_sides():
    cfg = small_cfg(symbols=[{"kind": "constant", "s": 1.0, "params": {}}])
    rep = verify_endpoint(cfg)
    for pt in rep.points:
        assert pt["lhs"] == 0.0
        assert pt["implied_constant"] == 0.0
        assert "rhs-zero" in pt["flags"]
    assert rep.contracts_hold


def test_endpoint_above_peak_gives_zero():
    rep = verify_endpoint(small_cfg(lambda_list=[1e9]))
    for pt in rep.points:
        assert pt["lhs"] == 0.0
        assert pt["implied_constant"] == 0.0


def test_corollary_constant_weight():
    cfg = small_cfg(theorem="corollary", weight_kind="constant", weight_params={})
    rep = verify_corollary(cfg)
    assert rep.aggregates["fujii"] == 1.0
    assert rep.aggregates["a1"] == 1.0
    assert rep.contracts_hold


def test_corollary_requires_single_unit_symbol():
    cfg = small_cfg(
        theorem="corollary",
        symbols=[{"kind": "log", "s": 2.0, "params": {}}],
    )
    with pytest.raises(DomainError):
        verify_corollary(cfg)


def test_two_weight_zero_input():
    cfg = small_cfg(theorem="two-weight", f_kind="zero", f_params={})
    rep = verify_two_weight(cfg)
    assert all(pt["implied_constant"] == 0.0 for pt in rep.points)


def test_two_weight_constant_weight_finite():
    cfg = small_cfg(theorem="two-weight", weight_kind="constant", weight_params={})
    rep = verify_two_weight(cfg)
    assert rep.contracts_hold
    assert rep.aggregates["max_implied"] > 0


def test_two_weight_s_ordering():
    # heavier log bump on the left side lifts the norm: s = 1 above s = 2
    lhs = {}
    for s, kind in ((1.0, "log"), (2.0, "abslog-power")):
        cfg = small_cfg(
            theorem="two-weight",
            symbols=[{"kind": kind, "s": s, "params": {}}],
            p_list=[2.0],
            delta_list=[0.25],
        )
        rep = verify_two_weight(cfg)
        lhs[s] = rep.points[0]["lhs"]
    assert lhs[1.0] >= lhs[2.0]


def test_sharp_pointwise_k1_and_constant_symbol():
    rep = verify_sharp_pointwise(small_cfg(theorem="sharp", delta_list=[0.25], eps_list=[0.5]))
    assert rep.contracts_hold
    cfg0 = small_cfg(
        theorem="sharp",
        symbols=[{"kind": "constant", "s": 1.0, "params": {}}],
        delta_list=[0.25],
        eps_list=[0.5],
    )
    rep0 = verify_sharp_pointwise(cfg0)
    # constant symbol: the commutator term vanishes, ratio stays finite
    assert rep0.contracts_hold


def test_sharp_requires_delta_below_eps():
    with pytest.raises(DomainError):
        verify_sharp_pointwise(small_cfg(theorem="sharp", delta_list=[0.5], eps_list=[0.25]))


def test_maximal_lemmas_degenerate_constant():
    cfg = small_cfg(
        theorem="maximal-lemmas",
        f_kind="box",
        f_params={"lo": -4.0, "hi": 4.0},
        weight_kind="constant",
        weight_params={},
    )
    rep = verify_maximal_lemmas(cfg)
    degenerate = [pt for pt in rep.points if "degenerate-constant-input" in pt["flags"]]
    assert degenerate  # constant f has zero oscillation
    assert rep.contracts_hold


def test_maximal_lemmas_finite_on_box():
    rep = verify_maximal_lemmas(small_cfg(theorem="maximal-lemmas"))
    assert rep.contracts_hold
    per = rep.aggregates["max_implied_per_lemma"]
    assert set(per) == {"norm-vs-sharp", "power-vs-sharp", "weak-type-maximal"}
    assert all(v > 0 for v in per.values())


# --- reports ---------------------------------------------------------------


def test_report_json_csv_deterministic(tmp_path):
    cfg = small_cfg()
    rep1 = run_theorem(cfg)
    rep2 = run_theorem(cfg)
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    rep1.write_json(p1)
    rep2.write_json(p2)
    assert p1.read_bytes() == p2.read_bytes()
    c1, c2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    rep1.write_csv(c1)
    rep2.write_csv(c2)
    assert c1.read_bytes() == c2.read_bytes()
    payload = json.loads(p1.read_text())
    assert payload["theorem"] == "endpoint"
    assert payload["contracts_hold"] is True


def test_every_theorem_has_runner():
    assert set(THEOREMS) == {"strong", "endpoint", "corollary", "two-weight", "sharp", "maximal-lemmas"}


# --- sweeps ----------------------------------------------------------------


def test_sweep_epsilon_endpoint(tmp_path):
    cfg = small_cfg(eps_list=[0.2, 0.4, 0.6])
    result = sweep(cfg, "epsilon")
    assert len(result["rows"]) == 3
    assert "slope" in result["aggregates"]
    csv_path = tmp_path / "sweep.csv"
    write_sweep_csv(result, csv_path)
    write_sweep_json(result, tmp_path / "sweep.json")
    header = csv_path.read_text().splitlines()[0]
    assert header.startswith("axis,axis_value")


def test_sweep_resolution_drift():
    cfg = small_cfg(theorem="two-weight", p_list=[2.0], delta_list=[0.25],
                    resolution_list=[5, 6])
    result = sweep(cfg, "resolution")
    assert "max_drift" in result["aggregates"]
    assert result["aggregates"]["max_drift"] < 0.5


def test_sweep_empty_axis_errors():
    cfg = small_cfg()
    with pytest.raises(DomainError):
        sweep(cfg, "resolution")  # resolution_list defaults to empty
    with pytest.raises(DomainError):
        sweep(cfg, "bogus")
