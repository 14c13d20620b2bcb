import math

import numpy as np
import pytest

from kuramoto_landscape import (
    CertificateParams,
    InfeasibleError,
    RegimeViolationError,
    alpha_branch_threshold,
    contradiction_condition,
    evaluate_certificate,
    gamma1_zero_branch,
    lxb_r_lower_bound,
    lxb_threshold,
    optimize_parameters,
    s_delta,
    sweep_certificate,
    verify_certificate_hardened,
)
from kuramoto_landscape.certificate import DEFAULT_DELTA, DEFAULT_EPSILON


def s_delta_oracle(delta, step=1e-6):
    """Grid-scan max |sin x| over points with |cos x - cos^2 x| >= 2 - delta."""
    x = np.arange(0.0, 2 * np.pi, step)
    c = np.cos(x)
    mask = np.abs(c - c * c) >= 2.0 - delta
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(np.sin(x[mask]))))


def test_s_delta_values():
    assert s_delta(0.0) == pytest.approx(0.0, abs=1e-12)
    assert s_delta(0.88) == pytest.approx(0.741936, abs=1e-6)
    assert s_delta(1.0) == pytest.approx(math.sqrt(math.sqrt(5) - 1) / math.sqrt(2), rel=1e-12)
    with pytest.raises(ValueError):
        s_delta(1.8)
    with pytest.raises(ValueError):
        s_delta(-0.1)


def test_s_delta_monotone():
    deltas = np.linspace(0.0, 1.0, 30)
    vals = [s_delta(d) for d in deltas]
    assert np.all(np.diff(vals) > 0)


def test_s_delta_matches_grid_oracle():
    for delta in list(np.linspace(0.0, 1.0, 11)) + [0.88]:
        assert s_delta(delta) == pytest.approx(s_delta_oracle(delta), abs=1e-5)


def test_lxb_r_lower_bound():
    n = 10
    assert lxb_r_lower_bound(1.0, n) == pytest.approx(n * n / 2)
    assert lxb_r_lower_bound(0.75, n) == pytest.approx(2 * 0.25 * n)
    assert lxb_r_lower_bound(0.7929, 1000) == pytest.approx(
        (2 * 0.7929 - 1.5) * 1e6 + 2 * (1 - 0.7929) * 1000
    )


def test_thresholds():
    assert lxb_threshold() == pytest.approx(0.7928932188134524, abs=1e-12)
    assert alpha_branch_threshold(0.0537) == pytest.approx(0.788897, abs=5e-6)
    assert alpha_branch_threshold(0.0) == pytest.approx(lxb_threshold(), abs=1e-12)
    # sine criterion flips around the threshold
    assert math.sqrt(2) * (1 - 0.80) < math.sqrt(2 * 0.80 - 1.5)
    assert math.sqrt(2) * (1 - 0.78) > math.sqrt(max(2 * 0.78 - 1.5, 0.0))


def test_alpha_branch_threshold_decreasing():
    alphas = np.linspace(0.0, 0.2, 50)
    vals = [alpha_branch_threshold(a) for a in alphas]
    assert np.all(np.diff(vals) < 0)


def test_params_validation():
    with pytest.raises(ValueError):
        CertificateParams(mu=0.79, alpha=0.6, epsilon=0.5, delta=0.88)
    with pytest.raises(ValueError):
        CertificateParams(mu=0.79, alpha=0.05, epsilon=0.9, delta=0.88)
    with pytest.raises(ValueError):
        CertificateParams(mu=1.2, alpha=0.05, epsilon=0.5, delta=0.88)


def test_evaluate_at_critical_corner():
    ev = evaluate_certificate(CertificateParams(mu=0.7889, alpha=0.0537, epsilon=0.5, delta=0.88))
    assert ev.cond1_value == pytest.approx(0.3947, abs=1e-4)
    assert ev.cond2_value == pytest.approx(-0.0902, abs=1e-4)
    assert ev.cond3_margin == pytest.approx(0.0054, abs=5e-4)
    assert ev.passed
    assert ev.cond1_value < 0.46 and ev.cond2_value < -0.05 and ev.cond3_margin > 0.004
    assert ev.phi == pytest.approx(math.asin(math.sqrt(ev.sin2_phi)))
    # the two formulations of the right-cone occupation bound agree
    assert ev.gamma2_lower_bound == pytest.approx(ev.cond3_lhs, rel=1e-12)


def test_evaluate_away_from_corner_has_bigger_margins():
    corner = evaluate_certificate(CertificateParams(mu=0.7889, alpha=0.0537, epsilon=0.5, delta=0.88))
    easy = evaluate_certificate(CertificateParams(mu=0.794, alpha=0.0, epsilon=0.5, delta=0.88))
    assert easy.passed
    assert easy.cond2_value < corner.cond2_value
    assert easy.cond3_margin > corner.cond3_margin


def test_evaluate_regime_violation_at_three_quarters():
    with pytest.raises(RegimeViolationError):
        evaluate_certificate(CertificateParams(mu=0.75, alpha=0.0, epsilon=0.5, delta=0.88))


def test_cond1_decreases_in_mu():
    vals = [
        evaluate_certificate(CertificateParams(mu=m, alpha=0.0537, epsilon=0.5, delta=0.88)).cond1_value
        for m in np.linspace(0.7889, 0.85, 20)
    ]
    assert np.all(np.diff(vals) < 0)


def test_gamma1_zero_branch():
    assert gamma1_zero_branch(0.78, 0.0537, 0.5) == pytest.approx(0.4200, abs=1e-3)
    assert gamma1_zero_branch(0.78, 0.0537, 0.5) <= 0.45
    assert gamma1_zero_branch(0.78, 0.0, 0.5) == pytest.approx(math.sqrt(2) * 0.22, rel=1e-12)
    with pytest.raises(RegimeViolationError):
        gamma1_zero_branch(0.78, 0.4, 0.5)
    # worst corner over the verified range
    grid = [
        gamma1_zero_branch(m, a, 0.5)
        for m in np.linspace(0.78, 0.794, 15)
        for a in np.linspace(0.0, 0.0537, 15)
    ]
    assert max(grid) == pytest.approx(gamma1_zero_branch(0.78, 0.0537, 0.5), rel=1e-12)


def test_contradiction_condition():
    assert contradiction_condition(0.0, 0.5, 0.79, 0.03, 0.5, 0.4) == 0.0
    # gamma2 exactly at 1 - mu: first term vanishes, value nonnegative
    val = contradiction_condition(0.1, 1 - 0.79, 0.79, 0.03, 0.5, 0.4)
    assert val >= 0.0
    ev = contradiction_condition(0.1, 0.7, 0.7889, 0.0537, 0.5, 0.3947)
    expected = 0.1 * (0.7 - 0.2111) * (2 * 0.3947 - 1) + 0.1 * 0.7 * 0.0537 / (0.5 - 0.0537)
    assert ev == pytest.approx(expected, abs=1e-10)
    assert ev < 0.0


def test_contradiction_below_gamma2_bound_at_passing_point():
    ev = evaluate_certificate(CertificateParams(mu=0.7889, alpha=0.0537, epsilon=0.5, delta=0.88))
    rng = np.random.default_rng(0)
    for _ in range(200):
        g2 = rng.uniform(ev.cond3_rhs, 1.0)
        g1 = rng.uniform(1e-6, min(g2, 1.0 - g2))
        val = contradiction_condition(g1, g2, 0.7889, 0.0537, 0.5, ev.sin2_phi)
        assert val < 0.0


def test_sweep_default_range_passes_with_reference_margins():
    rep = sweep_certificate(grid_steps=(200, 200))
    assert rep.all_pass
    assert all(rep.margins_ok.values())
    assert rep.worst["cond1_max"]["value"] < 0.46
    assert rep.worst["cond2_max"]["value"] < -0.05
    assert rep.worst["cond3_margin_min"]["value"] > 0.004
    # critical corner: worst cond3 margin occurs at max alpha, min mu
    loc = rep.worst["cond3_margin_min"]
    assert loc["alpha"] == pytest.approx(0.0537)
    assert loc["mu"] == pytest.approx(0.788897)


def test_sweep_single_point_consistency():
    ev = evaluate_certificate(CertificateParams(mu=0.79, alpha=0.02, epsilon=0.5, delta=0.88))
    rep = sweep_certificate(mu_range=(0.79, 0.79), alpha_range=(0.02, 0.02), grid_steps=(2, 2))
    assert rep.cond1[0, 0] == pytest.approx(ev.cond1_value, rel=1e-12)
    assert rep.cond2[0, 0] == pytest.approx(ev.cond2_value, rel=1e-12)
    assert rep.cond3_margin[0, 0] == pytest.approx(ev.cond3_margin, rel=1e-12)


def test_sweep_extended_range_fails():
    rep = sweep_certificate(mu_range=(0.78, 0.794), grid_steps=(60, 60))
    assert not rep.all_pass


def test_sweep_csv(tmp_path):
    rep = sweep_certificate(grid_steps=(5, 5))
    path = tmp_path / "grid.csv"
    rep.write_csv(path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "alpha,mu,cond1,cond2,cond3_margin"
    assert len(lines) == 26


def test_hardened_small_grid_conclusive():
    rep = verify_certificate_hardened(grid_steps=(10, 10))
    assert rep.conclusive_pass
    assert rep.cells_pass == 100


def test_hardened_extended_range_fails():
    rep = verify_certificate_hardened(mu_range=(0.78, 0.794), grid_steps=(8, 8), max_depth=10)
    assert rep.cells_fail > 0


def test_optimize_at_threshold():
    res = optimize_parameters(0.7889, 0.0537)
    assert res.best_objective > 0
    assert res.reference_point_feasible
    assert res.reference_point_objective > 0
    assert 0.75 < res.min_feasible_mu <= 0.7889


def test_optimize_easier_mu_has_bigger_margin():
    tight = optimize_parameters(0.7889, 0.0537)
    easy = optimize_parameters(0.794, 0.0537)
    assert easy.best_objective > tight.best_objective


def test_optimize_infeasible_at_conjectured_critical_density():
    with pytest.raises(InfeasibleError):
        optimize_parameters(0.75, 0.0537)


def test_defaults_are_the_published_choice():
    assert DEFAULT_EPSILON == 0.5
    assert DEFAULT_DELTA == 0.88
