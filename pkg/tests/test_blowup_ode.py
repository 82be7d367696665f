import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.integrate import quad

from flrwave.blowup_ode import (
    OdeConfig,
    convexity_margin,
    fit_loglog,
    integrate,
    kato_consistency_check,
    monotone_invariant_check,
    predicted_slope,
    sweep,
)


def autonomous_oracle_lifespan():
    """Energy-method lifespan of F'' = F^2, F(1) = 1, F'(1) = 0.

    Conserved E = F'^2/2 - F^3/3 gives F' = sqrt((2/3)(F^3 - 1)), so
    T = 1 + integral_1^inf dF / sqrt((2/3)(F^3 - 1)).
    """
    value, err = quad(
        lambda f: 1.0 / math.sqrt((2.0 / 3.0) * (f**3 - 1.0)), 1.0, np.inf, limit=200
    )
    assert err < 1e-7
    return 1.0 + value


class TestIntegrate:
    def test_against_energy_oracle(self):
        cfg = OdeConfig(p=2.0, mu=0.0, q=0.0, A1=1.0, R=0.0, eps=1.0, dF_init_scale=0.0)
        res = integrate(cfg)
        assert res.blew_up and res.termination == "threshold"
        oracle = autonomous_oracle_lifespan()
        assert abs(res.T_num - oracle) / oracle < 1e-3

    def test_deterministic(self):
        cfg = OdeConfig(p=1.8, mu=2.0, q=0.8, eps=0.05)
        assert integrate(cfg).T_num == integrate(cfg).T_num

    def test_tolerance_halving_convergence(self):
        cfg = OdeConfig(p=1.8, mu=2.0, q=0.8, eps=0.05)
        base = integrate(cfg).T_num
        tight = integrate(replace(cfg, rel_tol=cfg.rel_tol / 2, abs_tol=cfg.abs_tol / 2))
        assert abs(tight.T_num - base) / base < 0.005

    def test_lifespan_decreases_with_eps(self):
        cfg = OdeConfig(p=1.8, mu=2.0, q=0.8)
        lifespans = [integrate(replace(cfg, eps=e)).T_num for e in (0.02, 0.04, 0.08)]
        assert lifespans[0] > lifespans[1] > lifespans[2]

    def test_trace_strictly_increasing(self):
        # with F'(1) > 0 the damped derivative stays positive, so F climbs
        res = integrate(OdeConfig(p=1.8, mu=2.0, q=0.8, eps=0.05))
        assert np.all(np.diff(res.F) > 0.0)

    def test_zero_data_reaches_horizon(self):
        cfg = OdeConfig(p=2.0, mu=1.0, q=1.0, eps=0.0, t_max=100.0)
        res = integrate(cfg)
        assert not res.blew_up and res.termination == "horizon"
        assert float(np.max(np.abs(res.F))) == 0.0

    def test_config_validation(self):
        with pytest.raises(ValueError):
            OdeConfig(p=1.0, mu=0.0, q=0.0)
        with pytest.raises(ValueError):
            OdeConfig(p=2.0, mu=-1.0, q=0.0)
        with pytest.raises(ValueError):
            OdeConfig(p=2.0, mu=0.0, q=0.0, eps=2.0, blowup_threshold=1.0)


class TestMonotoneInvariant:
    def test_holds_on_blowup_run(self):
        cfg = OdeConfig(p=1.8, mu=2.0, q=0.8, eps=0.05)
        res = integrate(cfg)
        assert monotone_invariant_check(res, cfg.mu)

    def test_fails_on_negated_trace(self):
        cfg = OdeConfig(p=1.8, mu=2.0, q=0.8, eps=0.05)
        res = integrate(cfg)
        res.dF = -res.dF
        assert not monotone_invariant_check(res, cfg.mu)

    def test_reduces_to_plain_monotonicity_without_damping(self):
        cfg = OdeConfig(p=2.0, mu=0.0, q=0.0, A1=1.0, R=0.0, eps=1.0)
        res = integrate(cfg)
        assert monotone_invariant_check(res, 0.0)
        assert np.all(np.diff(res.dF) >= -1e-8 * np.abs(res.dF[:-1]))


class TestFitting:
    def test_duplicate_eps_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            fit_loglog([0.1, 0.1, 0.2, 0.4], [1.0, 1.0, 2.0, 3.0])

    def test_short_grid_rejected(self):
        with pytest.raises(ValueError):
            fit_loglog([0.1, 0.2, 0.4], [1.0, 2.0, 3.0])

    def test_exact_power_law_recovered(self):
        eps = [0.01, 0.02, 0.05, 0.1, 0.4]
        T = [3.0 * e**-0.75 for e in eps]
        fit = fit_loglog(eps, T)
        assert fit.slope == pytest.approx(-0.75, rel=1e-12)
        assert fit.intercept == pytest.approx(math.log(3.0), rel=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


class TestSweep:
    def test_heatlike_scaling(self):
        cfg = OdeConfig(p=1.8, mu=2.0, q=0.8)
        fit = sweep(cfg, np.geomspace(1e-2, 1e-1, 5))
        predicted = predicted_slope(1.8, 0.8)
        assert abs(fit.slope - predicted) / abs(predicted) < 0.2
        assert fit.r_squared > 0.99
        assert all(b < a for a, b in zip(fit.T_values, fit.T_values[1:]))

    def test_horizon_failure_lists_eps(self):
        cfg = OdeConfig(p=1.8, mu=2.0, q=0.8, t_max=5.0)
        with pytest.raises(RuntimeError, match="no blow-up"):
            sweep(cfg, np.geomspace(1e-3, 1e-2, 4))

    def test_kato_consistency_envelope(self):
        cfg = OdeConfig(p=1.8, mu=2.0, q=0.8)
        fit = sweep(cfg, np.geomspace(1e-2, 1e-1, 5))
        ok, margins = kato_consistency_check(fit, cfg.p, cfg.q)
        assert ok
        assert len(margins) == 5
        # anchor run is tight by construction
        assert min(abs(m) for m in margins) < 1e-12


class TestConvexity:
    def test_superpolynomial_growth_detected(self):
        y = [math.exp(2.0 / e) for e in (0.5, 0.25, 0.125)]
        assert convexity_margin([0.5, 0.25, 0.125], y) > 0.0

    def test_uniform_grid_required(self):
        with pytest.raises(ValueError, match="uniform"):
            convexity_margin([0.5, 0.3, 0.1], [1.0, 2.0, 3.0])

    def test_needs_three_points(self):
        with pytest.raises(ValueError):
            convexity_margin([0.5, 0.25], [1.0, 2.0])


class TestPredictedSlope:
    def test_values(self):
        assert predicted_slope(1.8, 0.8) == pytest.approx(-2.0 / 3.0, rel=1e-14)

    def test_critical_wiring_rejected(self):
        with pytest.raises(ValueError):
            predicted_slope(2.0, 2.0)
