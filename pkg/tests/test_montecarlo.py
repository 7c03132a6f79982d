import math

import numpy as np
import pytest

from clusterext.empirical import BlockScheme, InsufficientDataError
from clusterext.montecarlo import (
    ExperimentFailedError,
    ExperimentSpec,
    coverage_check,
    derive_replicate_seed,
    normality_diagnostic,
    run_experiment,
)
from clusterext.processes import ModelSpec

V_FIG1 = 1.0 / (10.0 * math.sqrt(2.0))


def smoke_spec(**kw):
    base = dict(
        model=ModelSpec(kind="base_b_ar1", b=2),
        n=200,
        N=5,
        v_n=0.2,
        lags=(0, 1, 2, 3),
        scheme=BlockScheme(n=200, r_n=20, l_n=2),
        base_seed=77,
    )
    base.update(kw)
    return ExperimentSpec(**base)


def fig1_spec(base_seed=20260823, N=50, lags=tuple(range(21))):
    return ExperimentSpec(
        model=ModelSpec(kind="base_b_ar1", b=2),
        n=2000,
        N=N,
        v_n=V_FIG1,
        lags=lags,
        scheme=BlockScheme(n=2000, r_n=100, l_n=10),
        base_seed=base_seed,
    )


class TestRunExperiment:
    def test_smoke_shapes_and_band_order(self):
        res = run_experiment(smoke_spec())
        L = 4
        assert res.rho_hat.shape == (5, L)
        assert res.pa.shape == (L,)
        assert np.all(res.band_lo <= res.mean_rho_hat + 1e-15)
        assert np.all(res.mean_rho_hat <= res.band_hi + 1e-15)

    def test_deterministic(self):
        a = run_experiment(smoke_spec())
        b = run_experiment(smoke_spec())
        assert np.array_equal(a.rho_hat, b.rho_hat)
        assert np.array_equal(a.band_lo, b.band_lo)

    def test_thread_count_invariance(self):
        spec = fig1_spec(N=10)
        outs = [run_experiment(spec, threads=t).rho_hat for t in (1, 4, 8)]
        assert np.array_equal(outs[0], outs[1])
        assert np.array_equal(outs[0], outs[2])

    def test_fig1_pa_curve_tracked(self):
        res = run_experiment(fig1_spec(), threads=4)
        assert res.pa[1] == pytest.approx(0.5)
        assert np.all(np.diff(res.pa[1:]) <= 1e-15)  # decays with lag
        inside = (res.pa >= res.band_lo) & (res.pa <= res.band_hi)
        assert inside[1:].sum() >= 18

    def test_zero_exceedance_exclusion(self):
        # Tiny n with rare exceedances: replicates without exceedances must
        # either be excluded or fail the run, never crash aggregation.
        spec = smoke_spec(n=20, N=30, v_n=0.02, lags=(0, 1), scheme=BlockScheme(n=20, r_n=5, l_n=1))
        try:
            res = run_experiment(spec)
            assert len(res.replicate_ids) + len(res.excluded) == 30
            assert len(res.excluded) <= 3
        except ExperimentFailedError:
            pass

    def test_quantile_bands(self):
        res = run_experiment(smoke_spec(N=40, band_method="quantile"))
        assert np.all(res.band_lo <= res.band_hi)

    def test_replicate_seed_derivation_stable(self):
        assert derive_replicate_seed(1, 0) != derive_replicate_seed(1, 1)
        assert derive_replicate_seed(1, 5) == derive_replicate_seed(1, 5)

    def test_spec_roundtrip(self):
        spec = fig1_spec(N=5)
        assert ExperimentSpec.from_dict(spec.to_dict()) == spec


class TestNormalityDiagnostic:
    def test_calibration_on_normal_inputs(self):
        # P-values should be uniform for Gaussian inputs: rejection rate at
        # alpha = 0.05 within binomial 3-sigma over repeated trials.
        rng = np.random.default_rng(55)
        alpha, trials = 0.05, 300
        rejections = sum(normality_diagnostic(rng.standard_normal(200))[1] < alpha for _ in range(trials))
        rate = rejections / trials
        assert abs(rate - alpha) < 3 * math.sqrt(alpha * (1 - alpha) / trials)

    def test_rejects_uniform_inputs(self):
        rng = np.random.default_rng(56)
        stat, p = normality_diagnostic(rng.random(2000))
        assert p < 0.01

    def test_degenerate_flagged(self):
        stat, p = normality_diagnostic(np.zeros(30))
        assert math.isinf(stat) and p == 0.0

    def test_insufficient_data(self):
        with pytest.raises(InsufficientDataError):
            normality_diagnostic(np.arange(10.0))

    def test_fig1_errors_rarely_rejected(self):
        # CLT property of the harness: across independent self-runs, the
        # scaled lag-1 errors pass the diagnostic at alpha = 0.01 nearly always.
        passed = 0
        runs = 10
        for k in range(runs):
            res = run_experiment(fig1_spec(base_seed=3000 + k), threads=4)
            stat, p = res.normality[1]
            passed += p > 0.01
        assert passed >= 9


class TestCoverage:
    def test_infinite_bands(self):
        res = run_experiment(smoke_spec())
        wide = res.__class__(**{**res.__dict__, "band_lo": res.band_lo * 0 - 1e9, "band_hi": res.band_hi * 0 + 1e9})
        assert np.all(coverage_check(wide) == 1.0)

    def test_zero_width_bands(self):
        res = run_experiment(smoke_spec(N=9))
        tight = res.__class__(**{**res.__dict__, "band_lo": res.mean_rho_hat, "band_hi": res.mean_rho_hat})
        # Lag 0 is degenerate: every estimate equals the mean exactly.
        assert np.all(coverage_check(tight)[1:] <= 2.0 / 9.0 + 1e-12)

    def test_fig1_coverage_near_nominal(self):
        res = run_experiment(fig1_spec(), threads=4)
        cov = coverage_check(res)
        tol = 3 * math.sqrt(0.95 * 0.05 / 50)
        # Lag 0 is degenerate (zero-width bands); check the informative lags.
        assert np.all(np.abs(cov[1:] - 0.95) <= tol + 1.0 / 50)
