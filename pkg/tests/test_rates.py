# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

# IMPORTS
import io
import numpy as np
import pytest
from dyadnet.common import DISTANCE_HETERO, DENOISE_UNIQUE_PAIRS
from dyadnet.dgp.DgpInterface import DgpSpec, DGP_GAUSSIAN, DGP_LOGISTIC, DGP_CUSTOM
from dyadnet.dgp.DgpFactory import simulate
from dyadnet.dgp.Simulators import CustomDgp
from dyadnet.model.Covariates import ModelSpec, COVMAP_EQUALITY, build_covariates
from dyadnet.matching.Denoising import DenoisedMatrix
from dyadnet.matching.PseudoDistance import d2_homoskedastic, d2_heteroskedastic
from dyadnet.estimators.Pipeline import EstimatorConfig, compute_distances, estimate
from dyadnet.estimators.SingleIndex import denoise
from dyadnet.harness.MonteCarlo import McConfig, run_mc
from dyadnet.harness.Presets import preset_configs, PRESET_TABLE1, PRESET_TABLE2, PRESET_MISSING

pytestmark = pytest.mark.slow

SEEDS = range(10)
SMALL_GRID = (50, 100, 200)
LARGE_GRID = (100, 200, 400)


def _run(n, rho=0.5, reps=40, missing_rate=0.0, estimators=None):
    estimators = estimators or [EstimatorConfig()]
    cfg = McConfig(DgpSpec(DGP_GAUSSIAN, n, rho, missing_rate=missing_rate, seed=11), estimators, reps=reps,
                   parallelism=0)
    return run_mc(cfg, io.StringIO())


def _se(e):
    return e.sd / np.sqrt(e.successes)


def _true_d2(truth, W, exclude_self=False):
    return d2_heteroskedastic(DenoisedMatrix.from_external(truth.Ystar), W, exclude_self=exclude_self)


def _max_gap(est, ref):
    both = est.defined & ref.defined
    return float(np.max(np.abs(est.d2 - ref.d2)[both]))


def _strictly_decreasing(values):
    return all(a > b for a, b in zip(values, values[1:]))


def _bounded_design(n, seed):
    """ Identity link, binary X compared by equality, xi uniform on [0, 1]. """
    dgp = CustomDgp(ModelSpec(COVMAP_EQUALITY), [1.0],
                    g_callback=lambda a, b: -2.0 * abs(float(a[0] - b[0])),
                    xi_sampler=lambda m, rng: rng.uniform(size=m),
                    x_sampler=lambda m, rng: rng.integers(0, 2, size=m).astype(float),
                    noise_callback=lambda m, rng: rng.normal(scale=0.5, size=m),
                    discrete=[True])
    return dgp.simulate(DgpSpec(DGP_CUSTOM, n=n, seed=seed))


@pytest.fixture(scope='module')
def logistic_errors():
    """ Per network size, one (row error, distance error, pair error) triple per seed. """
    config = EstimatorConfig(distance=DISTANCE_HETERO, model=ModelSpec(COVMAP_EQUALITY))
    out = {}
    for n in LARGE_GRID:
        rows = []
        for seed in SEEDS:
            ds, truth = simulate(DgpSpec(DGP_LOGISTIC, n, seed=seed))
            W = build_covariates(ds.X, truth.model)
            d2, _, Yhat = compute_distances(ds, W, config)
            row = float(np.max(np.nanmean((Yhat.Ystar - truth.Ystar) ** 2, axis=1)))
            Ytilde = denoise(ds, kind=DENOISE_UNIQUE_PAIRS)
            pair = float(np.nanmax(np.abs(Ytilde.Ystar - truth.Ystar)))
            rows.append((row, _max_gap(d2, _true_d2(truth, W)), pair))
        out[n] = np.array(rows)
    return out


# MONTE CARLO
def test_dispersion_shrinks_with_network_size():
    small = _run(30)['kernel-homo']
    large = _run(100)['kernel-homo']
    assert small.failures == [] and large.failures == []
    assert large.sd < small.sd
    assert abs(large.bias) < 0.3


def test_matching_beats_additive_fixed_effects_under_correlation():
    summary = _run(100, rho=0.7, estimators=[EstimatorConfig('fe'), EstimatorConfig()])
    # the additive model cannot absorb -(xi_i - xi_j)^2
    assert abs(summary['kernel-homo'].bias) < abs(summary['fe'].bias)


def test_heteroskedastic_route_with_missing_outcomes():
    summary = _run(60, reps=10, missing_rate=0.3, estimators=[EstimatorConfig(distance=DISTANCE_HETERO)])
    e = summary['kernel-hetero']
    assert e.successes + len(e.failures) == 10
    assert e.successes >= 8


@pytest.mark.parametrize('rho, fe, kernel, nn1', [(0.0, -0.000, -0.000, 0.003),
                                                  (0.3, -0.091, -0.003, 0.002),
                                                  (0.5, -0.251, -0.008, -0.002),
                                                  (0.7, -0.491, -0.021, -0.020)])
def test_gaussian_design_bias_bands(rho, fe, kernel, nn1):
    cfg = [c for c in preset_configs(PRESET_TABLE1, reps=200, parallelism=0, n=100) if c.dgp.rho == rho][0]
    summary = run_mc(cfg, io.StringIO())
    for label, expected in (('fe', fe), ('kernel-homo', kernel), ('nn1-homo', nn1)):
        e = summary[label]
        assert e.failures == []
        assert abs(e.bias - expected) <= max(0.01, 4 * e.sd / np.sqrt(e.successes)), label


def test_gaussian_design_bias_bands_small_network():
    cfg = preset_configs(PRESET_TABLE1, reps=300, parallelism=0, n=30)[-1]
    assert cfg.dgp.rho == 0.7
    summary = run_mc(cfg, io.StringIO())
    assert summary['fe'].bias == pytest.approx(-0.491, abs=0.03)
    assert summary['kernel-homo'].bias == pytest.approx(-0.052, abs=0.02)
    assert summary['nn1-homo'].bias == pytest.approx(-0.058, abs=0.03)


def test_binary_design_at_reduced_size():
    summary = run_mc(preset_configs(PRESET_TABLE2, reps=40, parallelism=0, fast=True)[0], io.StringIO())
    assert summary.n == 200
    mle, kernel = summary['logit-mle'], summary['single-index']
    assert mle.failures == [] and kernel.failures == []
    assert mle.bias > 3 * _se(mle)
    assert abs(kernel.bias) < 2 * _se(kernel)


def test_binary_design_mean_degree():
    degrees = []
    for rep in range(3):
        ds, _ = simulate(DgpSpec(DGP_LOGISTIC, 550, seed=0), rep)
        degrees.append(ds.filled(0.0).sum(axis=1).mean())
    assert np.mean(degrees) == pytest.approx(37.6, rel=0.15)


def test_missing_outcomes_bias_bound():
    summary = run_mc(preset_configs(PRESET_MISSING, reps=100, parallelism=0)[0], io.StringIO())
    e = summary['kernel-homo']
    assert e.failures == []
    assert abs(e.bias) <= 0.03


# RATES
def test_homoskedastic_distance_error_decreases():
    medians = []
    for n in SMALL_GRID:
        errors = []
        for seed in SEEDS:
            ds, truth = simulate(DgpSpec(DGP_GAUSSIAN, n, 0.5, seed=seed))
            W = build_covariates(ds.X, truth.model)
            errors.append(_max_gap(d2_homoskedastic(ds, W), _true_d2(truth, W, exclude_self=True)))
        medians.append(np.median(errors))
    assert _strictly_decreasing(medians), medians


def test_denoised_row_error_decreases(logistic_errors):
    medians = [np.median(logistic_errors[n][:, 0]) for n in LARGE_GRID]
    assert _strictly_decreasing(medians), medians


def test_heteroskedastic_distance_error_decreases(logistic_errors):
    medians = [np.median(logistic_errors[n][:, 1]) for n in LARGE_GRID]
    assert _strictly_decreasing(medians), medians


def test_unique_pair_error_decreases(logistic_errors):
    medians = [np.median(logistic_errors[n][:, 2]) for n in LARGE_GRID]
    assert _strictly_decreasing(medians), medians


def test_fixed_effect_error_decreases():
    config = EstimatorConfig(model=ModelSpec(COVMAP_EQUALITY), fixed_effects=True)
    medians = []
    for n in LARGE_GRID:
        errors = []
        for seed in SEEDS:
            ds, truth = _bounded_design(n, seed)
            report = estimate(ds, config)
            errors.append(float(np.nanmax(np.abs(report.gHat - truth.gMatrix))))
        medians.append(np.median(errors))
    assert _strictly_decreasing(medians), medians
