# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

# IMPORTS
import json
import numpy as np
import pytest
from dyadnet.common import ESTIMATOR_KERNEL, ESTIMATOR_NN1, ESTIMATOR_FE, ESTIMATOR_LOGIT_MLE
from dyadnet.common import ESTIMATOR_SINGLE_INDEX, DISTANCE_HETERO, PROVENANCE_HETEROSKEDASTIC, ParameterError
from dyadnet.model.Covariates import ModelSpec, build_covariates, COVMAP_EQUALITY
from dyadnet.model.ModelFactory import get_link, LINK_LOGISTIC
from dyadnet.matching.Denoising import DenoisedMatrix
from dyadnet.estimators.Pipeline import EstimatorConfig, estimate, compute_distances, denoised_outcomes


def test_config_validation_and_labels():
    assert EstimatorConfig().label == 'kernel-homo'
    assert EstimatorConfig(ESTIMATOR_NN1, DISTANCE_HETERO).label == 'nn1-hetero'
    assert EstimatorConfig(ESTIMATOR_FE).label == 'fe'
    assert EstimatorConfig(label='mine').label == 'mine'
    with pytest.raises(ParameterError):
        EstimatorConfig('ridge')
    with pytest.raises(ParameterError):
        EstimatorConfig(distance='euclid')
    with pytest.raises(ParameterError):
        EstimatorConfig(x_rule='closest')


def test_config_replace():
    config = EstimatorConfig(floor=3)
    other = config.replace(distance=DISTANCE_HETERO)
    assert other.label == 'kernel-hetero'
    assert other.floor == 3
    assert config.distance == 'homo'
    assert config.replace(floor=4, label='x').label == 'x'
    assert other.to_dict()['distance'] == DISTANCE_HETERO


def test_default_estimate(gaussian_draw):
    ds, truth = gaussian_draw
    report = estimate(ds)
    assert report.estimator == ESTIMATOR_KERNEL
    assert report.config['label'] == 'kernel-homo'
    assert report.activePairs > 0
    assert np.isfinite(report.beta).all()
    # the report is plain JSON
    json.dumps(report.to_dict())


@pytest.mark.parametrize("config", [
    EstimatorConfig(ESTIMATOR_NN1),
    EstimatorConfig(ESTIMATOR_FE),
    EstimatorConfig(ESTIMATOR_KERNEL, DISTANCE_HETERO),
    EstimatorConfig(ESTIMATOR_NN1, DISTANCE_HETERO),
])
def test_gaussian_estimators(config, gaussian_draw):
    ds, _ = gaussian_draw
    report = estimate(ds, config)
    assert report.estimator == config.estimator
    assert report.beta.shape == (1,)
    assert np.isfinite(report.beta[0])


def test_binary_estimators(logistic_draw):
    ds, _ = logistic_draw
    model = ModelSpec(COVMAP_EQUALITY, link=get_link(LINK_LOGISTIC))
    logit = estimate(ds, EstimatorConfig(ESTIMATOR_LOGIT_MLE, model=model))
    single = estimate(ds, EstimatorConfig(ESTIMATOR_SINGLE_INDEX, model=model))
    assert logit.estimator == ESTIMATOR_LOGIT_MLE
    assert single.estimator == ESTIMATOR_SINGLE_INDEX
    assert single.config['link'] == LINK_LOGISTIC


def test_estimate_with_fixed_effects(gaussian_draw):
    ds, _ = gaussian_draw
    report = estimate(ds, EstimatorConfig(fixed_effects=True))
    assert report.gHat.shape == (ds.n, ds.n)
    assert report.diagnostics['g_unavailable'] == int(np.isnan(report.gHat).sum())
    # identity link: every partial effect is beta itself
    assert report.partialEffects.average[0] == pytest.approx(report.beta[0])
    assert 'gHat' in report.to_dict()


def test_fixed_effects_are_skipped_for_baselines(gaussian_draw):
    ds, _ = gaussian_draw
    report = estimate(ds, EstimatorConfig(ESTIMATOR_FE, fixed_effects=True))
    assert report.gHat is None


def test_compute_distances(gaussian_missing_draw):
    ds, _ = gaussian_missing_draw
    W = build_covariates(ds.X)
    d2, dinf, Ystar = compute_distances(ds, W, EstimatorConfig())
    assert dinf is None and Ystar is None

    d2, dinf, Ystar = compute_distances(ds, W, EstimatorConfig(distance=DISTANCE_HETERO))
    assert d2.provenance == PROVENANCE_HETEROSKEDASTIC
    assert isinstance(Ystar, DenoisedMatrix)
    assert dinf.shape == (ds.n, ds.n)


def test_denoised_outcomes_kind(gaussian_draw):
    ds, _ = gaussian_draw
    _, Ytilde = denoised_outcomes(ds, EstimatorConfig(), 'unique-pair-average')
    assert Ytilde.kind == 'unique-pair-average'
    _, Ystar = denoised_outcomes(ds, EstimatorConfig())
    assert Ystar.kind == 'row-average'
