# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
One configuration object for every estimator and the function that runs it end to end.
"""

# IMPORTS
import logging
import numpy as np
from dyadnet.common import ESTIMATORS, ESTIMATOR_KERNEL, ESTIMATOR_NN1, ESTIMATOR_FE, ESTIMATOR_LOGIT_MLE
from dyadnet.common import ESTIMATOR_SINGLE_INDEX, DISTANCE_HOMO, DISTANCE_HETERO, DEFAULT_OVERLAP_FLOOR
from dyadnet.common import DENOISE_UNIQUE_PAIRS, XRULE_AUTO, XRULES, ParameterError
from dyadnet.model.Covariates import ModelSpec, build_covariates
from dyadnet.model.ModelFactory import get_kernel, KERNEL_EPANECHNIKOV
from dyadnet.matching.PseudoDistance import d2_homoskedastic, d2_heteroskedastic, informative_pairs, remove_noise_floor
from dyadnet.matching.Neighborhoods import NiRule
from dyadnet.estimators.EstimateReport import BandwidthRule
from dyadnet.estimators.KernelEstimator import kernel_beta, nn1_beta
from dyadnet.estimators.Baselines import fe_additive_beta, logit_mle_beta
from dyadnet.estimators.SingleIndex import single_index_beta, g_hat, partial_effects, denoise_with_distances

logger = logging.getLogger('dyadnet.estimators')


# EstimatorConfig class
class EstimatorConfig(object):
    """
    Everything needed to run one estimator on a dataset.
    """
    def __init__(self, estimator=ESTIMATOR_KERNEL, distance=DISTANCE_HOMO, model=None, kernel=KERNEL_EPANECHNIKOV,
                 bandwidth=None, ni_rule=None, x_rule=XRULE_AUTO, floor=DEFAULT_OVERLAP_FLOOR,
                 fixed_effects=False, exclude_self=False, min_donors=1, max_rounds=10, label=None):
        if estimator not in ESTIMATORS:
            raise ParameterError("Invalid estimator '{}'".format(estimator))
        if distance not in (DISTANCE_HOMO, DISTANCE_HETERO):
            raise ParameterError("Invalid distance '{}'".format(distance))
        if x_rule not in XRULES:
            raise ParameterError("Invalid X rule '{}'".format(x_rule))

        self.estimator = estimator
        """ One of ESTIMATORS.
        """

        self.distance = distance
        """ Pseudo-distance of the matching estimators: 'homo' from raw outcomes, 'hetero' from denoised ones.
        """

        self.model = model if model is not None else ModelSpec()
        """ Covariate map and link.
        """

        self.kernel = kernel
        self.bandwidth = bandwidth if bandwidth is not None else BandwidthRule()
        self.ni_rule = ni_rule if ni_rule is not None else NiRule()
        self.x_rule = x_rule
        self.floor = int(floor)

        self.fixed_effects = fixed_effects
        """ Also estimate g_ij and the partial effects.
        """

        self.exclude_self = exclude_self
        self.min_donors = min_donors
        self.max_rounds = max_rounds

        self.label = label if label is not None else "{}-{}".format(estimator, distance) \
            if estimator in (ESTIMATOR_KERNEL, ESTIMATOR_NN1) else estimator
        """ Column name in Monte Carlo summaries.
        """

    def replace(self, **kwargs):
        fields = dict(self.__dict__)
        fields.update(kwargs)
        if 'label' not in kwargs and ('estimator' in kwargs or 'distance' in kwargs):
            fields['label'] = None
        return EstimatorConfig(**fields)

    def __str__(self):
        return "{}: distance {}, {}, kernel {}, h2 {}, {}, X rule {}, floor {}".format(
            self.label, self.distance, self.model, self.kernel, self.bandwidth, self.ni_rule, self.x_rule,
            self.floor)

    def to_dict(self):
        return {'estimator': self.estimator, 'distance': self.distance, 'covariate_map': self.model.covariate_map,
                'link': self.model.link.name, 'kernel': self.kernel, 'bandwidth': str(self.bandwidth),
                'ni_rule': self.ni_rule.to_dict(), 'x_rule': self.x_rule, 'floor': self.floor,
                'fixed_effects': self.fixed_effects, 'exclude_self': self.exclude_self, 'label': self.label}


# PIPELINE STEPS
def denoised_outcomes(ds, config, kind=None):
    """
    :return: (d_inf^2 matrix, DenoisedMatrix)
    """
    return denoise_with_distances(ds, config.ni_rule, config.x_rule, config.floor, kind,
                                  min_donors=config.min_donors, max_rounds=config.max_rounds)


def compute_distances(ds, W, config):
    """
    The pseudo-distances selected by config.distance, with the intermediates of the heteroskedastic route.

    :return: (PseudoDistanceMatrix, d_inf^2 or None, DenoisedMatrix or None)
    """
    if config.distance == DISTANCE_HOMO:
        return d2_homoskedastic(ds, W, config.floor), None, None
    dinf, Ystar = denoised_outcomes(ds, config)
    d2 = d2_heteroskedastic(Ystar, W, exclude_self=config.exclude_self, allow_gaps=not Ystar.mask.all(),
                            floor=config.floor)
    return remove_noise_floor(d2, informative_pairs(W, ds.D)), dinf, Ystar


def estimate(ds, config=None, W=None):
    """
    Run the configured estimator.

    :param ds: a DyadicDataset.
    :param config: an EstimatorConfig, kernel on homoskedastic distances when None.
    :param W: a CovariateTensor, built from ds.X and config.model when None.
    :return: EstimateReport
    """
    config = config if config is not None else EstimatorConfig()
    W = W if W is not None else build_covariates(ds.X, config.model)
    kernel = get_kernel(config.kernel)
    link = config.model.link
    logger.info("estimating %s", config)

    if config.estimator in (ESTIMATOR_KERNEL, ESTIMATOR_NN1):
        d2, _, _ = compute_distances(ds, W, config)
        if config.estimator == ESTIMATOR_KERNEL:
            report = kernel_beta(ds, W, d2, kernel, config.bandwidth)
        else:
            report = nn1_beta(ds, W, d2)
    elif config.estimator == ESTIMATOR_FE:
        report = fe_additive_beta(ds, W)
    elif config.estimator == ESTIMATOR_LOGIT_MLE:
        report = logit_mle_beta(ds, W)
    else:
        _, Ystar = denoised_outcomes(ds, config)
        report = single_index_beta(ds, W, link, kernel=kernel, bw=config.bandwidth, floor=config.floor,
                                   Ystar=Ystar, exclude_self=config.exclude_self)

    if config.fixed_effects and config.estimator in (ESTIMATOR_KERNEL, ESTIMATOR_NN1, ESTIMATOR_SINGLE_INDEX):
        _, Ytilde = denoised_outcomes(ds, config, DENOISE_UNIQUE_PAIRS)
        report.gHat = g_hat(Ytilde, W, report.beta, link)
        report.partialEffects = partial_effects(W, report.gHat, report.beta, link)
        report.diagnostics['g_unavailable'] = int(np.isnan(report.gHat).sum())

    report.config = config.to_dict()
    return report
