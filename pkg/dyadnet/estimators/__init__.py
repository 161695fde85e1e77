# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

from dyadnet.estimators.EstimateReport import EstimateReport, BandwidthRule, bandwidth_rot
from dyadnet.estimators.KernelEstimator import kernel_beta, nn1_beta
from dyadnet.estimators.Baselines import fe_additive_beta, logit_mle_beta
from dyadnet.estimators.SingleIndex import single_index_beta, g_hat, partial_effects
from dyadnet.estimators.Nonparametric import h_nonparametric
from dyadnet.estimators.Pipeline import EstimatorConfig, estimate
