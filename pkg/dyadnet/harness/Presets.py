# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
The Monte Carlo designs of the simulation tables, encoded as McConfig lists.
"""

# IMPORTS
from dyadnet.common import ESTIMATOR_KERNEL, ESTIMATOR_NN1, ESTIMATOR_FE, ESTIMATOR_LOGIT_MLE
from dyadnet.common import ESTIMATOR_SINGLE_INDEX, DISTANCE_HOMO, ParameterError
from dyadnet.dgp.DgpInterface import DgpSpec, DGP_GAUSSIAN, DGP_LOGISTIC
from dyadnet.model.Covariates import ModelSpec, COVMAP_SQUARED_DIFFERENCE, COVMAP_EQUALITY
from dyadnet.model.ModelFactory import get_link, LINK_LOGISTIC
from dyadnet.matching.Neighborhoods import NiRule
from dyadnet.estimators.Pipeline import EstimatorConfig
from dyadnet.harness.MonteCarlo import McConfig

# PRESETS
PRESET_TABLE1 = 'table1'
PRESET_TABLE2 = 'table2'
PRESET_MISSING = 'missing'
PRESETS = (PRESET_TABLE1, PRESET_TABLE2, PRESET_MISSING)

DEFAULT_REPS = 10000
""" Replications per design of the full tables.
"""

DEFAULT_SEED = 0

TABLE1_N = (30, 50, 100)
TABLE1_RHO = (0.0, 0.3, 0.5, 0.7)

TABLE2_N = 550
TABLE2_FAST_N = 200
TABLE2_NI_CONST = 0.5

MISSING_N = 100
MISSING_RHO = 0.5
MISSING_RATE = 0.3


def table1_estimators():
    """
    Additive fixed effects, kernel and nearest neighbor on homoskedastic distances.
    """
    model = ModelSpec(COVMAP_SQUARED_DIFFERENCE)
    return [EstimatorConfig(ESTIMATOR_FE, model=model),
            EstimatorConfig(ESTIMATOR_KERNEL, DISTANCE_HOMO, model=model),
            EstimatorConfig(ESTIMATOR_NN1, DISTANCE_HOMO, model=model)]


def table2_estimators():
    """
    Logit MLE and the single index kernel estimator with the logistic link.
    """
    model = ModelSpec(COVMAP_EQUALITY, link=get_link(LINK_LOGISTIC))
    return [EstimatorConfig(ESTIMATOR_LOGIT_MLE, model=model),
            EstimatorConfig(ESTIMATOR_SINGLE_INDEX, model=model, ni_rule=NiRule(c=TABLE2_NI_CONST))]


def preset_configs(name, reps=None, seed=None, parallelism=1, output=None, fast=False, n=None):
    """
    :param name: one of PRESETS.
    :param reps: replications per design, DEFAULT_REPS when None.
    :param seed: master seed.
    :param parallelism: worker processes.
    :param output: base folder of the result files.
    :param fast: table2 at n = 200.
    :param n: table1 only, keep the designs with this network size.
    :return: list of McConfig in table order.
    """
    reps = DEFAULT_REPS if reps is None else reps
    seed = DEFAULT_SEED if seed is None else seed
    common = {'reps': reps, 'parallelism': parallelism, 'output': output}

    if name == PRESET_TABLE1:
        sizes = TABLE1_N if n is None else tuple(s for s in TABLE1_N if s == n)
        if not sizes:
            raise ParameterError("table1 has no block with n = {}, choose among {}".format(n, TABLE1_N))
        return [McConfig(DgpSpec(DGP_GAUSSIAN, size, rho, seed=seed), table1_estimators(),
                         name="table1_n{}_rho{}".format(size, rho), **common)
                for size in sizes for rho in TABLE1_RHO]

    if name == PRESET_TABLE2:
        size = TABLE2_FAST_N if fast else TABLE2_N
        return [McConfig(DgpSpec(DGP_LOGISTIC, size, seed=seed), table2_estimators(),
                         name="table2_n{}".format(size), **common)]

    if name == PRESET_MISSING:
        return [McConfig(DgpSpec(DGP_GAUSSIAN, MISSING_N, MISSING_RHO, missing_rate=MISSING_RATE, seed=seed),
                         table1_estimators()[1:], name="missing_n{}_rho{}".format(MISSING_N, MISSING_RHO),
                         **common)]

    raise ParameterError("Invalid preset '{}'".format(name))
