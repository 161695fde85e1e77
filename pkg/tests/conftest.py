# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

# IMPORTS
import logging
import numpy as np
import pytest
from dyadnet.dgp.DgpInterface import DgpSpec, DGP_GAUSSIAN, DGP_LOGISTIC
from dyadnet.dgp.DgpFactory import simulate
from dyadnet.model.DyadicDataset import DyadicDataset


@pytest.fixture(autouse=True)
def restore_propagation():
    # init_logging stops propagation, caplog needs it back
    logger = logging.getLogger('dyadnet')
    logger.propagate = True
    yield
    for h in list(logger.handlers):
        logger.removeHandler(h)
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


@pytest.fixture
def gaussian_draw():
    return simulate(DgpSpec(DGP_GAUSSIAN, n=30, rho=0.5, seed=3), rep=0)


@pytest.fixture
def gaussian_missing_draw():
    return simulate(DgpSpec(DGP_GAUSSIAN, n=30, rho=0.5, missing_rate=0.2, seed=3), rep=0)


@pytest.fixture
def logistic_draw():
    return simulate(DgpSpec(DGP_LOGISTIC, n=40, seed=5), rep=0)


@pytest.fixture
def small_random_ds():
    """ Eight agents, a continuous covariate, complete data. """
    rng = np.random.default_rng(11)
    n = 8
    Y = rng.normal(size=(n, n))
    Y = (Y + Y.T) / 2
    return DyadicDataset(Y, X=rng.normal(size=(n, 1)))


@pytest.fixture
def small_missing_ds():
    """ Nine agents, a continuous covariate, about one dyad in seven unobserved. """
    rng = np.random.default_rng(12)
    n = 9
    Y = rng.normal(size=(n, n))
    Y = (Y + Y.T) / 2
    D = np.triu(rng.uniform(size=(n, n)) > 0.15, 1)
    D = D | D.T
    return DyadicDataset(Y, D, X=rng.normal(size=(n, 1)))
