# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Benchmarks that ignore the nonparametric heterogeneity: additive fixed effects OLS and the plain logit MLE.
"""

# IMPORTS
import logging
import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components
from scipy.special import expit
from dyadnet.common import ESTIMATOR_FE, ESTIMATOR_LOGIT_MLE
from dyadnet.common import IdentificationError, SeparationError, ParameterError, SingularDesignError
from dyadnet.model.Covariates import covariate_array
from dyadnet.estimators.EstimateReport import EstimateReport
from dyadnet.estimators.KernelEstimator import solve_gram

logger = logging.getLogger('dyadnet.estimators')

LOGIT_MAX_ITER = 100
LOGIT_TOLERANCE = 1e-8
SEPARATION_BOUND = 30.0
""" A logit coefficient beyond this magnitude is taken as a sign of separation.
"""


def observed_pairs(ds):
    """
    The observed dyads i < j in canonical order.
    """
    return np.nonzero(np.triu(ds.D, 1))


def fe_additive_beta(ds, W):
    """
    OLS of Y_ij on W_ij, an intercept and agent dummies (alpha_i + alpha_j), first dummy dropped,
    through sparse normal equations.

    :return: EstimateReport
    """
    Wa = covariate_array(W)
    n = ds.n
    p = Wa.shape[2]
    rows, cols = observed_pairs(ds)
    m = len(rows)

    graph = sparse.csr_matrix((np.ones(m), (rows, cols)), shape=(n, n))
    components, _ = connected_components(graph, directed=False)
    if components > 1:
        raise IdentificationError("the observation graph has {} connected components".format(components))

    # design: intercept, covariates, dummies of agents 1..n-1
    dense = np.column_stack([np.ones(m), Wa[rows, cols]])
    c = np.concatenate([rows, cols])
    keep = c > 0
    dummies = sparse.csr_matrix((np.ones(int(keep.sum())), (np.tile(np.arange(m), 2)[keep], c[keep] - 1)),
                                shape=(m, n - 1))
    X = sparse.hstack([sparse.csr_matrix(dense), dummies]).tocsr()
    y = ds.Y[rows, cols]

    G = (X.T @ X).toarray()
    b = X.T @ y
    try:
        coef, min_eig = solve_gram(G, b)
    except SingularDesignError:
        raise IdentificationError("agent effects and covariates are not separately identified")

    logger.debug("fixed effects regression on %d dyads, %d agents", m, n)
    return EstimateReport(ESTIMATOR_FE, coef[1:1 + p], activePairs=m, gramMinEigen=min_eig,
                          intercept=float(coef[0]), n_fixed_effects=n)


def logit_mle_beta(ds, W, max_iter=LOGIT_MAX_ITER, tol=LOGIT_TOLERANCE):
    """
    Logistic MLE of Y_ij on an intercept and W_ij by iteratively reweighted least squares.
    Converged when the norm of the average score is below tol.

    :return: EstimateReport with the intercept and the iteration count.
    """
    Wa = covariate_array(W)
    rows, cols = observed_pairs(ds)
    y = ds.Y[rows, cols]
    if not np.isin(y, (0.0, 1.0)).all():
        raise ParameterError("the logit benchmark needs binary outcomes.")

    X = np.column_stack([np.ones(len(y)), Wa[rows, cols]])
    coef = np.zeros(X.shape[1])
    converged = False
    it = 0
    min_eig = None
    for it in range(1, max_iter + 1):
        mu = expit(X @ coef)
        score = X.T @ (y - mu)
        if np.linalg.norm(score) / len(y) <= tol:
            converged = True
            break
        H = (X * (mu * (1.0 - mu))[:, None]).T @ X
        try:
            step, min_eig = solve_gram(H, score)
        except SingularDesignError:
            raise SeparationError("the logit information matrix is singular at iteration {}".format(it))
        coef = coef + step
        if np.abs(coef).max() > SEPARATION_BOUND:
            raise SeparationError("logit coefficients diverge (max |coef| {:.3g})".format(np.abs(coef).max()))

    if not converged:
        logger.warning("logit did not converge in %d iterations", max_iter)

    return EstimateReport(ESTIMATOR_LOGIT_MLE, coef[1:], activePairs=len(y), gramMinEigen=min_eig,
                          intercept=float(coef[0]), iterations=it, converged=converged)
