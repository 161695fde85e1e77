# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Pairwise-difference estimators of beta: the kernel weighted estimator and nearest neighbor matching.

beta = [sum_{i<j} w_ij sum_k dW dW']^-1 [sum_{i<j} w_ij sum_k dW dY] with dW = W_ik - W_jk, dY = Y_ik - Y_jk and k
running over the partners observed with both agents.
"""

# IMPORTS
import logging
import numpy as np
from scipy.linalg import solve, eigvalsh
from dyadnet.common import GRAM_TOLERANCE, ESTIMATOR_KERNEL, ESTIMATOR_NN1
from dyadnet.common import SingularDesignError, BandwidthError, DegenerateDataError
from dyadnet.model.Covariates import covariate_array
from dyadnet.model.ModelFactory import get_kernel
from dyadnet.matching.PseudoDistance import informative_pairs
from dyadnet.estimators.EstimateReport import EstimateReport, BandwidthRule, BANDWIDTH_ROT

logger = logging.getLogger('dyadnet.estimators')

MAX_DOUBLINGS = 10
""" Times the rule of thumb h^2 is doubled before giving up on a fit without active pairs or with a singular Gram.
"""


def accumulate_pairs(i, js, weights, Yf, Wa, D):
    """
    Weighted Gram matrix and cross products of the pairs (i, j) for j in js.

    :return: (p x p Gram, p-vector of cross products)
    """
    js = np.asarray(js)
    O = D[i][None, :] & D[js]
    O[:, i] = False
    O[np.arange(len(js)), js] = False
    dY = np.where(O, Yf[i][None, :] - Yf[js], 0.0)
    dW = np.where(O[..., None], Wa[i][None, :, :] - Wa[js], 0.0)
    G = np.einsum('m,mkp,mkq->pq', weights, dW, dW)
    b = np.einsum('m,mkp,mk->p', weights, dW, dY)
    return G, b


def solve_gram(G, b):
    """
    Symmetric positive definite solve after a relative minimum eigenvalue check.

    :return: (solution, minimum eigenvalue)
    """
    G = (G + G.T) / 2.0
    eig = eigvalsh(G)
    scale = max(abs(eig[-1]), np.finfo(float).tiny)
    if eig[0] <= GRAM_TOLERANCE * scale:
        raise SingularDesignError("Gram matrix is singular: min eigenvalue {:.3g}, max {:.3g}".format(eig[0], eig[-1]))
    return solve(G, b, assume_a='pos'), float(eig[0])


def _kernel_weights(kernel, dist, h2):
    # upper triangle only, NaN distances weigh nothing
    with np.errstate(invalid='ignore'):
        return np.triu(np.nan_to_num(kernel(dist / h2), nan=0.0), 1)


def _weighted_gram(weights, Yf, Wa, D):
    # canonical pair order: i ascending then j ascending
    p = Wa.shape[2]
    G = np.zeros((p, p))
    b = np.zeros(p)
    for i in range(len(weights) - 1):
        js = np.nonzero(weights[i] > 0)[0]
        if len(js) == 0:
            continue
        Gi, bi = accumulate_pairs(i, js, weights[i, js], Yf, Wa, D)
        G += Gi
        b += bi
    return G, b


def kernel_beta(ds, W, d2, kernel=None, bw=None):
    """
    Kernel weighted pairwise-difference estimator with weights K(d2_ij / h^2).

    Only the pairs whose covariate differences do not vanish on their overlap are weighted, and the rule of thumb
    is computed on their pseudo-distances. The rule of thumb h^2 is doubled while no such pair has a positive
    weight or the weighted Gram matrix is singular, a fixed h^2 is used as given.

    :param ds: a DyadicDataset (its mask defines the overlaps).
    :param W: a CovariateTensor.
    :param d2: a PseudoDistanceMatrix.
    :param kernel: a KernelInterface, Epanechnikov when None.
    :param bw: a BandwidthRule, rule of thumb when None.
    :return: EstimateReport
    """
    kernel = kernel if kernel is not None else get_kernel()
    bw = bw if bw is not None else BandwidthRule()
    Wa = covariate_array(W)
    Yf = ds.filled(0.0)
    n = ds.n

    informative = informative_pairs(Wa, ds.D)
    dist = np.where(informative, np.asarray(d2.d2, dtype=float), np.nan)
    upper = dist[np.triu_indices(n, 1)]
    if not np.isfinite(upper).any():
        raise SingularDesignError("covariate differences vanish on every pair with a defined pseudo-distance.")

    h2 = bw.resolve(upper)
    doublings = 0
    while True:
        weights = _kernel_weights(kernel, dist, h2)
        if (weights > 0).any():
            G, b = _weighted_gram(weights, Yf, Wa, ds.D)
            try:
                beta, min_eig = solve_gram(G, b)
                break
            except SingularDesignError:
                if bw.kind != BANDWIDTH_ROT or doublings == MAX_DOUBLINGS:
                    raise
        elif bw.kind != BANDWIDTH_ROT:
            raise BandwidthError("no pair has a positive kernel weight with the fixed h2 = {:.6g}".format(h2))
        elif doublings == MAX_DOUBLINGS:
            raise BandwidthError("no pair has a positive kernel weight with h2 = {:.6g}".format(h2))
        h2 *= 2.0
        doublings += 1
    if doublings:
        logger.warning("bandwidth doubled %d times to h2 = %.6g", doublings, h2)

    w = weights[weights > 0]
    report = EstimateReport(ESTIMATOR_KERNEL, beta, bandwidth2=h2, activePairs=len(w), gramMinEigen=min_eig,
                            weight_sum=float(w.sum()),
                            effective_pairs=float(w.sum() ** 2 / (w ** 2).sum()),
                            informative_pairs=int(np.isfinite(upper).sum()),
                            noise_floor=d2.noiseFloor,
                            doublings=doublings,
                            kernel=kernel.name,
                            distance=d2.provenance)
    logger.info("kernel beta %s on %d pairs, h2 %.6g", np.array2string(beta, precision=6), len(w), h2)
    return report


def nn1_beta(ds, W, d2):
    """
    Match every agent with its closest defined partner (ties by index) and pool the n matched pairs.

    :return: EstimateReport with the matched pairs in the diagnostics.
    """
    Wa = covariate_array(W)
    Yf = ds.filled(0.0)
    p = Wa.shape[2]
    dist = np.array(d2.d2, dtype=float)
    np.fill_diagonal(dist, np.nan)

    G = np.zeros((p, p))
    b = np.zeros(p)
    matches = []
    for i in range(ds.n):
        row = dist[i]
        if np.isnan(row).all():
            continue
        j = int(np.nanargmin(row))
        Gi, bi = accumulate_pairs(i, [j], np.ones(1), Yf, Wa, ds.D)
        G += Gi
        b += bi
        matches.append((i, j))

    if not matches:
        raise DegenerateDataError("no agent has a defined partner to be matched with.")
    if len(matches) < ds.n:
        logger.warning("%d agents without a defined partner are not matched", ds.n - len(matches))

    beta, min_eig = solve_gram(G, b)
    return EstimateReport(ESTIMATOR_NN1, beta, activePairs=len(matches), gramMinEigen=min_eig,
                          matched_pairs=matches, distance=d2.provenance)
