# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Pairwise-difference regressions and the pseudo-distances built on them.

For a pair (i, j) the regression of Y_ik - Y_jk on W_ik - W_jk over the partners k observed with both
agents gives the minimised mean squared residual q2_ij. Under homoskedasticity q2_ij = d2_ij + 2 sigma^2,
with denoised outcomes the same regression gives d2_ij directly.
"""

# IMPORTS
import logging
import numpy as np
from dyadnet.common import RCOND, NEGATIVE_TOLERANCE, DEFAULT_OVERLAP_FLOOR
from dyadnet.common import PROVENANCE_HOMOSKEDASTIC, PROVENANCE_HETEROSKEDASTIC
from dyadnet.common import OverlapError, DegenerateDataError, ImputationGapError, check_pair
from dyadnet.model.Covariates import covariate_array

logger = logging.getLogger('dyadnet.matching')


# LEAST SQUARES KERNEL
def masked_lsq(dY, dW, O):
    """
    Batched min-norm least squares restricted to a mask.

    :param dY: m x K outcome differences.
    :param dW: m x K x p covariate differences.
    :param O: m x K boolean, the terms entering each regression.
    :return: (sum of squared residuals, number of terms, m x p min-norm coefficients)
    """
    dY = np.where(O, dY, 0.0)
    dW = np.where(O[..., None], dW, 0.0)

    U, s, Vh = np.linalg.svd(dW, full_matrices=False)
    smax = s[:, :1]
    keep = (s > RCOND * smax) & (smax > 0)
    inv = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)

    coef = np.einsum('mkr,mk->mr', U, dY) * inv
    beta = np.einsum('mrp,mr->mp', Vh, coef)
    resid = dY - np.einsum('mkp,mp->mk', dW, beta)
    return (resid ** 2).sum(axis=1), O.sum(axis=1), beta


def _row_regressions(i, js, Yf, Wa, M, exclude_pair=True):
    # regressions of agent i against every j in js, all partners k at once
    js = np.asarray(js)
    O = M[i][None, :] & M[js]
    if exclude_pair:
        O[:, i] = False
        O[np.arange(len(js)), js] = False
    dY = Yf[i][None, :] - Yf[js]
    dW = Wa[i][None, :, :] - Wa[js]
    return masked_lsq(dY, dW, O)


# PAIRWISE OPERATION
@check_pair
def pairwise_lsq(i, j, outcomes, W, mask=None):
    """
    Min-norm least squares of the outcome differences of i and j on their covariate differences.

    :param i: first agent.
    :param j: second agent.
    :param outcomes: n x n symmetric outcome matrix.
    :param W: a CovariateTensor (or an n x n x p array).
    :param mask: n x n observation mask, default: finite off-diagonal outcomes.
    :return: (minimised mean squared residual, min-norm coefficient vector)
    """
    outcomes = np.asarray(outcomes, dtype=float)
    if mask is None:
        mask = np.isfinite(outcomes)
        np.fill_diagonal(mask, False)
    Wa = covariate_array(W)
    Yf = np.where(mask, outcomes, 0.0)

    ss, count, beta = _row_regressions(i, [j], Yf, Wa, np.asarray(mask, dtype=bool))
    if count[0] == 0:
        raise OverlapError("agents {} and {} have no common observed partner.".format(i, j))
    return max(ss[0] / count[0], 0.0), beta[0]


# PairwiseRegressions class
class PairwiseRegressions(object):
    """
    The q2 values of all pairs and their coefficients.
    """
    def __init__(self, q2, beta, overlap, defined, floor):
        self.q2 = q2
        """ n x n symmetric, NaN where undefined, zero diagonal.
        """

        self.beta = beta
        """ n x n x p per-pair min-norm coefficients (NaN where undefined).
        """

        self.overlap = overlap
        """ n x n number of partners entering each regression.
        """

        self.defined = defined
        """ n x n boolean, True if the overlap reaches the floor.
        """

        self.floor = floor

    def __str__(self):
        n = len(self.q2)
        return "q2 on {} of {} pairs (overlap floor {})".format(int(np.triu(self.defined, 1).sum()),
                                                                 n * (n - 1) // 2, self.floor)


def _all_pairs(Yf, Wa, M, floor, exclude_pair=True):
    # canonical order: i ascending, j > i ascending; the lower triangle is mirrored
    n = len(Yf)
    p = Wa.shape[2]
    values = np.full((n, n), np.nan)
    beta = np.full((n, n, p), np.nan)
    overlap = np.zeros((n, n), dtype=np.int64)

    for i in range(n - 1):
        js = np.arange(i + 1, n)
        ss, count, b = _row_regressions(i, js, Yf, Wa, M, exclude_pair)
        with np.errstate(invalid='ignore', divide='ignore'):
            v = np.maximum(ss / count, 0.0)
        ok = count >= max(floor, 1)
        values[i, js] = np.where(ok, v, np.nan)
        beta[i, js] = np.where(ok[:, None], b, np.nan)
        overlap[i, js] = count

    values = np.where(np.isnan(values), values.T, values)
    beta = np.where(np.isnan(beta), beta.transpose(1, 0, 2), beta)
    overlap = overlap + overlap.T
    np.fill_diagonal(values, 0.0)
    defined = ~np.isnan(values)
    np.fill_diagonal(defined, False)
    return values, beta, overlap, defined


def q2_matrix(ds, W, floor=DEFAULT_OVERLAP_FLOOR):
    """
    q2_ij for every pair of agents, over the overlap O_ij of observed common partners.

    :param ds: a DyadicDataset.
    :param W: a CovariateTensor.
    :param floor: minimum overlap of a defined pair.
    :return: PairwiseRegressions
    """
    q2, beta, overlap, defined = _all_pairs(ds.filled(0.0), covariate_array(W), ds.D, floor)
    if not defined.any():
        raise DegenerateDataError("no pair of agents reaches the overlap floor of {}".format(floor))
    undefined = ds.n * (ds.n - 1) // 2 - int(np.triu(defined, 1).sum())
    if undefined:
        logger.info("%d pairs below the overlap floor of %d are left undefined", undefined, floor)
    return PairwiseRegressions(q2, beta, overlap, defined, floor)


def sigma2_hat(q2):
    """
    sigma^2 estimate: half the smallest defined q2.

    :param q2: PairwiseRegressions or an n x n matrix with NaN for undefined pairs.
    :return: nonnegative real.
    """
    values = q2.q2 if isinstance(q2, PairwiseRegressions) else np.asarray(q2, dtype=float)
    upper = values[np.triu_indices(len(values), 1)]
    upper = upper[~np.isnan(upper)]
    if len(upper) == 0:
        raise DegenerateDataError("sigma^2 needs at least one defined pair.")
    return max(float(upper.min()), 0.0) / 2.0


# PseudoDistanceMatrix class
class PseudoDistanceMatrix(object):
    """
    Symmetric nonnegative d2 with zero diagonal. Undefined pairs hold NaN.
    """
    def __init__(self, d2, provenance, sigma2hat=None, perPairBeta=None, overlap=None, noiseFloor=0.0):
        d2 = np.array(d2, dtype=float)
        if d2.ndim != 2 or d2.shape[0] != d2.shape[1]:
            raise ValueError("a pseudo-distance matrix must be square.")
        with np.errstate(invalid='ignore'):
            far = d2 < -NEGATIVE_TOLERANCE
            negative = d2 < 0
        np.fill_diagonal(far, False)
        if far.any():
            logger.warning("%d pseudo-distance entries below -%g clamped to zero (min %.6g)", int(far.sum()),
                           NEGATIVE_TOLERANCE, float(np.nanmin(d2)))
        d2[negative] = 0.0
        np.fill_diagonal(d2, 0.0)
        d2.setflags(write=False)

        # ATTRIBUTES
        self.d2 = d2
        """ Pseudo-distances, NaN where undefined.
        """

        self.provenance = provenance
        """ PROVENANCE_HOMOSKEDASTIC or PROVENANCE_HETEROSKEDASTIC.
        """

        self.sigma2hat = sigma2hat
        """ Error variance estimate (homoskedastic only).
        """

        self.perPairBeta = perPairBeta
        """ n x n x p coefficients of the pairwise regressions.
        """

        self.overlap = overlap
        """ n x n overlap counts.
        """

        self.noiseFloor = float(noiseFloor)
        """ Value subtracted from every d2 to remove the denoising noise (zero when none).
        """

        self.n = len(d2)

    @property
    def defined(self):
        """ n x n boolean, True off the diagonal where d2 is defined. """
        ok = ~np.isnan(self.d2)
        np.fill_diagonal(ok, False)
        return ok

    def pair_values(self):
        """
        The defined d2 of the pairs i < j, in canonical order.
        """
        iu = np.triu_indices(self.n, 1)
        v = self.d2[iu]
        return v[~np.isnan(v)]

    def __str__(self):
        v = self.pair_values()
        text = "{} pseudo-distances on {} pairs".format(self.provenance, len(v))
        if len(v):
            text += ", min {:.6g}, median {:.6g}, max {:.6g}".format(v.min(), np.median(v), v.max())
        if self.sigma2hat is not None:
            text += ", sigma2 {:.6g}".format(self.sigma2hat)
        if self.noiseFloor:
            text += ", noise floor {:.6g}".format(self.noiseFloor)
        return text


def d2_homoskedastic(ds, W, floor=DEFAULT_OVERLAP_FLOOR):
    """
    d2_ij = q2_ij - min q2, clamped at zero.

    :return: PseudoDistanceMatrix
    """
    q = q2_matrix(ds, W, floor)
    s2 = sigma2_hat(q)
    d2 = q.q2 - 2.0 * s2
    logger.debug("sigma2 estimate %.6g", s2)
    return PseudoDistanceMatrix(d2, PROVENANCE_HOMOSKEDASTIC, sigma2hat=s2, perPairBeta=q.beta, overlap=q.overlap)


def d2_heteroskedastic(Ystar, W, exclude_self=False, allow_gaps=False, floor=DEFAULT_OVERLAP_FLOOR):
    """
    d2_ij = min over beta of the mean over k of (Y*_ik - Y*_jk - (W_ik - W_jk)' beta)^2 on denoised outcomes.
    The mean runs over every k, i and j included, unless exclude_self.

    :param Ystar: a DenoisedMatrix.
    :param W: a CovariateTensor.
    :param exclude_self: drop k in {i, j} from the mean.
    :param allow_gaps: average over the imputed partners only instead of failing on unimputed entries.
    :param floor: minimum number of partners when allow_gaps.
    :return: PseudoDistanceMatrix
    """
    mask = np.asarray(Ystar.mask, dtype=bool)
    n = len(mask)
    required = np.ones((n, n), dtype=bool)
    if exclude_self:
        np.fill_diagonal(required, False)

    gaps = required & ~mask
    if gaps.any() and not allow_gaps:
        pairs = sorted(set((int(min(a, b)), int(max(a, b))) for a, b in zip(*np.nonzero(gaps))))
        raise ImputationGapError("{} denoised entries are not imputed".format(len(pairs)), pairs)

    Yf = np.where(mask, Ystar.Ystar, 0.0)
    d2, beta, overlap, defined = _all_pairs(Yf, covariate_array(W), mask,
                                            floor if allow_gaps else 1, exclude_pair=exclude_self)
    if not defined.any():
        raise DegenerateDataError("no pair of agents has enough imputed partners.")
    return PseudoDistanceMatrix(d2, PROVENANCE_HETEROSKEDASTIC, perPairBeta=beta, overlap=overlap)


def informative_pairs(W, mask):
    """
    Pairs whose covariate differences W_ik - W_jk are nonzero for some partner k observed with both agents
    (k outside {i, j}). The other pairs add nothing to a pairwise-difference Gram matrix.

    :param W: a CovariateTensor.
    :param mask: n x n observation mask.
    :return: n x n symmetric boolean, False on the diagonal.
    """
    Wa = covariate_array(W)
    M = np.asarray(mask, dtype=bool)
    n = len(M)
    out = np.zeros((n, n), dtype=bool)
    for i in range(n - 1):
        js = np.arange(i + 1, n)
        O = M[i][None, :] & M[js]
        O[:, i] = False
        O[np.arange(len(js)), js] = False
        moves = (Wa[i][None, :, :] != Wa[js]).any(axis=2)
        out[i, js] = (moves & O).any(axis=1)
    return out | out.T


def remove_noise_floor(d2, informative):
    """
    Subtract the smallest d2 of the informative pairs from every pair, clamping at zero.
    Denoising errors enter every heteroskedastic d2 as a common floor, the way 2 sigma^2 enters q2.

    :param d2: a PseudoDistanceMatrix.
    :param informative: n x n boolean from informative_pairs.
    :return: PseudoDistanceMatrix with noiseFloor set.
    """
    values = np.where(np.triu(informative, 1) & d2.defined, d2.d2, np.nan)
    if np.isnan(values).all():
        return d2
    floor = max(float(np.nanmin(values)), 0.0)
    logger.debug("noise floor %.6g removed from %s pseudo-distances", floor, d2.provenance)
    shifted = np.maximum(d2.d2 - floor, 0.0)
    return PseudoDistanceMatrix(shifted, d2.provenance, d2.sigma2hat, d2.perPairBeta, d2.overlap,
                                noiseFloor=d2.noiseFloor + floor)
