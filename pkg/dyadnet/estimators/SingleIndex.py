# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Models with a known link, E[Y_ij | ...] = F(W_ij' beta + g_ij): beta through the inverted denoised outcomes,
the fixed effects g_ij and the partial effects.
"""

# IMPORTS
import logging
import numpy as np
from dyadnet.common import ESTIMATOR_SINGLE_INDEX, DEFAULT_OVERLAP_FLOOR, DENOISE_UNIQUE_PAIRS, XRULE_AUTO
from dyadnet.common import LinkDomainError
from dyadnet.model.Covariates import covariate_array
from dyadnet.model.ModelFactory import get_link
from dyadnet.matching.PseudoDistance import d2_heteroskedastic, informative_pairs, remove_noise_floor
from dyadnet.matching.Similarity import d_infty_matrix
from dyadnet.matching.Neighborhoods import build_neighborhoods
from dyadnet.matching.Denoising import DenoisedMatrix, denoise_row_average, denoise_unique_pairs, impute_sequential
from dyadnet.estimators.KernelEstimator import kernel_beta

logger = logging.getLogger('dyadnet.estimators')

MAX_CLAMPED_SHARE = 0.5
""" Above this share of clamped denoised values the link is declared incompatible with the data.
"""


def linear_index(W, beta):
    """
    n x n matrix of W_ij' beta.
    """
    return np.tensordot(covariate_array(W), np.atleast_1d(beta), axes=([2], [0]))


def invert_link(Ystar, link):
    """
    F^-1 of the clamped imputed entries of a denoised matrix.

    :return: (DenoisedMatrix of the transformed values, number of clamped entries)
    """
    mask = Ystar.mask
    clamped_values, clamped = link.clamp(Ystar.filled(0.0))
    clamped = clamped & mask
    n_clamped = int(clamped.sum())
    share = n_clamped / max(int(mask.sum()), 1)
    if share > MAX_CLAMPED_SHARE:
        raise LinkDomainError("{:.0%} of the denoised values lie outside the range of the {} link".format(
            share, link.name))
    if n_clamped:
        logger.warning("%d denoised values clamped into the range of the %s link", n_clamped, link.name)

    with np.errstate(invalid='ignore', divide='ignore'):
        values = np.where(mask, link.inverse(clamped_values), np.nan)
    out = DenoisedMatrix(values, Ystar.kind, mask, nbhd=Ystar.nbhd, rounds=Ystar.rounds,
                         imputed_per_round=Ystar.imputed_per_round)
    return out, n_clamped


def denoise_with_distances(ds, ni_rule=None, x_rule=XRULE_AUTO, floor=DEFAULT_OVERLAP_FLOOR, kind=None,
                           delta=None, min_donors=1, max_rounds=10):
    """
    d_inf^2, neighborhoods and the denoised matrix in one call.
    Missing outcomes are imputed sequentially unless kind asks for unique pairs.

    :return: (d_inf^2 matrix, DenoisedMatrix)
    """
    dinf = d_infty_matrix(ds, x_rule, floor)
    nbhd = build_neighborhoods(ds, dinf, ni_rule, x_rule, delta)
    if kind == DENOISE_UNIQUE_PAIRS:
        return dinf, denoise_unique_pairs(ds, nbhd)
    if ds.is_complete():
        return dinf, denoise_row_average(ds, nbhd)
    return dinf, impute_sequential(ds, nbhd, min_donors=min_donors, max_rounds=max_rounds)


def denoise(ds, ni_rule=None, x_rule=XRULE_AUTO, floor=DEFAULT_OVERLAP_FLOOR, kind=None, delta=None,
            min_donors=1, max_rounds=10):
    """
    :return: DenoisedMatrix
    """
    return denoise_with_distances(ds, ni_rule, x_rule, floor, kind, delta, min_donors, max_rounds)[1]


def single_index_beta(ds, W, link=None, ni_rule=None, kernel=None, bw=None, x_rule=XRULE_AUTO,
                      floor=DEFAULT_OVERLAP_FLOOR, Ystar=None, exclude_self=False):
    """
    Denoise Y, transform with F^-1 and run the heteroskedastic kernel estimator on the transformed outcomes.

    :param ds: a DyadicDataset.
    :param W: a CovariateTensor.
    :param link: a LinkInterface, identity when None.
    :param ni_rule: a NiRule.
    :param kernel: a KernelInterface.
    :param bw: a BandwidthRule.
    :param x_rule: neighborhood matching rule.
    :param floor: overlap floor.
    :param Ystar: an already denoised matrix (skips the denoising step).
    :param exclude_self: passed to d2_heteroskedastic.
    :return: EstimateReport
    """
    link = link if link is not None else get_link()
    if Ystar is None:
        Ystar = denoise(ds, ni_rule, x_rule, floor)
    transformed, n_clamped = invert_link(Ystar, link)

    complete = bool(transformed.mask.all())
    d2 = d2_heteroskedastic(transformed, W, exclude_self=exclude_self, allow_gaps=not complete, floor=floor)

    off = transformed.mask.copy()
    np.fill_diagonal(off, False)
    d2 = remove_noise_floor(d2, informative_pairs(W, off))
    report = kernel_beta(ds.with_outcomes(transformed.filled(0.0), D=off), W, d2, kernel, bw)
    report.estimator = ESTIMATOR_SINGLE_INDEX
    report.diagnostics.update(link=link.name, clamped=n_clamped, denoiser=Ystar.kind,
                              imputation_rounds=Ystar.rounds)
    return report


def g_hat(Ytilde, W, beta, link=None):
    """
    Fixed effects g_ij = F^-1(Y~*_ij) - W_ij' beta on the imputed entries, NaN elsewhere.

    :return: n x n symmetric matrix.
    """
    link = link if link is not None else get_link()
    transformed, _ = invert_link(Ytilde, link)
    g = transformed.Ystar - linear_index(W, beta)
    missing = int((~Ytilde.mask).sum())
    if missing:
        logger.warning("%d fixed effects are not available (entries not imputed)", missing)
    return g


# PartialEffects class
class PartialEffects(object):
    """
    Per-pair effects F'(W_ij' beta + g_ij) beta_r and their averages over the pairs i < j.
    """
    def __init__(self, per_pair, average, names=None):
        self.per_pair = per_pair
        """ n x n x p, NaN where g is not available.
        """

        self.average = average
        """ p average partial effects.
        """

        self.names = names

    def to_dict(self):
        return {'average': self.average.tolist(), 'names': list(self.names) if self.names else None}

    def __str__(self):
        names = self.names or ["w{}".format(r + 1) for r in range(len(self.average))]
        return "\n".join("APE {}: {:.6g}".format(k, v) for k, v in zip(names, self.average))


def partial_effects(W, gHat, beta, link=None):
    """
    :param W: a CovariateTensor.
    :param gHat: n x n fixed effects (NaN allowed).
    :param beta: slope vector.
    :param link: a LinkInterface, identity when None.
    :return: PartialEffects
    """
    link = link if link is not None else get_link()
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    slope = link.derivative(linear_index(W, beta) + np.asarray(gHat, dtype=float))
    per_pair = slope[:, :, None] * beta[None, None, :]

    iu = np.triu_indices(len(slope), 1)
    upper = per_pair[iu]
    ok = np.isfinite(upper).all(axis=1)
    average = upper[ok].mean(axis=0) if ok.any() else np.full(len(beta), np.nan)
    return PartialEffects(per_pair, average, getattr(W, 'names', None))
