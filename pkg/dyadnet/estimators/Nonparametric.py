# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Nonparametric covariate effect h(x, x~) with discrete X and the normalisation h(x, x) = 0.

For agents i with X_i = x and j with X_j = x~ the differences a_k = Y*_ik - Y*_jk over partners with X_k = x and
b_k over partners with X_k = x~ give the objective mean (a + mu)^2 + mean (b - mu)^2, minimised at
mu* = (mean b - mean a) / 2. The estimate is mu* of the pair with the smallest minimum.
"""

# IMPORTS
import logging
import numpy as np
from dyadnet.common import GroupError

logger = logging.getLogger('dyadnet.estimators')

OVERIDENTIFICATION_PAIRS = 5
""" Number of best pairs whose mu* dispersion is reported.
"""


# HReport class
class HReport(object):
    """
    h(x, x~) with the chosen pair and the overidentification diagnostic.
    """
    def __init__(self, h, d2, pair, best_mu, best_d2):
        self.h = h
        """ The estimate.
        """

        self.d2 = d2
        """ Minimised objective of the chosen pair.
        """

        self.pair = pair
        """ (i, j) with X_i = x and X_j = x~, None when x = x~.
        """

        self.best_mu = best_mu
        """ mu* of the best pairs, best first.
        """

        self.best_d2 = best_d2

    @property
    def spread(self):
        """ max - min of mu* over the best pairs. """
        return float(np.ptp(self.best_mu)) if len(self.best_mu) else 0.0

    def __float__(self):
        return float(self.h)

    def __str__(self):
        return "h = {:.6g} from pair {} (objective {:.3g}), spread over {} best pairs {:.3g}".format(
            self.h, self.pair, self.d2, len(self.best_mu), self.spread)

    def to_dict(self):
        return {'h': self.h, 'd2': self.d2, 'pair': list(self.pair) if self.pair else None,
                'best_mu': list(map(float, self.best_mu)), 'best_d2': list(map(float, self.best_d2)),
                'spread': self.spread}


def _group(X, value):
    X = np.asarray(X, dtype=object)
    if X.ndim == 1:
        return np.array([x == value for x in X], dtype=bool)
    value = np.atleast_1d(np.asarray(value, dtype=object))
    return np.array([np.array_equal(np.asarray(r, dtype=object), value) for r in X], dtype=bool)


def h_nonparametric(Ystar, X, x, x_tilde, tolerance=0.0):
    """
    :param Ystar: a DenoisedMatrix.
    :param X: n discrete covariate values (or records).
    :param x: first covariate value.
    :param x_tilde: second covariate value.
    :param tolerance: objectives within tolerance of the minimum count as tied, the lowest (i, j) wins.
    :return: HReport
    """
    gx = _group(X, x)
    gt = _group(X, x_tilde)
    if not gx.any() or not gt.any():
        raise GroupError("no agent has covariate {}".format(x if not gx.any() else x_tilde))
    if np.array_equal(gx, gt):
        return HReport(0.0, 0.0, None, np.zeros(0), np.zeros(0))

    Y = Ystar.Ystar
    M = Ystar.mask
    I = np.nonzero(gx)[0]
    J = np.nonzero(gt)[0]

    # rows: pairs (i, j) in lexicographic order
    pairs = [(int(i), int(j)) for i in I for j in J if i != j]
    Pi = np.array([p[0] for p in pairs])
    Pj = np.array([p[1] for p in pairs])
    diff = Y[Pi] - Y[Pj]
    ok = M[Pi] & M[Pj]

    with np.errstate(invalid='ignore', divide='ignore'):
        ta = ok & gx[None, :]
        tb = ok & gt[None, :]
        na = ta.sum(axis=1)
        nb = tb.sum(axis=1)
        a = np.where(ta, diff, 0.0)
        b = np.where(tb, diff, 0.0)
        mean_a = a.sum(axis=1) / na
        mean_b = b.sum(axis=1) / nb
        mu = (mean_b - mean_a) / 2.0
        obj = (np.where(ta, (diff + mu[:, None]) ** 2, 0.0).sum(axis=1) / na +
               np.where(tb, (diff - mu[:, None]) ** 2, 0.0).sum(axis=1) / nb)

    valid = (na > 0) & (nb > 0)
    if not valid.any():
        raise GroupError("no pair of agents has imputed partners in both groups")

    obj = np.where(valid, obj, np.inf)
    best = np.nonzero(obj <= obj.min() + tolerance)[0][0]
    order = np.lexsort((np.arange(len(obj)), obj))[:OVERIDENTIFICATION_PAIRS]
    order = order[np.isfinite(obj[order])]

    report = HReport(float(mu[best]), float(obj[best]), pairs[best], mu[order], obj[order])
    logger.debug("%s", report)
    return report
