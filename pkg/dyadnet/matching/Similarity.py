# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
The similarity distance d_inf^2 and the covariate compatibility rules used to rank candidate neighbors.

d_inf^2(i, j) = max over reference agents k of |mean over l of (Y_il - Y_jl) Y_kl|, the mean running over
the partners l observed with i, j and k.
"""

# IMPORTS
import logging
import numpy as np
from dyadnet.common import DEFAULT_OVERLAP_FLOOR, XRULE_EXACT, XRULE_BALL, XRULE_IGNORE, XRULE_AUTO, XRULES
from dyadnet.common import ParameterError

logger = logging.getLogger('dyadnet.matching')


# X RULES
def resolve_xrule(ds, x_rule=XRULE_AUTO):
    """
    Replace 'auto' with a concrete rule: exact matching if every coordinate is discrete, a ball if some
    coordinate is continuous, no restriction without covariates.
    """
    if x_rule not in XRULES:
        raise ParameterError("Invalid X rule '{}'".format(x_rule))
    if x_rule != XRULE_AUTO:
        return x_rule
    if ds.X.shape[1] == 0:
        return XRULE_IGNORE
    return XRULE_EXACT if ds.discrete.all() else XRULE_BALL


def discrete_match(ds):
    """
    n x n boolean, True where the discrete coordinates of two agents are equal.
    """
    Xd = ds.X[:, ds.discrete]
    if Xd.shape[1] == 0:
        return np.ones((ds.n, ds.n), dtype=bool)
    return (Xd[:, None, :] == Xd[None, :, :]).all(axis=2)


def continuous_distance(ds):
    """
    n x n Euclidean distance of the continuous coordinates.
    """
    Xc = np.asarray(ds.X[:, ~ds.discrete], dtype=float)
    diff = Xc[:, None, :] - Xc[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2))


def default_radius(ds):
    """
    Per-agent ball radius: the distance to the ceil(n^(3/4))-th nearest agent sharing the discrete coordinates.
    """
    n = ds.n
    rank = int(np.ceil(n ** 0.75))
    same = discrete_match(ds)
    dist = np.where(same, continuous_distance(ds), np.inf)
    np.fill_diagonal(dist, np.inf)
    radius = np.zeros(n)
    for i in range(n):
        row = np.sort(dist[i][np.isfinite(dist[i])])
        if len(row):
            radius[i] = row[min(rank, len(row)) - 1]
    return radius


def compatible_matrix(ds, x_rule=XRULE_AUTO, delta=None):
    """
    Row i flags the agents whose covariates are compatible with those of agent i.

    :param ds: a DyadicDataset.
    :param x_rule: one of XRULES.
    :param delta: ball radius (scalar or per agent), default_radius when None.
    :return: n x n boolean with a True diagonal; symmetric except for per-agent balls.
    """
    x_rule = resolve_xrule(ds, x_rule)
    if x_rule == XRULE_IGNORE:
        return np.ones((ds.n, ds.n), dtype=bool)

    C = discrete_match(ds)
    if x_rule == XRULE_BALL and (~ds.discrete).any():
        radius = default_radius(ds) if delta is None else np.broadcast_to(np.asarray(delta, dtype=float), (ds.n,))
        C = C & (continuous_distance(ds) <= radius[:, None])
    np.fill_diagonal(C, True)
    return C


# SIMILARITY DISTANCE
def _complete_rows(i, js, Y, M, scale):
    # C[j, k] = sum over l outside {i, j, k} of (Y_il - Y_jl) Y_kl, with Y zero on the diagonal
    C = M[i][None, :] - M[js] + Y[i, js][:, None] * (Y[i][None, :] - Y[js])
    return np.abs(C) / scale


def _missing_rows(i, js, Yd, Dm):
    # the same sums restricted to the partners observed with the three agents
    A = Yd[i][None, :] * Dm[js] - Yd[js] * Dm[i][None, :]
    sums = A @ Yd.T
    counts = (Dm[js] * Dm[i][None, :]) @ Dm.T
    return sums, counts


def d_infty_matrix(ds, x_rule=XRULE_IGNORE, floor=DEFAULT_OVERLAP_FLOOR):
    """
    d_inf^2 of every pair of agents.

    Reference agents whose common partners with (i, j) number less than floor are skipped; if all are skipped
    the entry is +inf. Pairs whose discrete covariates differ under an exact or ball rule are +inf as well.

    :param ds: a DyadicDataset.
    :param x_rule: one of XRULES.
    :param floor: minimum |O_ijk|.
    :return: n x n symmetric matrix, zero diagonal.
    """
    n = ds.n
    out = np.full((n, n), np.inf)
    Yd = ds.filled(0.0)
    complete = ds.is_complete()

    if complete:
        if n - 3 >= max(floor, 1):
            M = Yd @ Yd.T
            for i in range(n - 1):
                js = np.arange(i + 1, n)
                V = _complete_rows(i, js, Yd, M, float(n - 3))
                V[:, i] = -1.0
                V[np.arange(len(js)), js] = -1.0
                best = V.max(axis=1)
                out[i, js] = np.where(best >= 0, best, np.inf)
    else:
        Dm = ds.D.astype(float)
        for i in range(n - 1):
            js = np.arange(i + 1, n)
            sums, counts = _missing_rows(i, js, Yd, Dm)
            usable = counts >= max(floor, 1)
            usable[:, i] = False
            usable[np.arange(len(js)), js] = False
            with np.errstate(invalid='ignore', divide='ignore'):
                V = np.where(usable, np.abs(sums) / np.where(usable, counts, 1.0), -1.0)
            best = V.max(axis=1)
            out[i, js] = np.where(best >= 0, best, np.inf)

    out = np.minimum(out, out.T)
    np.fill_diagonal(out, 0.0)

    rule = resolve_xrule(ds, x_rule)
    if rule in (XRULE_EXACT, XRULE_BALL):
        out[~discrete_match(ds)] = np.inf

    unmatched = int(np.isinf(np.triu(out, 1)).sum())
    if unmatched:
        logger.debug("d_inf^2 undefined on %d pairs", unmatched)
    return out
