# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Estimates of the error-free outcomes Y*_ij by averaging outcomes over neighborhoods.
"""

# IMPORTS
import logging
import numpy as np
from dyadnet.common import DENOISE_ROW_AVERAGE, DENOISE_UNIQUE_PAIRS, DENOISE_EXTERNAL
from dyadnet.common import DimensionError, SymmetryError

logger = logging.getLogger('dyadnet.matching')


# DenoisedMatrix class
class DenoisedMatrix(object):
    """
    Denoised outcomes on every (i, j), diagonal included, with the mask of imputed entries.
    """
    def __init__(self, Ystar, kind, mask, nbhd=None, raw=None, rounds=1, imputed_per_round=None):
        Ystar = np.array(Ystar, dtype=float)
        mask = np.array(mask, dtype=bool)
        if Ystar.ndim != 2 or Ystar.shape[0] != Ystar.shape[1] or mask.shape != Ystar.shape:
            raise DimensionError("a denoised matrix and its mask must be square and of the same size.")
        Ystar[~mask] = np.nan
        Ystar.setflags(write=False)
        mask.setflags(write=False)

        # ATTRIBUTES
        self.Ystar = Ystar
        """ Denoised outcomes, NaN where not imputed.
        """

        self.kind = kind
        """ DENOISE_ROW_AVERAGE, DENOISE_UNIQUE_PAIRS or DENOISE_EXTERNAL.
        """

        self.mask = mask
        """ True where the entry was imputed.
        """

        self.nbhd = nbhd
        """ The NeighborhoodIndex the averages were taken on.
        """

        self.raw = raw
        """ Row averages before symmetrisation (row-average kind only).
        """

        self.rounds = rounds
        """ Number of productive imputation rounds.
        """

        self.imputed_per_round = list(imputed_per_round) if imputed_per_round is not None else [int(mask.sum())]
        """ Entries newly imputed in each round.
        """

        self.n = len(Ystar)

    @classmethod
    def from_external(cls, matrix, mask=None):
        """
        Wrap a denoised matrix produced elsewhere (e.g. a low-rank completion).

        :param matrix: n x n symmetric matrix, NaN for entries not imputed.
        :param mask: optional imputed-entry mask, default: the finite entries.
        """
        matrix = np.asarray(matrix, dtype=float)
        if mask is None:
            mask = np.isfinite(matrix)
        mask = np.asarray(mask, dtype=bool)
        both = mask & mask.T
        if matrix.shape[0] != matrix.shape[1]:
            raise DimensionError("a denoised matrix must be square.")
        if not np.allclose(np.where(both, matrix, 0.0), np.where(both, matrix.T, 0.0), rtol=0, atol=1e-12):
            raise SymmetryError("an external denoised matrix must be symmetric.")
        return cls(matrix, DENOISE_EXTERNAL, mask)

    def unimputed_pairs(self):
        """
        Pairs (i, j) with i <= j that are not imputed.
        """
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(~self.mask)))]

    def filled(self, value=0.0):
        return np.where(self.mask, self.Ystar, value)

    def __str__(self):
        text = "{} denoised matrix, {} of {} entries imputed".format(self.kind, int(self.mask.sum()), self.n ** 2)
        if self.rounds > 1:
            text += " in {} rounds ({})".format(self.rounds, ", ".join(str(c) for c in self.imputed_per_round))
        return text


# SYMMETRISATION
def symmetrize(values, mask):
    """
    (Y_ij + Y_ji) / 2 where both sides are imputed, the imputed side where only one is.

    :return: (symmetric values, symmetric mask)
    """
    v = np.where(mask, values, 0.0)
    both = mask & mask.T
    out = np.where(both, (v + v.T) / 2.0, np.where(mask, v, v.T))
    sym_mask = mask | mask.T
    return np.where(sym_mask, out, np.nan), sym_mask


# DONOR POOLS
def _pool_averages(nbhd, Z, M, rows=None):
    # j-specific pools: the first n_i ranked candidates i' of agent i with an observed (i', j)
    n = len(Z)
    sums = np.zeros((n, n))
    counts = np.zeros((n, n), dtype=np.int64)
    for i in (range(n) if rows is None else rows):
        R = nbhd.ranked[i]
        obs = M[R]
        take = obs & (np.cumsum(obs, axis=0) <= nbhd.target[i])
        sums[i] = (np.where(take, Z[R], 0.0)).sum(axis=0)
        counts[i] = take.sum(axis=0)
    return sums, counts


def denoise_row_average(ds, nbhd, symmetric=True):
    """
    Y*_ij estimated by the average of Y_i'j over the neighbors i' of i.

    Complete data: the average over N_i with the convention Y_jj = 0.
    Missing data: the average over the j-specific donors; entries without donors stay unimputed.

    :param ds: a DyadicDataset.
    :param nbhd: a NeighborhoodIndex.
    :param symmetric: symmetrise the row averages.
    :return: DenoisedMatrix
    """
    if ds.is_complete():
        A = nbhd.membership().astype(float)
        raw = (A @ ds.filled(0.0)) / nbhd.sizes[:, None]
        raw_mask = np.ones((ds.n, ds.n), dtype=bool)
    else:
        sums, counts = _pool_averages(nbhd, ds.filled(0.0), ds.D)
        raw_mask = counts > 0
        with np.errstate(invalid='ignore', divide='ignore'):
            raw = np.where(raw_mask, sums / np.maximum(counts, 1), np.nan)
        missing = int((~raw_mask).sum())
        if missing:
            logger.warning("%d entries have an empty donor pool and are not imputed", missing)

    if symmetric:
        values, mask = symmetrize(raw, raw_mask)
    else:
        values, mask = raw, raw_mask
    return DenoisedMatrix(values, DENOISE_ROW_AVERAGE, mask, nbhd=nbhd, raw=raw)


def impute_sequential(ds, nbhd, min_donors=1, max_rounds=10, symmetric=True):
    """
    Impute the entries whose donor pools are rich enough, then use the imputed values as observed outcomes
    to widen the pools of the remaining entries, until nothing changes or max_rounds is reached.

    :param ds: a DyadicDataset.
    :param nbhd: a NeighborhoodIndex.
    :param min_donors: minimum number of donors of an imputed entry.
    :param max_rounds: maximum number of rounds.
    :param symmetric: symmetrise the result.
    :return: DenoisedMatrix with rounds and imputed_per_round filled in.
    """
    if ds.is_complete():
        return denoise_row_average(ds, nbhd, symmetric)

    n = ds.n
    Z = ds.filled(0.0)
    M = ds.D.copy()
    Yhat = np.full((n, n), np.nan)
    done = np.zeros((n, n), dtype=bool)
    per_round = []

    for r in range(max_rounds):
        rows = np.nonzero(~done.all(axis=1))[0]
        sums, counts = _pool_averages(nbhd, Z, M, rows)
        new = (counts >= max(min_donors, 1)) & ~done
        if not new.any():
            break
        Yhat[new] = sums[new] / counts[new]
        done |= new
        per_round.append(int(new.sum()))
        logger.debug("imputation round %d: %d entries", r + 1, per_round[-1])

        # imputed off-diagonal entries become observed outcomes of the next rounds
        grow = new & ~ds.D
        np.fill_diagonal(grow, False)
        Z[grow] = Yhat[grow]
        M |= grow
        if done.all():
            break

    if not done.all():
        logger.warning("%d entries remain unimputed after %d rounds", int((~done).sum()), len(per_round))

    if symmetric:
        values, mask = symmetrize(Yhat, done)
    else:
        values, mask = Yhat, done
    return DenoisedMatrix(values, DENOISE_ROW_AVERAGE, mask, nbhd=nbhd, raw=Yhat, rounds=len(per_round),
                          imputed_per_round=per_round)


def denoise_unique_pairs(ds, nbhd):
    """
    Y*_ij estimated by the average of Y_i'j' over the unique unordered observed pairs {i', j'} with i' in N_i,
    j' in N_j and i' != j'.

    :param ds: a DyadicDataset.
    :param nbhd: a NeighborhoodIndex.
    :return: DenoisedMatrix, exactly symmetric.
    """
    n = ds.n
    A = nbhd.membership().astype(float)
    Yd = ds.filled(0.0)
    Dm = ds.D.astype(float)

    # ordered sums over N_i x N_j; pairs inside N_i & N_j are counted twice
    S = A @ Yd @ A.T
    C = A @ Dm @ A.T

    total = np.full((n, n), np.nan)
    count = np.zeros((n, n))
    for i in range(n):
        Ni = nbhd.neighbors[i]
        js = np.arange(i, n)
        common = (A[i][None, :] * A[js])[:, Ni]
        Ys = Yd[np.ix_(Ni, Ni)]
        Ds = Dm[np.ix_(Ni, Ni)]
        twice_y = ((common @ Ys) * common).sum(axis=1)
        twice_d = ((common @ Ds) * common).sum(axis=1)
        total[i, js] = S[i, js] - 0.5 * twice_y
        count[i, js] = np.rint(C[i, js] - 0.5 * twice_d)

    iu = np.triu_indices(n, 1)
    total[(iu[1], iu[0])] = total[iu]
    count[(iu[1], iu[0])] = count[iu]

    mask = count > 0
    with np.errstate(invalid='ignore', divide='ignore'):
        values = np.where(mask, total / np.maximum(count, 1), np.nan)
    missing = int(np.triu(~mask).sum())
    if missing:
        logger.warning("%d entries have no observed neighbor pair and are not imputed", missing)
    return DenoisedMatrix(values, DENOISE_UNIQUE_PAIRS, mask, nbhd=nbhd)
