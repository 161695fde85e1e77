# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
The observed network: n agents, an undirected outcome matrix with an absent diagonal,
the observation mask and the node covariates.
"""

# IMPORTS
import numpy as np
from dyadnet.common import DimensionError


def _frozen(a):
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


# DyadicDataset class
class DyadicDataset(object):
    """
    Immutable container of a single undirected network.
    Unobserved outcomes (and the whole diagonal) are stored as NaN and flagged False in the mask.
    """

    # CONSTRUCTOR
    def __init__(self, Y, D=None, X=None, discrete=None, ids=None):
        """

        :param Y: n x n real matrix. Entries outside the mask are ignored.
        :param D: n x n boolean mask, True if the outcome is observed. Default: all off-diagonal.
        :param X: n x k node covariates (k may be zero).
        :param discrete: k booleans flagging discrete coordinates. Default: all continuous.
        :param ids: n external node identifiers. Default: '0' ... 'n-1'.
        """
        Y = np.asarray(Y, dtype=float)
        if Y.ndim != 2 or Y.shape[0] != Y.shape[1]:
            raise DimensionError("the outcome matrix must be square.")

        # ATTRIBUTES
        self.n = Y.shape[0]
        """ Number of agents. Positive integer.
        """

        if D is None:
            D = np.ones((self.n, self.n), dtype=bool)
        D = np.array(D, dtype=bool)
        if D.shape != Y.shape:
            raise DimensionError("mask and outcome matrix must have the same shape.")
        np.fill_diagonal(D, False)

        self.D = _frozen(D)
        """ Observation mask. D[i][i] is always False.
        """

        self.Y = _frozen(np.where(D, Y, np.nan))
        """ Outcome matrix with NaN wherever the mask is False.
        """

        if X is None:
            X = np.zeros((self.n, 0))
        X = np.asarray(X)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        if X.shape[0] != self.n:
            raise DimensionError("one covariate record per agent is required.")

        self.X = _frozen(X)
        """ Node covariates, n x k.
        """

        if discrete is None:
            discrete = [False] * X.shape[1]
        if len(discrete) != X.shape[1]:
            raise DimensionError("one discrete flag per covariate coordinate is required.")

        self.discrete = _frozen(np.asarray(discrete, dtype=bool))
        """ Per-coordinate flag, True for discrete coordinates (compared by exact equality).
        """

        if ids is None:
            ids = [str(i) for i in range(self.n)]
        if len(ids) != self.n:
            raise DimensionError("one identifier per agent is required.")

        self.ids = tuple(str(i) for i in ids)
        """ External identifiers, the dense index of an agent is its position here.
        """

    # PYTHON UTILITIES
    def __str__(self):
        return "{} agents, {} covariates ({} discrete), {} observed dyads of {}".format(
            self.n, self.X.shape[1], int(self.discrete.sum()), self.observed_pairs(), self.n * (self.n - 1) // 2)

    # UTILITIES
    def observed_pairs(self):
        """
        Number of observed unordered dyads.
        """
        return int(np.triu(self.D, 1).sum())

    def is_complete(self):
        """
        True when every off-diagonal outcome is observed.
        """
        return self.observed_pairs() == self.n * (self.n - 1) // 2

    def filled(self, value=0.0):
        """
        A writable copy of Y with unobserved entries (and the diagonal) replaced by value.
        """
        return np.where(self.D, self.Y, value)

    def id_map(self):
        """
        Mapping external identifier -> dense index, emitted in reports.
        """
        return {k: i for i, k in enumerate(self.ids)}

    def with_outcomes(self, Y, D=None):
        """
        A new dataset with the same agents and covariates but different outcomes.
        """
        return DyadicDataset(Y, self.D if D is None else D, self.X, self.discrete, self.ids)

    def permuted(self, order):
        """
        A relabelled copy: new agent a is old agent order[a].
        """
        order = np.asarray(order)
        return DyadicDataset(self.Y[np.ix_(order, order)], self.D[np.ix_(order, order)],
                             self.X[order], self.discrete, [self.ids[o] for o in order])


# VALIDATION
class ValidationReport(object):
    """
    Outcome of validate_dataset. Report only: nothing here raises.
    """
    def __init__(self, symmetry_violations, nonfinite, isolated, min_overlap):
        self.symmetry_violations = symmetry_violations
        """ List of (i, j) with i < j where Y or D is not symmetric.
        """

        self.nonfinite = nonfinite
        """ List of (i, j) observed entries that are NaN or infinite.
        """

        self.isolated = isolated
        """ Agents without any observed outcome.
        """

        self.min_overlap = min_overlap
        """ Minimum |O_ij| across observed pairs (None without observed pairs).
        """

    @property
    def ok(self):
        return not (self.symmetry_violations or self.nonfinite or self.isolated)

    @property
    def hard_errors(self):
        """ True if the dataset cannot be used at all (isolation is only a warning). """
        return bool(self.symmetry_violations or self.nonfinite)

    def __str__(self):
        lines = []
        if self.ok:
            lines.append("ok, min overlap {}".format(self.min_overlap))
        else:
            lines.append("min overlap {}".format(self.min_overlap))
        for i, j in self.symmetry_violations:
            lines.append("symmetry violation at ({}, {})".format(i, j))
        for i, j in self.nonfinite:
            lines.append("non-finite outcome at ({}, {})".format(i, j))
        for i in self.isolated:
            lines.append("warning: agent {} is isolated".format(i))
        return "\n".join(lines)

    def to_dict(self):
        return {'ok': self.ok,
                'symmetry_violations': [list(p) for p in self.symmetry_violations],
                'nonfinite': [list(p) for p in self.nonfinite],
                'isolated': list(self.isolated),
                'min_overlap': self.min_overlap}


def validate_dataset(ds):
    """
    Check symmetry, finiteness, isolation and overlap of a dataset.

    :param ds: a DyadicDataset.
    :return: a ValidationReport.
    """
    D = ds.D
    Y = ds.Y

    # symmetry of the mask and of the observed outcomes
    both = D & D.T
    with np.errstate(invalid='ignore'):
        asym_y = both & ~((Y == Y.T) | (np.isnan(Y) & np.isnan(Y.T)))
    asym = np.triu((D != D.T) | asym_y, 1)
    symmetry = [(int(i), int(j)) for i, j in zip(*np.nonzero(asym))]

    # finiteness of the observed outcomes
    bad = D & ~np.isfinite(Y)
    nonfinite = sorted(set((int(min(i, j)), int(max(i, j))) for i, j in zip(*np.nonzero(bad))))

    isolated = [int(i) for i in np.nonzero(~D.any(axis=1))[0]]

    # |O_ij| for observed pairs
    Di = D.astype(np.int64)
    overlap = Di @ Di.T
    observed = np.triu(D, 1)
    min_overlap = int(overlap[observed].min()) if observed.any() else None

    return ValidationReport(symmetry, nonfinite, isolated, min_overlap)
