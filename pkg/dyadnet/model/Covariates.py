# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Pair-specific covariates W_ij = w(X_i, X_j) built from node records.
"""

# IMPORTS
import numpy as np
from dyadnet.common import DimensionError, ParameterError

# COVARIATE MAPS
COVMAP_SQUARED_DIFFERENCE = 'squared-difference'
COVMAP_EQUALITY = 'equality-indicator'
COVMAP_ABSOLUTE_DIFFERENCE = 'absolute-difference'

COVMAP_SEPARATOR = '+'
""" A map name like 'squared-difference+equality-indicator' concatenates the two maps.
"""


def _squared_difference(a, b):
    return (a.astype(float) - b.astype(float)) ** 2


def _absolute_difference(a, b):
    return np.abs(a.astype(float) - b.astype(float))


def _equality(a, b):
    return (a == b).astype(float)


COVARIATE_MAPS = {
    COVMAP_SQUARED_DIFFERENCE: _squared_difference,
    COVMAP_EQUALITY: _equality,
    COVMAP_ABSOLUTE_DIFFERENCE: _absolute_difference,
}

NUMERIC_MAPS = (COVMAP_SQUARED_DIFFERENCE, COVMAP_ABSOLUTE_DIFFERENCE)
""" Maps that subtract covariate values.
"""


def _numeric_columns(X, labels, covariate_map):
    # float copy of X, or the first column that cannot be converted
    out = np.empty(X.shape, dtype=float)
    for c, label in enumerate(labels):
        try:
            out[:, c] = np.asarray(X[:, c], dtype=float)
        except (TypeError, ValueError):
            raise ParameterError("the {} map needs numeric covariates, column {} holds {!r}".format(
                covariate_map, label, next(v for v in X[:, c] if not _is_number(v))))
    return out


def _is_number(v):
    try:
        float(v)
        return True
    except (TypeError, ValueError):
        return False


# CovariateTensor class
class CovariateTensor(object):
    """
    Dense n x n x p array of pair covariates, symmetric in (i, j), diagonal included.
    """
    def __init__(self, W, names=None):
        W = np.array(W, dtype=float)
        if W.ndim == 2:
            W = W[:, :, None]
        if W.ndim != 3 or W.shape[0] != W.shape[1]:
            raise DimensionError("covariates must be an n x n x p array.")
        W.setflags(write=False)

        # ATTRIBUTES
        self.W = W
        """ The covariate values, W[i, j] is the p-vector of the pair (i, j).
        """

        self.n = W.shape[0]
        """ Number of agents.
        """

        self.p = W.shape[2]
        """ Number of pair covariates.
        """

        self.names = tuple(names) if names is not None else tuple("w{}".format(r + 1) for r in range(self.p))
        """ Column labels used in reports.
        """

    def __getitem__(self, item):
        return self.W[item]

    def __str__(self):
        return "{} pair covariates on {} agents: {}".format(self.p, self.n, ", ".join(self.names))

    def permuted(self, order):
        order = np.asarray(order)
        return CovariateTensor(self.W[np.ix_(order, order)], self.names)


# ModelSpec class
class ModelSpec(object):
    """
    Selects the covariate map w and the link function F.
    """
    def __init__(self, covariate_map=COVMAP_SQUARED_DIFFERENCE, link=None, columns=None):
        """

        :param covariate_map: one of COVARIATE_MAPS or several joined with '+'.
        :param link: a LinkInterface instance, identity when None.
        :param columns: optional subset of node covariate columns the map is applied to.
        """
        from dyadnet.model.ModelFactory import get_link, LINK_IDENTITY

        self.covariate_map = covariate_map
        """ Name of the covariate map, symmetric by construction.
        """

        self.maps = tuple(covariate_map.split(COVMAP_SEPARATOR))
        for m in self.maps:
            if m not in COVARIATE_MAPS:
                raise ParameterError("unknown covariate map '{}'".format(m))

        self.link = link if link is not None else get_link(LINK_IDENTITY)
        """ The known link function F.
        """

        self.columns = None if columns is None else tuple(columns)
        """ Node covariate columns used by w (all when None).
        """

    def __str__(self):
        return "w: {}\tF: {}".format(self.covariate_map, self.link.name)


def _as_records(X):
    # accept ragged python sequences to report a proper dimension error
    if isinstance(X, np.ndarray):
        return X.reshape(len(X), -1) if X.ndim == 1 else X
    lengths = set()
    rows = []
    for r in X:
        r = list(r) if hasattr(r, '__len__') and not isinstance(r, str) else [r]
        lengths.add(len(r))
        rows.append(r)
    if len(lengths) > 1:
        raise DimensionError("covariate records have different lengths: {}".format(sorted(lengths)))
    return np.array(rows, dtype=object if any(isinstance(v, str) for r in rows for v in r) else float)


def build_covariates(X, spec=None):
    """
    Build W_ij = w(X_i, X_j) for all pairs, diagonal included.

    :param X: n node covariate records (array n x k or a sequence of equal-length records).
    :param spec: a ModelSpec, squared-difference on every column when None.
    :return: a CovariateTensor.
    """
    spec = spec if spec is not None else ModelSpec()
    X = _as_records(X)
    if spec.columns is not None:
        if max(spec.columns, default=-1) >= X.shape[1]:
            raise DimensionError("covariate column out of range.")
        X = X[:, list(spec.columns)]
    if X.shape[1] == 0:
        raise DimensionError("at least one covariate column is required.")
    labels = spec.columns if spec.columns is not None else range(X.shape[1])

    blocks = []
    names = []
    for m in spec.maps:
        f = COVARIATE_MAPS[m]
        Xm = _numeric_columns(X, labels, m) if m in NUMERIC_MAPS else X
        # broadcasting keeps w(X_i, X_j) and w(X_j, X_i) on the same arithmetic
        blocks.append(f(Xm[:, None, :], Xm[None, :, :]))
        names.extend("{}[{}]".format(m, c) for c in range(X.shape[1]))

    W = np.concatenate(blocks, axis=2)
    if not np.all(np.isfinite(W)):
        raise DimensionError("covariate map produced non-finite values.")
    return CovariateTensor(W, names)


def covariate_array(W):
    """
    The n x n x p values of a CovariateTensor, an array or an n x n single covariate.
    """
    Wa = np.asarray(W[:], dtype=float)
    return Wa[:, :, None] if Wa.ndim == 2 else Wa
