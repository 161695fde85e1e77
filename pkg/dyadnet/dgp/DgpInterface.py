# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Common definitions of the data generating processes: the design parameters, the retained ground truth
and the random streams.
"""

# IMPORTS
from abc import ABCMeta, abstractmethod
import numpy as np
from numpy.random import Generator, Philox, SeedSequence
from scipy.stats import uniform
from dyadnet.common import ParameterError, SymmetryError

# DGP KINDS
DGP_GAUSSIAN = 'gauss'
DGP_LOGISTIC = 'logit'
DGP_CUSTOM = 'custom'

# DEFAULT PARAMETERS
GAUSSIAN_DEFAULTS = {'beta0': -1.0, 'noise_scale': 1.0, 'xi_scale': 1.0}
""" Homoskedastic design: Y_ij = beta0 (X_i - X_j)^2 - (xi_i - xi_j)^2 + eps_ij.
"""

LOGISTIC_DEFAULTS = {'alpha0': -1.5, 'beta0': 0.1, 'kappa0': 2.0, 'pi0': 0.2}
""" Calibrated binary design: P(Y_ij = 1) = Lambda(1{X_i = X_j} beta0 + alpha0 - kappa0 |xi_i - xi_j|).
"""


# RANDOM STREAMS
def replication_streams(seed, rep=0):
    """
    Independent streams of one replication, derived only from (seed, rep).

    :param seed: the master seed.
    :param rep: the replication index.
    :return: three Generators: agents (X and xi), errors, observation mask.
    """
    root = SeedSequence(seed, spawn_key=(rep,))
    return tuple(Generator(Philox(s)) for s in root.spawn(3))


def symmetric_from_upper(values, n, diagonal=np.nan):
    """
    Fill an n x n symmetric matrix from its strict upper triangle listed in row-major order.
    """
    M = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    M[iu] = values
    M = M + M.T
    np.fill_diagonal(M, diagonal)
    return M


def mcar_mask(n, rate, rng):
    """
    Symmetric observation mask, each dyad missing independently with probability rate.
    """
    D = np.ones((n, n), dtype=bool)
    if rate > 0:
        missing = uniform.rvs(size=n * (n - 1) // 2, random_state=rng) < rate
        D = symmetric_from_upper(~missing, n, diagonal=0).astype(bool)
    np.fill_diagonal(D, False)
    return D


def draw_mask(spec, X, xi, rng):
    """
    The observation mask of a replication: the callback when given, MCAR otherwise.
    """
    if spec.mask_callback is None:
        return mcar_mask(spec.n, spec.missing_rate, rng)
    D = np.asarray(spec.mask_callback(X, xi, rng), dtype=bool)
    if D.shape != (spec.n, spec.n):
        raise ParameterError("the mask callback must return an n x n boolean matrix.")
    if not np.array_equal(D, D.T):
        raise SymmetryError("the mask callback returned an asymmetric mask.")
    D = D.copy()
    np.fill_diagonal(D, False)
    return D


# DgpSpec class
class DgpSpec(object):
    """
    Specification of a simulated design.
    """
    def __init__(self, kind=DGP_GAUSSIAN, n=100, rho=0.0, params=None, missing_rate=0.0, seed=0,
                 mask_callback=None):
        """

        :param kind: one of DGP_GAUSSIAN, DGP_LOGISTIC, DGP_CUSTOM.
        :param n: number of agents.
        :param rho: correlation of (X, xi), gaussian design only.
        :param params: overrides of the design defaults.
        :param missing_rate: MCAR probability of an unobserved dyad.
        :param seed: master seed.
        :param mask_callback: optional f(X, xi, rng) -> n x n mask replacing MCAR.
        """
        if kind not in (DGP_GAUSSIAN, DGP_LOGISTIC, DGP_CUSTOM):
            raise ParameterError("Invalid DGP '{}'".format(kind))
        if int(n) < 2:
            raise ParameterError("at least two agents are required.")
        if not abs(rho) < 1:
            raise ParameterError("rho must lie strictly inside (-1, 1), got {}".format(rho))
        if not 0 <= missing_rate < 1:
            raise ParameterError("missing rate must lie in [0, 1), got {}".format(missing_rate))

        self.kind = kind
        """ The design.
        """

        self.n = int(n)
        """ Number of agents.
        """

        self.rho = float(rho)
        """ Correlation between the observed and the latent characteristic.
        """

        defaults = LOGISTIC_DEFAULTS if kind == DGP_LOGISTIC else GAUSSIAN_DEFAULTS
        self.params = dict(defaults)
        """ Named design parameters (beta0, alpha0, kappa0, pi0, noise_scale, xi_scale).
        """
        self.params.update(params or {})

        self.missing_rate = float(missing_rate)
        """ Fraction of dyads missing completely at random.
        """

        self.seed = int(seed)
        """ Master seed, replication streams derive from (seed, rep).
        """

        self.mask_callback = mask_callback

    def replace(self, **kwargs):
        """
        A copy with some fields changed.
        """
        fields = {'kind': self.kind, 'n': self.n, 'rho': self.rho, 'params': dict(self.params),
                  'missing_rate': self.missing_rate, 'seed': self.seed, 'mask_callback': self.mask_callback}
        fields.update(kwargs)
        return DgpSpec(**fields)

    def __str__(self):
        return "DGP {}, n={}, rho={}, missing={}, seed={}, {}".format(
            self.kind, self.n, self.rho, self.missing_rate, self.seed,
            ", ".join("{}={}".format(k, v) for k, v in sorted(self.params.items())))

    def to_dict(self):
        return {'kind': self.kind, 'n': self.n, 'rho': self.rho, 'params': dict(self.params),
                'missing_rate': self.missing_rate, 'seed': self.seed}


# SimTruth class
class SimTruth(object):
    """
    What the simulator knows and the econometrician does not.
    """
    def __init__(self, xi, Ystar, beta0, gMatrix, model):
        self.xi = np.asarray(xi, dtype=float)
        """ Latent characteristics, n x d_xi.
        """

        self.Ystar = Ystar
        """ Error-free outcomes F(W'beta0 + g) including the diagonal.
        """

        self.beta0 = np.atleast_1d(np.asarray(beta0, dtype=float))
        """ True slope vector.
        """

        self.gMatrix = gMatrix
        """ g(xi_i, xi_j), symmetric.
        """

        self.model = model
        """ The ModelSpec the outcomes were generated with.
        """

    def to_dict(self):
        return {'beta0': self.beta0.tolist(),
                'model': str(self.model),
                'xi': self.xi.tolist(),
                'Ystar': self.Ystar.tolist(),
                'g': self.gMatrix.tolist()}


# DGP interface
class DgpInterface(metaclass=ABCMeta):
    """
    A simulator is stateless: every call owns the streams derived from (spec.seed, rep).
    """
    @abstractmethod
    def simulate(self, spec, rep=0):
        """

        :param spec: a DgpSpec.
        :param rep: replication index.
        :return: (DyadicDataset, SimTruth)
        """
        return NotImplemented
