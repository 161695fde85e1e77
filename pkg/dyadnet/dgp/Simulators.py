# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
The simulated designs: gaussian homophily (homoskedastic, continuous X), calibrated logistic homophily
(binary outcomes, binary X) and a user-defined design built from callbacks.
"""

# IMPORTS
import logging
import numpy as np
from scipy.stats import multivariate_normal, norm, bernoulli, uniform, logistic
from dyadnet.common import ParameterError, SymmetryError
from dyadnet.model.DyadicDataset import DyadicDataset
from dyadnet.model.Covariates import ModelSpec, build_covariates, COVMAP_SQUARED_DIFFERENCE, COVMAP_EQUALITY
from dyadnet.model.ModelFactory import get_link, LINK_IDENTITY, LINK_LOGISTIC
from dyadnet.dgp.DgpInterface import DgpInterface, DgpSpec, SimTruth, DGP_GAUSSIAN, DGP_LOGISTIC, DGP_CUSTOM
from dyadnet.dgp.DgpInterface import replication_streams, symmetric_from_upper, draw_mask

logger = logging.getLogger('dyadnet.dgp')


def _index(W, beta0, g):
    return np.tensordot(W.W, beta0, axes=([2], [0])) + g


# GAUSSIAN HOMOPHILY
class GaussianHomophily(DgpInterface):
    """
    Y_ij = beta0 (X_i - X_j)^2 - (xi_i - xi_j)^2 + eps_ij, (X, xi) standard bivariate normal with correlation rho.
    """
    model = ModelSpec(COVMAP_SQUARED_DIFFERENCE, get_link(LINK_IDENTITY))

    def simulate(self, spec, rep=0):
        if spec.kind != DGP_GAUSSIAN:
            raise ParameterError("gaussian homophily simulator called with a '{}' design".format(spec.kind))
        n = spec.n
        g_agents, g_errors, g_mask = replication_streams(spec.seed, rep)

        cov = [[1.0, spec.rho], [spec.rho, 1.0]]
        Z = np.asarray(multivariate_normal.rvs(mean=[0.0, 0.0], cov=cov, size=n, random_state=g_agents))
        Z = Z.reshape(n, 2)
        X = Z[:, :1]
        xi = Z[:, 1:] * spec.params['xi_scale']

        beta0 = np.array([spec.params['beta0']])
        W = build_covariates(X, self.model)
        g = -(xi - xi.T) ** 2
        Ystar = _index(W, beta0, g)

        eps = norm.rvs(scale=1.0, size=n * (n - 1) // 2, random_state=g_errors) * spec.params['noise_scale']
        Y = Ystar + symmetric_from_upper(eps, n)

        D = draw_mask(spec, X, xi, g_mask)
        ds = DyadicDataset(Y, D, X, discrete=[False])
        logger.debug("gaussian homophily replication %d: %s", rep, ds)
        return ds, SimTruth(xi, Ystar, beta0, g, self.model)


# LOGISTIC HOMOPHILY
class LogisticHomophily(DgpInterface):
    """
    Y_ij = 1{1{X_i = X_j} beta0 + alpha0 - kappa0 |xi_i - xi_j| - U_ij >= 0}, X ~ Bernoulli(1/2),
    xi_i = pi0 X_i + V_i with V_i ~ U[-1, 1] and U_ij standard logistic.
    """
    model = ModelSpec(COVMAP_EQUALITY, get_link(LINK_LOGISTIC))

    def simulate(self, spec, rep=0):
        if spec.kind != DGP_LOGISTIC:
            raise ParameterError("logistic homophily simulator called with a '{}' design".format(spec.kind))
        n = spec.n
        p = spec.params
        g_agents, g_errors, g_mask = replication_streams(spec.seed, rep)

        X = bernoulli.rvs(0.5, size=n, random_state=g_agents).reshape(n, 1).astype(float)
        V = uniform.rvs(loc=-1.0, scale=2.0, size=n, random_state=g_agents).reshape(n, 1)
        xi = p['pi0'] * X + V

        beta0 = np.array([p['beta0']])
        W = build_covariates(X, self.model)
        g = p['alpha0'] - p['kappa0'] * np.abs(xi - xi.T)
        index = _index(W, beta0, g)
        Ystar = self.model.link.forward(index)

        U = symmetric_from_upper(logistic.rvs(size=n * (n - 1) // 2, random_state=g_errors), n, diagonal=0.0)
        Y = (index - U >= 0).astype(float)

        D = draw_mask(spec, X, xi, g_mask)
        ds = DyadicDataset(Y, D, X, discrete=[True])
        logger.debug("logistic homophily replication %d: %s", rep, ds)
        return ds, SimTruth(xi, Ystar, beta0, g, self.model)


# CUSTOM DESIGN
class CustomDgp(DgpInterface):
    """
    Y_ij = F(W_ij' beta0 + g(xi_i, xi_j)) + eps_ij from user callbacks.
    """
    def __init__(self, model, beta0, g_callback, xi_sampler, x_sampler, noise_callback=None, discrete=None,
                 symmetry_checks=10):
        """

        :param model: a ModelSpec (or a covariate map name, identity link).
        :param beta0: true slope vector.
        :param g_callback: g(xi_i, xi_j) -> real, must be symmetric.
        :param xi_sampler: f(n, rng) -> n latent records.
        :param x_sampler: f(n, rng) -> n covariate records.
        :param noise_callback: f(m, rng) -> m errors for the pairs i < j in row-major order; None for no noise.
        :param discrete: per-coordinate discrete flags of X.
        :param symmetry_checks: number of random pairs g is checked on.
        """
        self.model = model if isinstance(model, ModelSpec) else ModelSpec(model)
        self.beta0 = np.atleast_1d(np.asarray(beta0, dtype=float))
        self.g_callback = g_callback
        self.xi_sampler = xi_sampler
        self.x_sampler = x_sampler
        self.noise_callback = noise_callback
        self.discrete = discrete
        self.symmetry_checks = symmetry_checks

    def simulate(self, spec, rep=0):
        if spec.kind != DGP_CUSTOM:
            raise ParameterError("custom simulator called with a '{}' design".format(spec.kind))
        n = spec.n
        g_agents, g_errors, g_mask = replication_streams(spec.seed, rep)

        X = np.asarray(self.x_sampler(n, g_agents))
        if X.ndim == 1:
            X = X.reshape(n, 1)
        xi = np.asarray(self.xi_sampler(n, g_agents), dtype=float)
        if xi.ndim == 1:
            xi = xi.reshape(n, 1)

        # the coupling function must not depend on the order of the pair
        for _ in range(min(self.symmetry_checks, n * (n - 1) // 2)):
            a, b = g_agents.choice(n, size=2, replace=False)
            if not np.isclose(self.g_callback(xi[a], xi[b]), self.g_callback(xi[b], xi[a]), rtol=1e-12, atol=1e-12):
                raise SymmetryError("g(xi_{0}, xi_{1}) != g(xi_{1}, xi_{0})".format(a, b))

        g = np.zeros((n, n))
        for i in range(n):
            for j in range(i, n):
                g[i, j] = g[j, i] = self.g_callback(xi[i], xi[j])

        W = build_covariates(X, self.model)
        if W.p != len(self.beta0):
            raise ParameterError("beta0 has {} entries but the covariate map has {}".format(len(self.beta0), W.p))
        Ystar = self.model.link.forward(_index(W, self.beta0, g))

        if self.noise_callback is None:
            eps = np.zeros(n * (n - 1) // 2)
        else:
            eps = np.asarray(self.noise_callback(n * (n - 1) // 2, g_errors), dtype=float)
        Y = Ystar + symmetric_from_upper(eps, n)

        D = draw_mask(spec, X, xi, g_mask)
        ds = DyadicDataset(Y, D, X, discrete=self.discrete)
        return ds, SimTruth(xi, Ystar, self.beta0, g, self.model)


# SHORTCUTS
def simulate_gaussian_homophily(spec, rep=0):
    return GaussianHomophily().simulate(spec, rep)


def simulate_logistic_homophily(spec, rep=0):
    return LogisticHomophily().simulate(spec, rep)


def simulate_custom(n, w_map, g_callback, noise_callback, xi_sampler, x_sampler, seed, beta0, discrete=None,
                    missing_rate=0.0, rep=0):
    """
    One draw of a user-defined design.

    :return: (DyadicDataset, SimTruth)
    """
    dgp = CustomDgp(w_map, beta0, g_callback, xi_sampler, x_sampler, noise_callback, discrete)
    return dgp.simulate(DgpSpec(DGP_CUSTOM, n=n, seed=seed, missing_rate=missing_rate), rep)
