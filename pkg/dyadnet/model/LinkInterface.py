# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Known invertible link functions F of the single index model E[Y_ij | ...] = F(W_ij' beta + g_ij).
"""

# IMPORTS
from abc import ABCMeta, abstractmethod
import numpy as np
from scipy.special import expit, logit

DEFAULT_CLAMP_EPS = 1e-3
""" Denoised values are clamped this far inside the range of F before inversion.
"""


class LinkInterface(metaclass=ABCMeta):
    """
    Abstract link: forward map, inverse on the clamped interior, derivative and clamping.
    """
    name = None

    def __init__(self, clamp_eps=DEFAULT_CLAMP_EPS):
        self.clamp_eps = clamp_eps
        """ Small positive margin kept from the boundary of the range of F.
        """

    @abstractmethod
    def forward(self, x):
        return NotImplemented

    @abstractmethod
    def inverse(self, y):
        return NotImplemented

    @abstractmethod
    def derivative(self, x):
        return NotImplemented

    def clamp(self, y):
        """
        Clamp values into the interior of the range of F.

        :return: the clamped array and the boolean array of clamped entries.
        """
        y = np.asarray(y, dtype=float)
        return y, np.zeros(y.shape, dtype=bool)

    def __str__(self):
        return self.name


class LinkIdentity(LinkInterface):
    name = 'identity'

    def forward(self, x):
        return np.asarray(x, dtype=float)

    def inverse(self, y):
        return np.asarray(y, dtype=float)

    def derivative(self, x):
        return np.ones_like(np.asarray(x, dtype=float))


class LinkLogistic(LinkInterface):
    name = 'logit'

    def forward(self, x):
        return expit(x)

    def inverse(self, y):
        return logit(y)

    def derivative(self, x):
        f = expit(x)
        return f * (1.0 - f)

    def clamp(self, y):
        y = np.asarray(y, dtype=float)
        lo, hi = self.clamp_eps, 1.0 - self.clamp_eps
        clamped = (y < lo) | (y > hi)
        return np.clip(y, lo, hi), clamped


class LinkExponential(LinkInterface):
    name = 'exp'

    def forward(self, x):
        return np.exp(x)

    def inverse(self, y):
        return np.log(y)

    def derivative(self, x):
        return np.exp(x)

    def clamp(self, y):
        y = np.asarray(y, dtype=float)
        clamped = y < self.clamp_eps
        return np.maximum(y, self.clamp_eps), clamped
