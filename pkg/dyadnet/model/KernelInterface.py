# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Kernels K: R+ -> R+ supported on [0, 1], applied to the standardised squared distance d2 / h2.
"""

# IMPORTS
from abc import ABCMeta, abstractmethod
import numpy as np


class KernelInterface(metaclass=ABCMeta):
    """
    Abstract kernel. Subclasses implement the profile on [0, 1]; the support is enforced here.
    """
    name = None

    @abstractmethod
    def profile(self, z):
        return NotImplemented

    def __call__(self, z):
        """
        Evaluate K elementwise: exactly zero outside [0, 1].
        """
        z = np.asarray(z, dtype=float)
        inside = (z >= 0) & (z <= 1)
        return np.where(inside, self.profile(np.clip(z, 0.0, 1.0)), 0.0)

    def __str__(self):
        return self.name


class KernelEpanechnikov(KernelInterface):
    """
    K(z) = 3/4 (1 - z): the Epanechnikov kernel of the standardised distance.
    """
    name = 'epa'

    def profile(self, z):
        return 0.75 * (1.0 - z)


class KernelUniform(KernelInterface):
    """
    K(z) = 1/2 on [0, 1].
    """
    name = 'uniform'

    def profile(self, z):
        return np.full_like(z, 0.5)


class KernelTriangular(KernelInterface):
    """
    K(z) = 1 - sqrt(z): triangular in the distance itself.
    """
    name = 'triangular'

    def profile(self, z):
        return 1.0 - np.sqrt(z)
