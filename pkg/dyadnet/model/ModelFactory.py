# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Builds kernels and links from their names.
"""

# IMPORTS
from dyadnet.common import ParameterError
from dyadnet.model.KernelInterface import KernelEpanechnikov, KernelUniform, KernelTriangular
from dyadnet.model.LinkInterface import LinkIdentity, LinkLogistic, LinkExponential, DEFAULT_CLAMP_EPS

# SETTINGS
# KERNELS
KERNEL_EPANECHNIKOV = 'epa'
KERNEL_UNIFORM = 'uniform'
KERNEL_TRIANGULAR = 'triangular'

# LINKS
LINK_IDENTITY = 'identity'
LINK_LOGISTIC = 'logit'
LINK_EXPONENTIAL = 'exp'


# FUNCTIONS
def get_kernel(kind=KERNEL_EPANECHNIKOV):
    """

    :param kind: one of the KERNEL_* names.
    :return: a KernelInterface instance.
    """
    if kind == KERNEL_EPANECHNIKOV:
        return KernelEpanechnikov()
    elif kind == KERNEL_UNIFORM:
        return KernelUniform()
    elif kind == KERNEL_TRIANGULAR:
        return KernelTriangular()
    raise ParameterError("Invalid kernel '{}'".format(kind))


def get_link(kind=LINK_IDENTITY, clamp_eps=DEFAULT_CLAMP_EPS):
    """

    :param kind: one of the LINK_* names ('logistic' and 'exponential' are accepted too).
    :param clamp_eps: boundary protection of the inverse.
    :return: a LinkInterface instance.
    """
    if kind == LINK_IDENTITY:
        return LinkIdentity(clamp_eps)
    elif kind in (LINK_LOGISTIC, 'logistic'):
        return LinkLogistic(clamp_eps)
    elif kind in (LINK_EXPONENTIAL, 'exponential'):
        return LinkExponential(clamp_eps)
    raise ParameterError("Invalid link '{}'".format(kind))
