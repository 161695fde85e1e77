# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Selects a simulator from the design name.
"""

# IMPORTS
from dyadnet.common import ParameterError
from dyadnet.dgp.DgpInterface import DGP_GAUSSIAN, DGP_LOGISTIC, DGP_CUSTOM
from dyadnet.dgp.Simulators import GaussianHomophily, LogisticHomophily, CustomDgp


def get_class(kind=DGP_GAUSSIAN):
    """

    :param kind: one of the DGP_* names.
    :return: the simulator class.
    """
    if kind == DGP_GAUSSIAN:
        return GaussianHomophily
    elif kind == DGP_LOGISTIC:
        return LogisticHomophily
    elif kind == DGP_CUSTOM:
        return CustomDgp
    raise ParameterError("Invalid DGP '{}'".format(kind))


def get_instance(kind=DGP_GAUSSIAN, **kwargs):
    """
    A ready simulator; custom designs take their callbacks as keyword arguments.
    """
    return get_class(kind)(**kwargs)


def simulate(spec, rep=0, **kwargs):
    """
    One replication of the design described by spec.

    :return: (DyadicDataset, SimTruth)
    """
    return get_instance(spec.kind, **kwargs).simulate(spec, rep)
