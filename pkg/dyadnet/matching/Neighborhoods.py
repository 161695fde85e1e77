# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Neighborhoods: for every agent the n_i compatible agents closest in d_inf^2, the agent itself first.
"""

# IMPORTS
import logging
import numpy as np
from dyadnet.common import ParameterError, XRULE_AUTO
from dyadnet.matching.Similarity import compatible_matrix, resolve_xrule

logger = logging.getLogger('dyadnet.matching')

# SIZE RULES
NI_RULE = 'rule'
NI_CONSTANT = 'constant'

DEFAULT_NI_CONST = 1.0
""" n_i = round(c (n ln n)^(1/2)) with c close to one.
"""


# NiRule class
class NiRule(object):
    """
    Neighborhood size: either round(c (n ln n)^(1/2)) or a fixed number of agents.
    """
    def __init__(self, kind=NI_RULE, c=DEFAULT_NI_CONST, value=None):
        if kind == NI_RULE:
            if not c > 0:
                raise ParameterError("the neighborhood constant must be positive.")
        elif kind == NI_CONSTANT:
            if value is None or int(value) < 1:
                raise ParameterError("a constant neighborhood size must be a positive integer.")
        else:
            raise ParameterError("Invalid neighborhood rule '{}'".format(kind))

        self.kind = kind
        self.c = float(c)
        self.value = None if value is None else int(value)

    def size(self, n):
        """
        The target n_i for n agents, clipped to [1, n].
        """
        if self.kind == NI_CONSTANT:
            target = self.value
        else:
            target = int(round(self.c * np.sqrt(n * np.log(n)))) if n > 1 else 1
        return int(min(max(target, 1), n))

    def __str__(self):
        if self.kind == NI_CONSTANT:
            return "n_i = {}".format(self.value)
        return "n_i = round({} (n ln n)^1/2)".format(self.c)

    def to_dict(self):
        return {'kind': self.kind, 'c': self.c, 'value': self.value}


# NeighborhoodIndex class
class NeighborhoodIndex(object):
    """
    Ranked candidates and the truncated neighborhoods of every agent.
    """
    def __init__(self, ranked, target, dInf, x_rule=None):
        """

        :param ranked: per agent, its compatible candidates sorted by (d_inf^2, index), the agent itself first.
        :param target: the requested n_i (an int or one per agent).
        :param dInf: the n x n similarity distances used for the ranking.
        :param x_rule: the matching rule in force.
        """
        n = len(ranked)
        target = np.broadcast_to(np.asarray(target, dtype=np.int64), (n,))

        # ATTRIBUTES
        self.ranked = [np.asarray(r, dtype=np.int64) for r in ranked]
        """ Full candidate lists, used by the donor pools of missing outcomes.
        """

        self.neighbors = [r[:t] for r, t in zip(self.ranked, target)]
        """ N_i, i always first.
        """

        self.sizes = np.array([len(nb) for nb in self.neighbors], dtype=np.int64)
        """ |N_i|.
        """

        self.target = np.array(target)
        """ Requested n_i.
        """

        self.truncated = self.sizes < self.target
        """ True where fewer compatible candidates than n_i exist.
        """

        self.dInf = dInf
        """ The similarity distances (inf where undefined).
        """

        self.x_rule = x_rule

        self.n = n

    def membership(self):
        """
        n x n boolean A with A[i, i'] True iff i' belongs to N_i.
        """
        A = np.zeros((self.n, self.n), dtype=bool)
        for i, nb in enumerate(self.neighbors):
            A[i, nb] = True
        return A

    def __str__(self):
        return "neighborhoods of {} agents, sizes {}..{}, {} truncated, X rule {}".format(
            self.n, self.sizes.min(), self.sizes.max(), int(self.truncated.sum()), self.x_rule)

    def to_dict(self):
        return {'neighbors': [nb.tolist() for nb in self.neighbors],
                'sizes': self.sizes.tolist(),
                'truncated': self.truncated.tolist(),
                'x_rule': self.x_rule}


def build_neighborhoods(ds, dInf, ni_rule=None, x_rule=XRULE_AUTO, delta=None):
    """
    Rank the compatible agents of each agent by d_inf^2 (ties by index) and keep the first n_i.

    :param ds: a DyadicDataset.
    :param dInf: n x n similarity distances.
    :param ni_rule: a NiRule, the (n ln n)^(1/2) rule with c = 1 when None.
    :param x_rule: one of XRULES.
    :param delta: ball radius for continuous covariates.
    :return: NeighborhoodIndex
    """
    ni_rule = ni_rule if ni_rule is not None else NiRule()
    rule = resolve_xrule(ds, x_rule)
    dInf = np.asarray(dInf, dtype=float)
    C = compatible_matrix(ds, rule, delta)

    ranked = []
    for i in range(ds.n):
        ok = C[i] & np.isfinite(dInf[i])
        ok[i] = False
        cand = np.nonzero(ok)[0]
        order = np.lexsort((cand, dInf[i, cand]))
        ranked.append(np.concatenate(([i], cand[order])))

    nbhd = NeighborhoodIndex(ranked, ni_rule.size(ds.n), dInf, rule)
    if nbhd.truncated.any():
        logger.warning("%d neighborhoods hold fewer than %d compatible agents", int(nbhd.truncated.sum()),
                       ni_rule.size(ds.n))
    return nbhd
