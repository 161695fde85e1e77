# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
The result of an estimator and the bandwidth of the kernel weights.
"""

# IMPORTS
import logging
import numpy as np
from scipy.stats import iqr
from dyadnet.common import ParameterError, DegenerateDataError
from dyadnet.common import get_quantized_decimal as qd, FOURPLACES

logger = logging.getLogger('dyadnet.estimators')

# BANDWIDTH KINDS
BANDWIDTH_ROT = 'rot'
BANDWIDTH_FIXED = 'fixed'

IQR_NORMAL = 1.349
""" Interquartile range of the standard normal.
"""


def as_plain(v):
    # JSON friendly: arrays to lists, NaN and inf to None
    if isinstance(v, np.ndarray):
        return [as_plain(x) for x in v.tolist()] if v.ndim else as_plain(v.item())
    if isinstance(v, (list, tuple)):
        return [as_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: as_plain(x) for k, x in v.items()}
    if isinstance(v, (np.floating, float)):
        return float(v) if np.isfinite(v) else None
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


# EstimateReport class
class EstimateReport(object):
    """
    Everything an estimator returns: the slope, the fit diagnostics and optional fixed effects.
    """
    def __init__(self, estimator, beta, bandwidth2=None, activePairs=0, gramMinEigen=None, **diagnostics):
        # ATTRIBUTES
        self.estimator = estimator
        """ Name of the estimator.
        """

        self.beta = np.atleast_1d(np.asarray(beta, dtype=float))
        """ Slope estimate, p-vector.
        """

        self.bandwidth2 = bandwidth2
        """ h^2 actually used (after any doubling), None for estimators without kernel weights.
        """

        self.activePairs = int(activePairs)
        """ Number of pairs entering the fit with positive weight.
        """

        self.gramMinEigen = gramMinEigen
        """ Smallest eigenvalue of the (weighted) Gram matrix.
        """

        self.gHat = None
        """ Optional n x n fixed-effect estimates, NaN where not imputed.
        """

        self.partialEffects = None
        """ Optional PartialEffects.
        """

        self.diagnostics = dict(diagnostics)
        """ Estimator specific values: weight sums, matched pairs, iterations, clamped entries, ...
        """

        self.config = {}
        """ Echo of the configuration that produced the report.
        """

    def __str__(self):
        lines = ["Estimator: {}".format(self.estimator),
                 "beta: {}".format(", ".join(str(qd(b, FOURPLACES)) for b in self.beta))]
        if self.bandwidth2 is not None:
            lines.append("h2: {:.6g}".format(self.bandwidth2))
        lines.append("active pairs: {}".format(self.activePairs))
        if self.gramMinEigen is not None:
            lines.append("Gram min eigenvalue: {:.6g}".format(self.gramMinEigen))
        for k in sorted(self.diagnostics):
            v = self.diagnostics[k]
            if np.isscalar(v):
                lines.append("{}: {}".format(k, v))
        return "\n".join(lines)

    def to_dict(self):
        out = {'estimator': self.estimator,
               'beta': self.beta,
               'bandwidth2': self.bandwidth2,
               'activePairs': self.activePairs,
               'gramMinEigen': self.gramMinEigen,
               'diagnostics': self.diagnostics,
               'config': self.config}
        if self.gHat is not None:
            out['gHat'] = self.gHat
        if self.partialEffects is not None:
            out['partialEffects'] = self.partialEffects.to_dict()
        return as_plain(out)


# BANDWIDTH
class BandwidthRule(object):
    """
    h^2 either from the rule of thumb or fixed.
    """
    def __init__(self, kind=BANDWIDTH_ROT, value=None):
        if kind == BANDWIDTH_FIXED:
            if value is None or not value > 0:
                raise ParameterError("a fixed bandwidth needs a positive value.")
        elif kind == BANDWIDTH_ROT:
            if value is not None:
                raise ParameterError("the rule of thumb takes no value.")
        else:
            raise ParameterError("Invalid bandwidth rule '{}'".format(kind))
        self.kind = kind
        self.value = None if value is None else float(value)

    @classmethod
    def parse(cls, text):
        """
        'rot' or a positive number.
        """
        if text is None or str(text).lower() == BANDWIDTH_ROT:
            return cls()
        try:
            return cls(BANDWIDTH_FIXED, float(text))
        except ValueError:
            raise ParameterError("Invalid bandwidth '{}'".format(text))

    def resolve(self, d2):
        return self.value if self.kind == BANDWIDTH_FIXED else bandwidth_rot(d2)

    def __str__(self):
        return BANDWIDTH_ROT if self.kind == BANDWIDTH_ROT else "{:.6g}".format(self.value)


def bandwidth_rot(d2):
    """
    Rule of thumb h^2 = 0.9 min(sd, IQR / 1.349) m^(-1/5) over the m defined pseudo-distances.
    Without dispersion h^2 = max(d2) / 2, and 1 if every d2 is zero.

    :param d2: a PseudoDistanceMatrix (or a 1-d array of pair values).
    :return: positive real.
    """
    values = d2.pair_values() if hasattr(d2, 'pair_values') else np.asarray(d2, dtype=float)
    values = values[np.isfinite(values)]
    m = len(values)
    if m < 2:
        raise DegenerateDataError("the rule of thumb needs at least two defined pseudo-distances.")

    spread = min(np.std(values, ddof=1), iqr(values) / IQR_NORMAL)
    if spread > 0:
        return 0.9 * spread * m ** (-0.2)

    top = float(values.max())
    if top > 0:
        logger.warning("pseudo-distances without dispersion, bandwidth set to max(d2) / 2")
        return top / 2.0
    logger.warning("all pseudo-distances are zero, bandwidth set to 1")
    return 1.0
