# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Common static values, exceptions, decorators and logging helpers.
"""

# IMPORTS
import logging
import sys
from decimal import Decimal, getcontext
from colorama import init, Fore, Style

# COMMON GLOBAL VALUES

# DECIMAL PRECISION
# to be used to set the Decimal context in a consistent way
DECIMAL_PRECISION = 12
TWOPLACES = Decimal('0.01')
THREEPLACES = Decimal('0.001')
FOURPLACES = Decimal('0.0001')

# NUMERICAL TOLERANCES
RCOND = 1e-10
""" Relative singular value cutoff for the min-norm least squares solves.
"""

GRAM_TOLERANCE = 1e-10
""" Relative minimum eigenvalue below which a weighted Gram matrix is declared singular.
"""

NEGATIVE_TOLERANCE = 1e-9
""" Negative pseudo-distances are clamped to zero, with a warning below minus this value.
"""

DEFAULT_OVERLAP_FLOOR = 5
""" Minimum overlap |O_ij| (or |O_ijk|) for a pairwise quantity to be considered defined.
"""

# PSEUDO-DISTANCE PROVENANCE
PROVENANCE_HOMOSKEDASTIC = 'homoskedastic'
PROVENANCE_HETEROSKEDASTIC = 'heteroskedastic'

# DENOISED MATRIX KINDS
DENOISE_ROW_AVERAGE = 'row-average'
DENOISE_UNIQUE_PAIRS = 'unique-pair-average'
DENOISE_EXTERNAL = 'external'

# NEIGHBORHOOD X-MATCHING RULES
XRULE_EXACT = 'exact-discrete'
XRULE_BALL = 'ball'
XRULE_IGNORE = 'ignore-X'
XRULE_AUTO = 'auto'

XRULES = (XRULE_EXACT, XRULE_BALL, XRULE_IGNORE, XRULE_AUTO)

# ESTIMATOR NAMES
ESTIMATOR_KERNEL = 'kernel'
ESTIMATOR_NN1 = 'nn1'
ESTIMATOR_FE = 'fe'
ESTIMATOR_LOGIT_MLE = 'logit-mle'
ESTIMATOR_SINGLE_INDEX = 'single-index'

ESTIMATORS = (ESTIMATOR_KERNEL, ESTIMATOR_NN1, ESTIMATOR_FE, ESTIMATOR_LOGIT_MLE, ESTIMATOR_SINGLE_INDEX)

# DISTANCE METHODS
DISTANCE_HOMO = 'homo'
DISTANCE_HETERO = 'hetero'


# EXCEPTIONS
class DyadnetError(Exception):
    """ Base class of every error raised on purpose by this package. """


class DimensionError(DyadnetError, ValueError):
    """ Covariate records or matrices with incompatible shapes. """


class ParameterError(DyadnetError, ValueError):
    """ A model or simulation parameter outside its admissible range. """


class SymmetryError(DyadnetError, ValueError):
    """ A callback or matrix that should be symmetric is not. """


class OverlapError(DyadnetError, ValueError):
    """ A pairwise regression without any common observed partner. """


class DegenerateDataError(DyadnetError, ValueError):
    """ No pair of agents has enough overlap to define a pseudo-distance. """


class ImputationGapError(DyadnetError, ValueError):
    """ A denoised matrix still has unimputed entries where values are required. """

    def __init__(self, message, pairs=()):
        super().__init__(message)
        self.pairs = list(pairs)


class SingularDesignError(DyadnetError, RuntimeError):
    """ The (weighted) Gram matrix of an estimator is numerically singular. """


class BandwidthError(DyadnetError, RuntimeError):
    """ No pair receives a positive kernel weight. """


class IdentificationError(DyadnetError, RuntimeError):
    """ The observation graph does not identify the parameters. """


class SeparationError(DyadnetError, RuntimeError):
    """ Logistic coefficients diverge during the iterations. """


class LinkDomainError(DyadnetError, RuntimeError):
    """ Too many denoised values fall outside the range of the link function. """


class GroupError(DyadnetError, ValueError):
    """ An empty covariate group. """


class IngestError(DyadnetError, ValueError):
    """ Input files that cannot be turned into a valid dataset. """


class ConflictError(IngestError):
    """ The same dyad listed twice with different outcomes. """


class UnknownNodeError(IngestError):
    """ An edge or mask row that refers to an undeclared node. """


# COMMON USEFUL FUNCTIONS
def get_quantized_decimal(dec=0, places=THREEPLACES):
    """
    Utility method to output Decimals with a fixed number of decimal places.
    :param dec: a number.
    :param places: the quantum, ie: Decimal('0.001').
    :return: a Decimal quantized to the requested places, or the string 'nan'.
    """
    getcontext().prec = DECIMAL_PRECISION
    if dec is None or dec != dec:
        return 'nan'
    return Decimal(repr(float(dec))).quantize(places)


def pair_count(n):
    """
    Number of unordered pairs of n agents.
    """
    return n * (n - 1) // 2


# USEFUL DECORATORS
def check_pair(f):
    """
    A wrapper to validate the i, j agent parameters of a pairwise operation.
    The wrapped function receives the outcome matrix as second positional argument.
    """
    def wrapper(i, j, outcomes, *args, **kwargs):
        n = len(outcomes)
        if i < 0 or i >= n or j < 0 or j >= n:
            raise ValueError("agent index out of range.")
        if i == j:
            raise ValueError("a pair needs two distinct agents.")

        # seems fine, let's proceed
        return f(i, j, outcomes, *args, **kwargs)
    wrapper.__name__ = f.__name__
    wrapper.__doc__ = f.__doc__
    return wrapper


# LOGGING
LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED,
}


class ColorFormatter(logging.Formatter):
    """
    Colours the level name the way the harness colours its status words.
    """
    def format(self, record):
        message = super().format(record)
        color = LEVEL_COLORS.get(record.levelno, '')
        return "{}{:<7}{} {}".format(color, record.levelname, Style.RESET_ALL, message)


def init_logging(level='INFO', stream=None):
    """
    Install the package log handler on the 'dyadnet' logger.

    :param level: a logging level name or number.
    :param stream: where to write, default stderr (results never go there).
    :return: the package logger.
    """
    init(autoreset=True)

    logger = logging.getLogger('dyadnet')
    for h in list(logger.handlers):
        logger.removeHandler(h)

    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(ColorFormatter('%(name)s: %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(level if not isinstance(level, str) else level.upper())
    logger.propagate = False
    return logger
