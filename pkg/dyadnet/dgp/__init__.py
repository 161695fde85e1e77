# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

from dyadnet.dgp.DgpInterface import DgpSpec, SimTruth, DGP_GAUSSIAN, DGP_LOGISTIC, DGP_CUSTOM
from dyadnet.dgp.Simulators import simulate_gaussian_homophily, simulate_logistic_homophily, simulate_custom
from dyadnet.dgp.DgpFactory import simulate
