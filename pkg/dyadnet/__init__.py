# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Dyadic network regression with nonparametric unobserved heterogeneity: pseudo-distance matching, denoising,
kernel pairwise-difference estimators, simulated designs and a Monte Carlo harness.
"""

__version__ = '0.1.0'
