# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

from dyadnet.matching.PseudoDistance import pairwise_lsq, q2_matrix, sigma2_hat, d2_homoskedastic, d2_heteroskedastic
from dyadnet.matching.PseudoDistance import PseudoDistanceMatrix, PairwiseRegressions
from dyadnet.matching.Similarity import d_infty_matrix
from dyadnet.matching.Neighborhoods import NiRule, NeighborhoodIndex, build_neighborhoods
from dyadnet.matching.Denoising import DenoisedMatrix, denoise_row_average, denoise_unique_pairs, impute_sequential
