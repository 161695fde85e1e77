# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

from dyadnet.model.DyadicDataset import DyadicDataset, ValidationReport, validate_dataset
from dyadnet.model.Covariates import CovariateTensor, ModelSpec, build_covariates
from dyadnet.model.ModelFactory import get_kernel, get_link
