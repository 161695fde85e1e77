# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

# IMPORTS
import numpy as np
import pytest
from numpy.testing import assert_array_equal, assert_allclose
from dyadnet.common import DimensionError, ParameterError
from dyadnet.model.DyadicDataset import DyadicDataset, validate_dataset
from dyadnet.model.Covariates import ModelSpec, build_covariates, covariate_array, CovariateTensor
from dyadnet.model.Covariates import COVMAP_SQUARED_DIFFERENCE, COVMAP_EQUALITY, COVMAP_ABSOLUTE_DIFFERENCE
from dyadnet.model.ModelFactory import get_kernel, get_link, KERNEL_EPANECHNIKOV, KERNEL_UNIFORM, KERNEL_TRIANGULAR
from dyadnet.model.ModelFactory import LINK_IDENTITY, LINK_LOGISTIC, LINK_EXPONENTIAL


# DATASET
def test_dataset_masks_diagonal_and_unobserved():
    Y = np.arange(16.0).reshape(4, 4)
    Y = Y + Y.T
    D = np.ones((4, 4), dtype=bool)
    D[0, 3] = D[3, 0] = False
    ds = DyadicDataset(Y, D)

    assert ds.n == 4
    assert not ds.D.diagonal().any()
    assert np.isnan(ds.Y.diagonal()).all()
    assert np.isnan(ds.Y[0, 3]) and np.isnan(ds.Y[3, 0])
    assert ds.Y[1, 2] == Y[1, 2]
    assert ds.observed_pairs() == 5
    assert not ds.is_complete()
    assert ds.filled(0.0)[0, 3] == 0.0
    assert ds.ids == ('0', '1', '2', '3')
    assert ds.X.shape == (4, 0)


def test_dataset_is_read_only():
    ds = DyadicDataset(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        ds.Y[0, 1] = 1.0
    with pytest.raises(ValueError):
        ds.D[0, 1] = False


def test_dataset_dimension_errors():
    with pytest.raises(DimensionError):
        DyadicDataset(np.zeros((3, 4)))
    with pytest.raises(DimensionError):
        DyadicDataset(np.zeros((3, 3)), D=np.ones((2, 2)))
    with pytest.raises(DimensionError):
        DyadicDataset(np.zeros((3, 3)), X=np.zeros((2, 1)))
    with pytest.raises(DimensionError):
        DyadicDataset(np.zeros((3, 3)), X=np.zeros((3, 2)), discrete=[True])
    with pytest.raises(DimensionError):
        DyadicDataset(np.zeros((3, 3)), ids=['a', 'b'])


def test_dataset_permuted_and_with_outcomes(small_random_ds):
    order = np.array([3, 1, 0, 2, 7, 6, 5, 4])
    p = small_random_ds.permuted(order)
    assert p.Y[0, 1] == small_random_ds.Y[3, 1]
    assert p.X[4, 0] == small_random_ds.X[7, 0]
    assert p.ids[0] == '3'
    assert p.id_map()['3'] == 0

    other = small_random_ds.with_outcomes(np.ones((8, 8)))
    assert other.Y[0, 1] == 1.0
    assert_array_equal(other.X, small_random_ds.X)


def test_validation_reports_problems():
    Y = np.array([[0, 1, 2], [1, 0, 3], [5, 3, 0]], dtype=float)
    report = validate_dataset(DyadicDataset(Y))
    assert report.symmetry_violations == [(0, 2)]
    assert report.hard_errors
    assert not report.ok
    assert "symmetry violation at (0, 2)" in str(report)

    D = np.ones((3, 3), dtype=bool)
    D[0, 1] = D[1, 0] = D[0, 2] = D[2, 0] = False
    report = validate_dataset(DyadicDataset(np.ones((3, 3)), D))
    assert report.isolated == [0]
    assert not report.hard_errors
    assert not report.ok


def test_validation_nonfinite_and_overlap():
    Y = np.ones((4, 4))
    Y[1, 2] = Y[2, 1] = np.inf
    report = validate_dataset(DyadicDataset(Y))
    assert report.nonfinite == [(1, 2)]
    # every pair of four agents shares the two other agents
    assert report.min_overlap == 2
    assert report.to_dict()['nonfinite'] == [[1, 2]]


# COVARIATES
def test_squared_difference_map():
    X = np.array([[0.0], [1.0], [3.0]])
    W = build_covariates(X)
    assert W.p == 1
    assert W.n == 3
    assert_array_equal(W[:, :, 0], [[0, 1, 9], [1, 0, 4], [9, 4, 0]])


def test_equality_and_combined_maps():
    X = np.array([[1.0], [2.0], [1.0]])
    W = build_covariates(X, ModelSpec(COVMAP_EQUALITY + '+' + COVMAP_ABSOLUTE_DIFFERENCE))
    assert W.p == 2
    assert_array_equal(W[:, :, 0], [[1, 0, 1], [0, 1, 0], [1, 0, 1]])
    assert_array_equal(W[:, :, 1], [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    assert W.names == ('equality-indicator[0]', 'absolute-difference[0]')


def test_equality_on_strings():
    W = build_covariates([['a'], ['b'], ['a']], ModelSpec(COVMAP_EQUALITY))
    assert W[0, 2, 0] == 1.0
    assert W[0, 1, 0] == 0.0


def test_covariate_columns_subset():
    X = np.array([[0.0, 5.0], [2.0, 5.0], [1.0, 7.0]])
    W = build_covariates(X, ModelSpec(COVMAP_SQUARED_DIFFERENCE, columns=[1]))
    assert_array_equal(W[:, :, 0], [[0, 0, 4], [0, 0, 4], [4, 4, 0]])
    with pytest.raises(DimensionError):
        build_covariates(X, ModelSpec(columns=[2]))


def test_covariate_errors():
    with pytest.raises(ParameterError):
        ModelSpec('cubic-difference')
    with pytest.raises(DimensionError):
        build_covariates([[1.0, 2.0], [3.0]])
    with pytest.raises(DimensionError):
        build_covariates(np.zeros((3, 0)))


def test_difference_maps_need_numeric_columns():
    with pytest.raises(ParameterError, match="column 0 holds 'b'"):
        build_covariates([['1.5'], ['b'], ['2']])
    records = [[1.0, 'x'], [2.0, 'y'], [3.0, 'x']]
    with pytest.raises(ParameterError, match="absolute-difference map needs numeric covariates, column 1"):
        build_covariates(records, ModelSpec(COVMAP_ABSOLUTE_DIFFERENCE, columns=[1]))
    assert build_covariates(records, ModelSpec(COVMAP_EQUALITY, columns=[1]))[0, 2, 0] == 1.0
    assert build_covariates([['1.5'], ['3'], ['2']])[0, 1, 0] == pytest.approx(2.25)


def test_covariate_array_shapes():
    assert covariate_array(np.zeros((4, 4))).shape == (4, 4, 1)
    assert covariate_array(CovariateTensor(np.zeros((4, 4, 2)))).shape == (4, 4, 2)


def test_covariates_are_symmetric(gaussian_draw):
    ds, _ = gaussian_draw
    W = build_covariates(ds.X)
    assert_array_equal(W.W, W.W.transpose(1, 0, 2))


# KERNELS AND LINKS
@pytest.mark.parametrize("kind, at_zero, at_half", [
    (KERNEL_EPANECHNIKOV, 0.75, 0.375),
    (KERNEL_UNIFORM, 0.5, 0.5),
    (KERNEL_TRIANGULAR, 1.0, 1.0 - np.sqrt(0.5)),
])
def test_kernel_profiles(kind, at_zero, at_half):
    k = get_kernel(kind)
    assert k.name == kind
    assert k(0.0) == pytest.approx(at_zero)
    assert k(0.5) == pytest.approx(at_half)
    assert_array_equal(k(np.array([-0.1, 1.0001, 7.0])), [0.0, 0.0, 0.0])


def test_kernel_vanishes_at_one():
    assert get_kernel(KERNEL_EPANECHNIKOV)(1.0) == 0.0
    assert get_kernel(KERNEL_TRIANGULAR)(1.0) == 0.0


def test_links_invert():
    x = np.linspace(-3, 3, 13)
    for kind in (LINK_IDENTITY, LINK_LOGISTIC, LINK_EXPONENTIAL):
        link = get_link(kind)
        assert_allclose(link.inverse(link.forward(x)), x, atol=1e-12)


def test_logistic_link_clamps():
    link = get_link(LINK_LOGISTIC, clamp_eps=0.01)
    y, clamped = link.clamp(np.array([0.0, 0.5, 1.0]))
    assert_allclose(y, [0.01, 0.5, 0.99])
    assert_array_equal(clamped, [True, False, True])
    assert link.derivative(0.0) == pytest.approx(0.25)


def test_factory_errors():
    with pytest.raises(ParameterError):
        get_kernel('gauss')
    with pytest.raises(ParameterError):
        get_link('probit')
    assert get_link('logistic').name == LINK_LOGISTIC
