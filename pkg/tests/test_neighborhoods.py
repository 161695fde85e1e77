# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

# IMPORTS
import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from dyadnet.common import XRULE_EXACT, XRULE_BALL, XRULE_IGNORE, XRULE_AUTO, ParameterError
from dyadnet.model.DyadicDataset import DyadicDataset
from dyadnet.matching.Similarity import d_infty_matrix, resolve_xrule, compatible_matrix, default_radius
from dyadnet.matching.Neighborhoods import NiRule, NI_CONSTANT, build_neighborhoods, NeighborhoodIndex
from oracles import brute_dinf


# SIMILARITY
def test_dinf_complete_matches_brute_force(small_random_ds):
    assert_allclose(d_infty_matrix(small_random_ds, floor=1), brute_dinf(small_random_ds), rtol=1e-10, atol=1e-14)


def test_dinf_missing_matches_brute_force(small_missing_ds):
    for floor in (1, 3):
        assert_allclose(d_infty_matrix(small_missing_ds, floor=floor), brute_dinf(small_missing_ds, floor),
                        rtol=1e-10, atol=1e-14)


def test_dinf_is_symmetric_with_zero_diagonal(gaussian_missing_draw):
    ds, _ = gaussian_missing_draw
    d = d_infty_matrix(ds)
    assert_array_equal(d, d.T)
    assert_array_equal(np.diag(d), 0.0)
    assert (d >= 0).all()


def test_dinf_floor_above_partners(small_random_ds):
    # eight agents leave five partners outside any triple
    d = d_infty_matrix(small_random_ds, floor=6)
    off = ~np.eye(8, dtype=bool)
    assert np.isinf(d[off]).all()


def test_dinf_exact_rule_separates_groups():
    rng = np.random.default_rng(1)
    Y = rng.normal(size=(8, 8))
    Y = Y + Y.T
    X = np.array([0, 0, 0, 0, 1, 1, 1, 1])
    ds = DyadicDataset(Y, X=X, discrete=[True])
    d = d_infty_matrix(ds, XRULE_EXACT, floor=1)
    assert np.isinf(d[0, 4])
    assert np.isfinite(d[0, 1])
    assert np.isfinite(d_infty_matrix(ds, XRULE_IGNORE, floor=1)[0, 4])


def test_resolve_xrule():
    Y = np.zeros((4, 4))
    assert resolve_xrule(DyadicDataset(Y)) == XRULE_IGNORE
    assert resolve_xrule(DyadicDataset(Y, X=[0, 1, 0, 1], discrete=[True])) == XRULE_EXACT
    assert resolve_xrule(DyadicDataset(Y, X=[0.1, 1.2, 0.3, 1.4])) == XRULE_BALL
    assert resolve_xrule(DyadicDataset(Y, X=[0.1, 1.2, 0.3, 1.4]), XRULE_IGNORE) == XRULE_IGNORE
    with pytest.raises(ParameterError):
        resolve_xrule(DyadicDataset(Y), 'nearest')


def test_default_radius():
    X = np.arange(16.0)
    ds = DyadicDataset(np.zeros((16, 16)), X=X)
    # ceil(16^(3/4)) = 8: agent 0 reaches agent 8
    radius = default_radius(ds)
    assert radius[0] == 8.0
    assert radius[8] == 4.0


def test_compatible_matrix_ball():
    ds = DyadicDataset(np.zeros((4, 4)), X=[0.0, 0.5, 2.0, 2.4])
    C = compatible_matrix(ds, XRULE_BALL, delta=0.6)
    assert_array_equal(C, [[True, True, False, False],
                           [True, True, False, False],
                           [False, False, True, True],
                           [False, False, True, True]])
    assert compatible_matrix(ds, XRULE_IGNORE).all()


# NEIGHBORHOODS
def test_ni_rule_sizes():
    assert NiRule().size(100) == 21
    assert NiRule(c=0.5).size(100) == 11
    assert NiRule(NI_CONSTANT, value=5).size(100) == 5
    assert NiRule(NI_CONSTANT, value=50).size(10) == 10
    assert NiRule().size(1) == 1
    with pytest.raises(ParameterError):
        NiRule(c=0.0)
    with pytest.raises(ParameterError):
        NiRule(NI_CONSTANT)
    with pytest.raises(ParameterError):
        NiRule('fixed')


def test_neighborhoods_break_ties_by_index():
    ds = DyadicDataset(np.zeros((5, 5)))
    nbhd = build_neighborhoods(ds, np.zeros((5, 5)), NiRule(NI_CONSTANT, value=3))
    assert nbhd.ranked[2].tolist() == [2, 0, 1, 3, 4]
    assert nbhd.neighbors[2].tolist() == [2, 0, 1]
    assert nbhd.neighbors[4].tolist() == [4, 0, 1]
    assert nbhd.sizes.tolist() == [3] * 5


def test_neighborhoods_rank_by_similarity():
    d = np.array([[0, 3, 1, 2],
                  [3, 0, 5, np.inf],
                  [1, 5, 0, 4],
                  [2, np.inf, 4, 0]], dtype=float)
    ds = DyadicDataset(np.zeros((4, 4)))
    nbhd = build_neighborhoods(ds, d, NiRule(NI_CONSTANT, value=4))
    assert nbhd.ranked[0].tolist() == [0, 2, 3, 1]
    # undefined similarities never enter a neighborhood
    assert nbhd.ranked[1].tolist() == [1, 0, 2]
    assert nbhd.truncated.tolist() == [False, True, False, True]

    A = nbhd.membership()
    assert A[1, 2] and not A[1, 3]
    assert A.diagonal().all()


def test_neighborhoods_respect_discrete_groups():
    X = np.array([0, 1, 0, 1, 0, 1])
    ds = DyadicDataset(np.zeros((6, 6)), X=X, discrete=[True])
    nbhd = build_neighborhoods(ds, np.zeros((6, 6)), NiRule(NI_CONSTANT, value=4), XRULE_AUTO)
    assert nbhd.x_rule == XRULE_EXACT
    assert nbhd.neighbors[0].tolist() == [0, 2, 4]
    assert nbhd.neighbors[3].tolist() == [3, 1, 5]
    assert nbhd.truncated.all()


def test_neighborhood_index_from_lists():
    nbhd = NeighborhoodIndex([[0, 1], [1, 2], [2, 3], [3]], 1, np.zeros((4, 4)))
    assert [nb.tolist() for nb in nbhd.neighbors] == [[0], [1], [2], [3]]
    assert nbhd.to_dict()['sizes'] == [1, 1, 1, 1]
