# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

# IMPORTS
import logging
import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_array_equal
from dyadnet.common import IngestError, ConflictError, UnknownNodeError
from dyadnet.harness.Ingest import ingest, write_dataset, write_matrix


def _nodes(x=(0.5, 1.0, 2.0)):
    return pd.DataFrame({'id': ['a', 'b', 'c'], 'x': list(x)})


def _edges(rows):
    return pd.DataFrame(rows, columns=['i', 'j', 'y'])


FULL = [('a', 'b', 1.0), ('a', 'c', 2.0), ('b', 'c', 3.0)]


def test_ingest_complete_network():
    ds = ingest(_nodes(), _edges(FULL))
    assert ds.ids == ('a', 'b', 'c')
    assert ds.is_complete()
    assert ds.Y[2, 1] == 3.0
    assert_array_equal(ds.Y, ds.Y.T)
    assert not ds.discrete[0]


def test_integer_covariates_are_discrete():
    ds = ingest(_nodes((1, 2, 1)), _edges(FULL))
    assert ds.discrete.tolist() == [True]


def test_uncovered_dyads():
    edges = _edges(FULL[:2])
    with pytest.raises(IngestError):
        ingest(_nodes(), edges)

    implicit = ingest(_nodes(), edges, missing_implicit=True)
    assert not implicit.D[1, 2]
    assert np.isnan(implicit.Y[1, 2])

    zeros = ingest(_nodes(), edges, absent_as_zero=True)
    assert zeros.D[1, 2]
    assert zeros.Y[1, 2] == 0.0


def test_duplicated_dyads():
    agreeing = FULL + [('b', 'a', 1.0)]
    assert ingest(_nodes(), _edges(agreeing)).Y[0, 1] == 1.0
    with pytest.raises(ConflictError):
        ingest(_nodes(), _edges(FULL + [('b', 'a', 5.0)]))


def test_reference_errors():
    with pytest.raises(UnknownNodeError):
        ingest(_nodes(), _edges(FULL + [('a', 'z', 1.0)]))
    with pytest.raises(IngestError):
        ingest(_nodes(), _edges(FULL + [('c', 'c', 1.0)]))
    with pytest.raises(IngestError):
        ingest(_nodes(), _edges(FULL[:2] + [('b', 'c', 'foo')]))
    with pytest.raises(IngestError):
        ingest(_nodes(), pd.DataFrame({'i': ['a'], 'j': ['b']}))
    with pytest.raises(IngestError):
        ingest(pd.DataFrame({'id': ['a', 'a', 'c'], 'x': [0, 1, 2]}), _edges(FULL))


def test_mask_file():
    mask = pd.DataFrame({'i': ['a', 'a', 'b'], 'j': ['b', 'c', 'c'], 'd': [1, 1, 0]})
    ds = ingest(_nodes(), _edges(FULL[:2]), mask)
    assert ds.D[0, 2] and not ds.D[1, 2]

    with pytest.raises(ConflictError):
        ingest(_nodes(), _edges(FULL), mask)
    mask['d'] = 1
    with pytest.raises(IngestError):
        ingest(_nodes(), _edges(FULL[:2]), mask)


def test_isolated_node_warns(caplog):
    with caplog.at_level(logging.WARNING, logger='dyadnet.harness'):
        ds = ingest(_nodes(), _edges(FULL[:1]), missing_implicit=True)
    assert not ds.D[2].any()
    assert "node 'c' has no observed dyad" in caplog.text


def test_write_then_ingest(tmp_path, gaussian_missing_draw):
    ds, _ = gaussian_missing_draw
    nodes, edges, mask = write_dataset(ds, tmp_path / 'draw')
    assert nodes.name == 'draw_nodes.csv'

    back = ingest(str(nodes), str(edges), str(mask))
    assert back.ids == ds.ids
    assert_array_equal(back.D, ds.D)
    assert_array_equal(back.Y[ds.D], ds.Y[ds.D])
    assert_array_equal(back.X, ds.X)


def test_unreadable_file(tmp_path):
    with pytest.raises(IngestError):
        ingest(str(tmp_path / 'nodes.csv'), str(tmp_path / 'edges.csv'))


def test_write_matrix(tmp_path):
    path = write_matrix(np.array([[0.0, 1.5], [1.5, 0.0]]), tmp_path / 'm.csv', ['a', 'b'])
    frame = pd.read_csv(path, index_col='id')
    assert frame.loc['a', 'b'] == 1.5
