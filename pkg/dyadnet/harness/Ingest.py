# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
CSV input and output of datasets.

Node file: header id,x1,...,xk. Edge file: header i,j,y. Mask file: header i,j,d.
Identifiers are arbitrary strings, the dense index of an agent is its row in the node file.
"""

# IMPORTS
import logging
from pathlib import Path
import numpy as np
import pandas as pd
from dyadnet.common import IngestError, ConflictError, UnknownNodeError
from dyadnet.model.DyadicDataset import DyadicDataset, validate_dataset

logger = logging.getLogger('dyadnet.harness')

FLOAT_FORMAT = '%.17g'
""" Round-trip exact float output.
"""


def _frame(source, ids_columns):
    if isinstance(source, pd.DataFrame):
        frame = source.copy()
        for c in ids_columns:
            if c in frame:
                frame[c] = frame[c].astype(str)
        return frame
    try:
        return pd.read_csv(source, dtype={c: str for c in ids_columns}, skipinitialspace=True,
                           float_precision='round_trip')
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise IngestError("cannot read '{}': {}".format(source, e))


def _require(frame, columns, what):
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise IngestError("{} file lacks column(s) {}".format(what, ", ".join(missing)))


def _dyads(frame, index, what):
    """
    Canonical (a, b) index arrays with a < b, after the reference checks.
    """
    unknown = sorted(set(frame['i']).union(frame['j']) - set(index))
    if unknown:
        raise UnknownNodeError("{} file refers to unknown node(s) {}".format(what, ", ".join(unknown[:10])))
    a = frame['i'].map(index).to_numpy()
    b = frame['j'].map(index).to_numpy()
    loops = a == b
    if loops.any():
        raise IngestError("{} file has self loop(s) at node(s) {}".format(
            what, ", ".join(sorted(set(frame['i'][loops])))))
    return np.minimum(a, b), np.maximum(a, b)


def _read_nodes(nodes):
    frame = _frame(nodes, ['id'])
    _require(frame, ['id'], 'node')
    duplicated = frame['id'][frame['id'].duplicated()]
    if len(duplicated):
        raise IngestError("duplicated node id(s) {}".format(", ".join(sorted(set(duplicated)))))

    covariates = frame.drop(columns=['id'])
    discrete = [covariates[c].dtype.kind in 'iubO' for c in covariates.columns]
    if all(discrete):
        X = covariates.to_numpy()
    else:
        X = covariates.to_numpy(dtype=float) if not any(discrete) else covariates.to_numpy(dtype=object)
    return list(frame['id']), X, discrete


def ingest(nodes, edges, mask=None, missing_implicit=False, absent_as_zero=False):
    """
    Read a dataset from CSV files (or DataFrames) and validate it.

    :param nodes: node file.
    :param edges: edge file.
    :param mask: optional mask file, d = 1 marks an observed dyad.
    :param missing_implicit: dyads absent from the edge file are unobserved.
    :param absent_as_zero: dyads absent from the edge file are observed zeros.
    :return: a DyadicDataset.
    """
    ids, X, discrete = _read_nodes(nodes)
    index = {k: i for i, k in enumerate(ids)}
    n = len(ids)

    frame = _frame(edges, ['i', 'j'])
    _require(frame, ['i', 'j', 'y'], 'edge')
    a, b = _dyads(frame, index, 'edge')
    y = pd.to_numeric(frame['y'], errors='coerce').to_numpy(dtype=float)

    # duplicated dyads must agree
    canonical = pd.DataFrame({'a': a, 'b': b, 'y': y})
    values = canonical.groupby(['a', 'b'])['y'].nunique(dropna=False)
    conflicts = values[values > 1]
    if len(conflicts):
        ca, cb = conflicts.index[0]
        raise ConflictError("conflicting outcomes for dyad ({}, {})".format(ids[ca], ids[cb]))
    canonical = canonical.drop_duplicates(['a', 'b'])

    Y = np.full((n, n), np.nan)
    listed = np.zeros((n, n), dtype=bool)
    ca, cb = canonical['a'].to_numpy(), canonical['b'].to_numpy()
    Y[ca, cb] = canonical['y'].to_numpy()
    listed[ca, cb] = True

    if mask is not None:
        mframe = _frame(mask, ['i', 'j'])
        _require(mframe, ['i', 'j', 'd'], 'mask')
        ma, mb = _dyads(mframe, index, 'mask')
        D = np.zeros((n, n), dtype=bool)
        D[ma, mb] = mframe['d'].astype(int).to_numpy() != 0
        if (listed & ~D).any():
            i, j = np.argwhere(listed & ~D)[0]
            raise ConflictError("dyad ({}, {}) has an outcome but is masked unobserved".format(ids[i], ids[j]))
        if (D & ~listed).any():
            i, j = np.argwhere(D & ~listed)[0]
            raise IngestError("dyad ({}, {}) is observed but has no outcome".format(ids[i], ids[j]))
    elif absent_as_zero:
        D = np.triu(np.ones((n, n), dtype=bool), 1)
        Y = np.where(listed, Y, 0.0)
    elif missing_implicit:
        D = listed
    else:
        absent = np.triu(~listed, 1)
        if absent.any():
            i, j = np.argwhere(absent)[0]
            raise IngestError("{} dyads are not covered by the edge file, first ({}, {}); "
                              "use a mask, missing-implicit or absent-as-zero".format(
                                  int(absent.sum()), ids[i], ids[j]))
        D = listed

    D = np.triu(D, 1)
    bad = D & ~np.isfinite(Y)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise IngestError("{} observed dyads have a non numeric outcome, first ({}, {})".format(
            int(bad.sum()), ids[i], ids[j]))

    # mirror the upper triangle
    Y = np.where(D, Y, 0.0)
    ds = DyadicDataset(Y + Y.T, D | D.T, X, discrete, ids)
    report = validate_dataset(ds)
    if report.hard_errors:
        raise IngestError("invalid dataset:\n{}".format(report))
    for i in report.isolated:
        logger.warning("node '%s' has no observed dyad", ids[i])
    logger.info("ingested %s", ds)
    return ds


def write_dataset(ds, prefix):
    """
    Write <prefix>_nodes.csv, <prefix>_edges.csv (observed dyads) and <prefix>_mask.csv (every dyad).

    :return: the three paths.
    """
    prefix = Path(prefix)
    paths = tuple(prefix.with_name("{}_{}.csv".format(prefix.name, part)) for part in ('nodes', 'edges', 'mask'))

    nodes = pd.DataFrame(ds.X, columns=["x{}".format(c + 1) for c in range(ds.X.shape[1])])
    nodes.insert(0, 'id', list(ds.ids))
    nodes.to_csv(paths[0], index=False, float_format=FLOAT_FORMAT)

    ids = np.asarray(ds.ids, dtype=object)
    a, b = np.triu_indices(ds.n, 1)
    observed = ds.D[a, b]
    pd.DataFrame({'i': ids[a[observed]], 'j': ids[b[observed]], 'y': ds.Y[a[observed], b[observed]]}) \
        .to_csv(paths[1], index=False, float_format=FLOAT_FORMAT)
    pd.DataFrame({'i': ids[a], 'j': ids[b], 'd': observed.astype(int)}).to_csv(paths[2], index=False)

    logger.info("dataset written to %s", ", ".join(str(p) for p in paths))
    return paths


def write_matrix(matrix, path, ids=None):
    """
    An n x n matrix as CSV with the node ids as header and index.
    """
    frame = pd.DataFrame(np.asarray(matrix, dtype=float), index=ids, columns=ids)
    frame.to_csv(path, float_format=FLOAT_FORMAT, index_label='id')
    return path
