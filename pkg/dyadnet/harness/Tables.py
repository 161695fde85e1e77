# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Text tables of Monte Carlo summaries, one row per design, one column group per estimator.
"""

# IMPORTS
from dyadnet.common import ParameterError, THREEPLACES
from dyadnet.common import get_quantized_decimal as qd

# LAYOUTS
LAYOUT_TABLE1 = 'table1'
LAYOUT_TABLE2 = 'table2'
LAYOUT_PLAIN = 'plain'
LAYOUTS = (LAYOUT_TABLE1, LAYOUT_TABLE2, LAYOUT_PLAIN)

STATISTICS = (('bias', 'Bias'), ('median_bias', 'Med.Bias'), ('sd', 'SD'), ('iqr', 'IQR/1.349'))
""" (EstimatorSummary attribute, column title) in table order.
"""

COLUMN = 11


def _cell(value):
    return "{:>{w}}".format(str(qd(value, THREEPLACES)), w=COLUMN)


def _stat_header():
    return "".join("{:>{w}}".format(title, w=COLUMN) for _, title in STATISTICS)


def _stat_cells(e):
    return "".join(_cell(getattr(e, attr)) for attr, _ in STATISTICS)


def _table1(summaries):
    labels = [e.label for e in summaries[0].estimators] if summaries else []
    group = COLUMN * len(STATISTICS)
    lines = ["{:>6}".format("") + "".join("{:^{w}}".format(label, w=group) for label in labels),
             "{:>6}".format("rho") + _stat_header() * max(len(labels), 1)]
    lines.append("-" * len(lines[-1]))

    blocks = []
    for s in summaries:
        if not blocks or blocks[-1][0] != s.n:
            blocks.append((s.n, []))
        blocks[-1][1].append(s)

    for n, rows in blocks:
        lines.append("n = {}".format(n))
        for s in rows:
            lines.append("{:>6}".format(s.rho) + "".join(_stat_cells(e) for e in s.estimators))
    return lines


def _table2(summaries):
    lines = ["{:<16}".format("estimator") + _stat_header() + "{:>{w}}".format("failures", w=COLUMN)]
    lines.append("-" * len(lines[-1]))
    for s in summaries:
        for e in s.estimators:
            lines.append("{:<16}".format(e.label) + _stat_cells(e) + "{:>{w}}".format(len(e.failures), w=COLUMN))
        if s.mean_degree is not None:
            lines.append("mean degree: {}".format(qd(s.mean_degree, THREEPLACES)))
    return lines


def _plain(summaries):
    lines = ["Monte Carlo summary"]
    for s in summaries:
        lines.append("{}: n={}, rho={}, {} replications".format(s.name, s.n, s.rho, s.reps))
        for e in s.estimators:
            lines.append("  {} ({} failures)".format(e.label, len(e.failures)))
            for attr, title in STATISTICS:
                lines.append("    {}: {}".format(title, qd(getattr(e, attr), THREEPLACES)))
    return lines


def format_table(summaries, layout=LAYOUT_PLAIN):
    """
    :param summaries: a list of McSummary, in table order.
    :param layout: one of LAYOUTS.
    :return: text, header only for an empty list.
    """
    summaries = list(summaries)
    if layout == LAYOUT_TABLE1:
        lines = _table1(summaries)
    elif layout == LAYOUT_TABLE2:
        lines = _table2(summaries)
    elif layout == LAYOUT_PLAIN:
        lines = _plain(summaries)
    else:
        raise ParameterError("Invalid table layout '{}'".format(layout))
    return "\n".join(lines) + "\n"
