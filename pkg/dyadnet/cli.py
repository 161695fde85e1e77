# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
The dyadnet command: simulate, estimate, distances, mc and validate.
Results go to files or stdout, logs and progress to stderr.
"""

# IMPORTS
import argparse
import json
import logging
import sys
from pathlib import Path
from colorama import init, Fore, Style
from dyadnet.common import ESTIMATORS, ESTIMATOR_KERNEL, DISTANCE_HOMO, DISTANCE_HETERO, DEFAULT_OVERLAP_FLOOR
from dyadnet.common import XRULES, XRULE_AUTO, DyadnetError, init_logging
from dyadnet.dgp.DgpInterface import DgpSpec, DGP_GAUSSIAN, DGP_LOGISTIC
from dyadnet.dgp.DgpFactory import simulate
from dyadnet.model.Covariates import ModelSpec, COVMAP_SQUARED_DIFFERENCE, build_covariates
from dyadnet.model.DyadicDataset import validate_dataset
from dyadnet.model.ModelFactory import get_link, LINK_IDENTITY, LINK_LOGISTIC, LINK_EXPONENTIAL
from dyadnet.model.ModelFactory import KERNEL_EPANECHNIKOV, KERNEL_UNIFORM, KERNEL_TRIANGULAR
from dyadnet.matching.Neighborhoods import NiRule, DEFAULT_NI_CONST
from dyadnet.estimators.EstimateReport import BandwidthRule, as_plain
from dyadnet.estimators.Pipeline import EstimatorConfig, estimate, compute_distances, denoised_outcomes
from dyadnet.harness.Ingest import ingest, write_dataset, write_matrix
from dyadnet.harness.MonteCarlo import McConfig, run_mc
from dyadnet.harness.Presets import preset_configs, PRESETS, PRESET_TABLE1, PRESET_TABLE2
from dyadnet.harness.Tables import format_table, LAYOUTS, LAYOUT_TABLE1, LAYOUT_TABLE2, LAYOUT_PLAIN

logger = logging.getLogger('dyadnet.cli')

EXIT_DOMAIN_ERROR = 2


# OUTPUT HELPERS
def _emit(text, out=None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        logger.info("Updated file '%s'", out)


def _emit_json(payload, out=None):
    _emit(json.dumps(as_plain(payload), indent=2) + "\n", out)


def _dataset(args):
    return ingest(args.nodes, args.edges, args.mask, missing_implicit=args.missing_implicit,
                  absent_as_zero=args.absent_zero)


def _estimator_config(args, estimator=None, distance=None):
    model = ModelSpec(args.covariate_map, link=get_link(args.link))
    return EstimatorConfig(estimator or args.estimator, distance or args.distance, model=model, kernel=args.kernel,
                           bandwidth=BandwidthRule.parse(args.bandwidth), ni_rule=NiRule(c=args.ni_const),
                           x_rule=args.x_rule, floor=args.floor, fixed_effects=args.fixed_effects,
                           exclude_self=args.exclude_self)


# SUBCOMMANDS
def cmd_simulate(args):
    spec = DgpSpec(args.dgp, args.n, args.rho, missing_rate=args.missing, seed=args.seed)
    ds, truth = simulate(spec, args.rep)
    prefix = args.out if args.out is not None else "dyadnet_{}".format(args.dgp)
    write_dataset(ds, prefix)
    truth_path = Path("{}_truth.json".format(prefix))
    _emit_json({'spec': spec.to_dict(), 'rep': args.rep, 'truth': truth.to_dict()}, truth_path)
    return 0


def cmd_estimate(args):
    ds = _dataset(args)
    report = estimate(ds, _estimator_config(args))
    payload = report.to_dict()
    payload.update(seed=args.seed, ids=ds.id_map())
    _emit_json(payload, args.out)
    logger.info("\n%s", report)
    return 0


def cmd_distances(args):
    ds = _dataset(args)
    config = _estimator_config(args, ESTIMATOR_KERNEL, args.method)
    W = build_covariates(ds.X, config.model)
    d2, dinf, Ystar = compute_distances(ds, W, config)
    logger.info("%s", d2)
    write_matrix(d2.d2, args.out if args.out is not None else sys.stdout, ds.ids)

    # intermediates of the heteroskedastic route, computed on demand for the homoskedastic one
    if (args.dump_dinf or args.dump_ystar) and Ystar is None:
        dinf, Ystar = denoised_outcomes(ds, config)
    if args.dump_dinf:
        write_matrix(dinf, args.dump_dinf, ds.ids)
    if args.dump_ystar:
        write_matrix(Ystar.Ystar, args.dump_ystar, ds.ids)
    return 0


def cmd_mc(args):
    if args.preset is not None:
        configs = preset_configs(args.preset, reps=args.reps, seed=args.seed, parallelism=args.threads,
                                 output=args.out, fast=args.fast, n=args.n)
        layout = args.layout or {PRESET_TABLE1: LAYOUT_TABLE1, PRESET_TABLE2: LAYOUT_TABLE2}.get(args.preset,
                                                                                                 LAYOUT_PLAIN)
    else:
        spec = DgpSpec(args.dgp, args.n or 100, args.rho, missing_rate=args.missing, seed=args.seed)
        estimators = [_estimator_config(args, e.split(':')[0], e.split(':')[1] if ':' in e else DISTANCE_HOMO)
                      for e in args.estimators]
        configs = [McConfig(spec, estimators, reps=args.reps or 100, parallelism=args.threads, output=args.out)]
        layout = args.layout or LAYOUT_PLAIN

    if args.out is not None:
        Path(args.out).mkdir(parents=True, exist_ok=True)
    summaries = [run_mc(cfg) for cfg in configs]
    sys.stdout.write(format_table(summaries, layout))
    return 0


def cmd_validate(args):
    ds = _dataset(args)
    report = validate_dataset(ds)
    sys.stdout.write("{}\n{}\n".format(ds, report))
    return 0 if report.ok else 1


# PARSER
def _dataset_arguments(p):
    p.add_argument('--nodes', required=True, help='node CSV: id,x1,...,xk')
    p.add_argument('--edges', required=True, help='edge CSV: i,j,y')
    p.add_argument('--mask', help='mask CSV: i,j,d')
    p.add_argument('--missing-implicit', action='store_true', help='dyads absent from the edge file are unobserved')
    p.add_argument('--absent-zero', action='store_true', help='dyads absent from the edge file are observed zeros')


def _model_arguments(p):
    p.add_argument('--covariate-map', default=COVMAP_SQUARED_DIFFERENCE,
                   help="w(X_i, X_j), maps can be joined with '+'")
    p.add_argument('--link', default=LINK_IDENTITY, choices=(LINK_IDENTITY, LINK_LOGISTIC, LINK_EXPONENTIAL))
    p.add_argument('--kernel', default=KERNEL_EPANECHNIKOV,
                   choices=(KERNEL_EPANECHNIKOV, KERNEL_UNIFORM, KERNEL_TRIANGULAR))
    p.add_argument('--bandwidth', default='rot', help="'rot' or a fixed h^2")
    p.add_argument('--ni-const', type=float, default=DEFAULT_NI_CONST, help='c in n_i = c (n ln n)^1/2')
    p.add_argument('--x-rule', default=XRULE_AUTO, choices=XRULES)
    p.add_argument('--floor', type=int, default=DEFAULT_OVERLAP_FLOOR, help='minimum overlap of a pair')
    p.add_argument('--fixed-effects', action='store_true', help='also estimate g_ij and partial effects')
    p.add_argument('--exclude-self', action='store_true', help='drop k = i, j from the denoised distances')


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=0, help='master seed')
    common.add_argument('--threads', type=int, default=1, help='worker processes, 0 for one per CPU')
    common.add_argument('--out', help='output file, prefix or folder depending on the command')
    common.add_argument('--log-level', default='INFO', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))

    parser = argparse.ArgumentParser(prog='dyadnet', description='Dyadic network regression with nonparametric '
                                                                 'unobserved heterogeneity')
    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('simulate', parents=[common], help='simulate a design, write nodes/edges/mask CSVs')
    p.add_argument('--dgp', default=DGP_GAUSSIAN, choices=(DGP_GAUSSIAN, DGP_LOGISTIC))
    p.add_argument('--n', type=int, default=100)
    p.add_argument('--rho', type=float, default=0.0)
    p.add_argument('--missing', type=float, default=0.0, help='MCAR share of unobserved dyads')
    p.add_argument('--rep', type=int, default=0, help='replication index of the random streams')
    p.set_defaults(func=cmd_simulate)

    p = commands.add_parser('estimate', parents=[common], help='estimate beta, write the report JSON')
    _dataset_arguments(p)
    _model_arguments(p)
    p.add_argument('--estimator', default=ESTIMATOR_KERNEL, choices=ESTIMATORS)
    p.add_argument('--distance', default=DISTANCE_HOMO, choices=(DISTANCE_HOMO, DISTANCE_HETERO))
    p.set_defaults(func=cmd_estimate)

    p = commands.add_parser('distances', parents=[common], help='pseudo-distance matrix as CSV')
    _dataset_arguments(p)
    _model_arguments(p)
    p.add_argument('--method', default=DISTANCE_HOMO, choices=(DISTANCE_HOMO, DISTANCE_HETERO))
    p.add_argument('--dump-dinf', help='also write the d_inf^2 matrix here')
    p.add_argument('--dump-ystar', help='also write the denoised outcomes here')
    p.set_defaults(func=cmd_distances)

    p = commands.add_parser('mc', parents=[common], help='Monte Carlo replications, prints a table')
    _model_arguments(p)
    p.add_argument('--preset', choices=PRESETS)
    p.add_argument('--reps', type=int)
    p.add_argument('--fast', action='store_true', help='table2 at n = 200')
    p.add_argument('--n', type=int, help='network size (table1: keep this block only)')
    p.add_argument('--dgp', default=DGP_GAUSSIAN, choices=(DGP_GAUSSIAN, DGP_LOGISTIC))
    p.add_argument('--rho', type=float, default=0.0)
    p.add_argument('--missing', type=float, default=0.0)
    p.add_argument('--estimators', nargs='+', default=['fe', 'kernel:homo', 'nn1:homo'],
                   help="estimator[:distance] list for a custom design")
    p.add_argument('--layout', choices=LAYOUTS)
    p.set_defaults(func=cmd_mc)

    p = commands.add_parser('validate', parents=[common], help='symmetry, finiteness, isolation and overlap')
    _dataset_arguments(p)
    p.set_defaults(func=cmd_validate)
    return parser


# MAIN ENTRY POINT
def main(argv=None):
    args = build_parser().parse_args(argv)
    init(autoreset=True)
    init_logging(args.log_level)
    try:
        return args.func(args)
    except DyadnetError as e:
        print(Fore.RED + "error: {}".format(e) + Style.RESET_ALL, file=sys.stderr)
        return EXIT_DOMAIN_ERROR


if __name__ == "__main__":
    # execute only if run as a script
    sys.exit(main())
