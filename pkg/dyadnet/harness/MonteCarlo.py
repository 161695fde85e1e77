# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
This is the Monte Carlo class: simulate a design many times, run every estimator on each replication and
summarise the estimates the way the simulation tables do.
"""

# IMPORTS
import json
import sys
from datetime import datetime
from decimal import Decimal, getcontext
from multiprocessing import Pool
from pathlib import Path
import numpy as np
import pandas as pd
from colorama import init, Fore, Style
from scipy import stats
from dyadnet.common import DECIMAL_PRECISION, DyadnetError, ParameterError
from dyadnet.common import get_quantized_decimal as qd
from dyadnet.dgp.DgpFactory import simulate
from dyadnet.estimators.EstimateReport import IQR_NORMAL, as_plain
from dyadnet.estimators.Pipeline import estimate


# USEFUL CLASS DECORATOR
def check_init(f):
    """
    A wrapper to validate the simulation initialization.
    """
    def wrapper(s, *args, **kwargs):
        if not s.init_ok:
            raise RuntimeError("Simulation not yet initialized")

        # seems fine, let's proceed
        return f(s, *args, **kwargs)
    wrapper.__name__ = f.__name__
    wrapper.__doc__ = f.__doc__
    return wrapper


# McConfig class
class McConfig(object):
    """
    A Monte Carlo design: one DGP, several estimators, a number of replications.
    """
    def __init__(self, dgp, estimators, reps=100, seed=None, parallelism=1, output=None, name=None):
        """

        :param dgp: a DgpSpec.
        :param estimators: a list of EstimatorConfig, their labels name the summary columns.
        :param reps: number of replications.
        :param seed: master seed, the DGP seed when None.
        :param parallelism: worker processes, 0 or None for one per CPU.
        :param output: base folder of the raw CSV and summary JSON, nothing written when None.
        :param name: folder and file name of the design.
        """
        if int(reps) < 1:
            raise ParameterError("at least one replication is required.")
        if not estimators:
            raise ParameterError("at least one estimator is required.")
        labels = [e.label for e in estimators]
        if len(set(labels)) != len(labels):
            raise ParameterError("estimator labels must be unique: {}".format(labels))

        self.dgp = dgp if seed is None else dgp.replace(seed=seed)
        """ The simulated design, its seed is the master seed.
        """

        self.estimators = list(estimators)
        self.reps = int(reps)

        self.parallelism = parallelism
        """ Worker count. Results never depend on it.
        """

        self.output = output
        self.name = name if name is not None else "{}_n{}_rho{}".format(self.dgp.kind, self.dgp.n, self.dgp.rho)

    @property
    def seed(self):
        return self.dgp.seed

    def to_dict(self):
        return {'name': self.name, 'dgp': self.dgp.to_dict(), 'reps': self.reps, 'seed': self.seed,
                'estimators': [e.to_dict() for e in self.estimators]}


# SUMMARIES
class EstimatorSummary(object):
    """
    Bias, median bias, standard deviation and IQR / 1.349 of one estimator over the successful replications.
    """
    def __init__(self, label, beta0, estimates, failures=None, wall_time=0.0, component=0):
        self.label = label
        self.beta0 = float(beta0)
        """ True value of the summarised slope coordinate.
        """

        self.estimates = np.asarray(estimates, dtype=float)
        """ Successful estimates in replication order.
        """

        self.failures = list(failures or [])
        """ (rep, message) of the replications where the estimator failed.
        """

        self.wall_time = float(wall_time)
        """ Seconds spent in the estimator over all replications.
        """

        self.component = component

        if len(self.estimates):
            d = stats.describe(self.estimates, ddof=1) if len(self.estimates) > 1 else None
            self.bias = float(np.mean(self.estimates)) - self.beta0
            self.median_bias = float(np.median(self.estimates)) - self.beta0
            self.sd = float(np.sqrt(d.variance)) if d is not None else float('nan')
            self.iqr = float(stats.iqr(self.estimates)) / IQR_NORMAL if d is not None else float('nan')
        else:
            self.bias = self.median_bias = self.sd = self.iqr = float('nan')

    @property
    def successes(self):
        return len(self.estimates)

    def __str__(self):
        return "{}: bias {}, median bias {}, sd {}, iqr/1.349 {}, failures {}".format(
            self.label, qd(self.bias), qd(self.median_bias), qd(self.sd), qd(self.iqr), len(self.failures))

    def to_dict(self):
        return as_plain({'label': self.label, 'beta0': self.beta0, 'component': self.component,
                         'bias': self.bias, 'median_bias': self.median_bias, 'sd': self.sd, 'iqr': self.iqr,
                         'successes': self.successes, 'failures': len(self.failures),
                         'failure_messages': [{'rep': r, 'message': m} for r, m in self.failures],
                         'wall_time': self.wall_time})


class McSummary(object):
    """
    The summary of a whole design: one EstimatorSummary per estimator, in configuration order.
    """
    def __init__(self, config, estimators, wall_time=0.0, mean_degree=None):
        self.name = config.name
        self.design = config.dgp.to_dict()
        self.reps = config.reps
        self.seed = config.seed
        self.estimators = list(estimators)
        self.wall_time = float(wall_time)

        self.mean_degree = mean_degree
        """ Average over replications of the mean observed degree (binary designs only).
        """

    @property
    def n(self):
        return self.design['n']

    @property
    def rho(self):
        return self.design['rho']

    def __getitem__(self, label):
        for e in self.estimators:
            if e.label == label:
                return e
        raise KeyError(label)

    def __str__(self):
        return "\n".join(["{} ({} replications)".format(self.name, self.reps)] + [str(e) for e in self.estimators])

    def to_dict(self):
        return as_plain({'name': self.name, 'design': self.design, 'reps': self.reps, 'seed': self.seed,
                         'wall_time': self.wall_time, 'mean_degree': self.mean_degree,
                         'estimators': [e.to_dict() for e in self.estimators]})


# REPLICATION WORKER
def run_replication(args):
    """
    Simulate replication rep and run every estimator on it. Failures are recorded, never raised.
    Top level so that worker processes can pickle it.

    :param args: (DgpSpec, list of EstimatorConfig, rep)
    :return: dict with the truth, one row per estimator and the mean degree.
    """
    dgp, estimators, rep = args
    ds, truth = simulate(dgp, rep)

    rows = []
    for config in estimators:
        start = datetime.now()
        try:
            report = estimate(ds, config)
            beta, error = report.beta, None
        except DyadnetError as e:
            beta, error = None, "{}: {}".format(type(e).__name__, e)
        rows.append({'label': config.label, 'beta': beta, 'error': error,
                     'seconds': (datetime.now() - start).total_seconds()})

    Y = ds.filled(0.0)
    binary = bool(np.isin(Y[ds.D], (0.0, 1.0)).all())
    return {'rep': rep, 'beta0': truth.beta0, 'rows': rows,
            'mean_degree': float(Y.sum(axis=1).mean()) if binary else None}


# SIMULATION CLASS
class MonteCarlo(object):
    """
    Runs a McConfig, replications in parallel and results re-ordered by replication index.
    """
    def __init__(self, config, stream=None):
        # ATTRIBUTES
        self.config = config
        """ The McConfig being run.
        """

        self.stream = stream if stream is not None else sys.stderr
        """ Progress goes here, never to the result files.
        """

        self._sim_base_path = None
        """ Full path to base folder where the simulation results are placed.
        """

        self.sim_path = None
        """ Actual full path of the current simulation (base + design name).
        """

        # INTERNAL STATES
        self.init_ok = False
        """ To avoid writing results without initialization.
        """

        self.results = []
        """ Output of run_replication, ordered by rep.
        """

        self.summary = None

    def _status(self, text, end=""):
        print(text, end=end, file=self.stream, flush=True)

    def init_simulation(self, base_path=None):
        """
        Check the base path and create the design folder.
        """
        # avoid multiple initialization
        if self.init_ok:
            raise RuntimeError("Simulation already initialized")

        # initialize colorama
        init(autoreset=True)

        # set the decimal precision
        getcontext().prec = DECIMAL_PRECISION

        # the base path is valid?
        self._sim_base_path = Path(base_path)
        self._status("Checking '{}' ... ".format(self._sim_base_path))

        if not self._sim_base_path.exists():
            self._status(Fore.RED + 'INVALID' + Style.RESET_ALL, end="\n")
            raise IOError("The provided base path is not valid")
        self._status(Fore.GREEN + 'OK' + Style.RESET_ALL, end="\n")

        # the simulation path is valid or should be created?
        self.sim_path = self._sim_base_path.joinpath(self.config.name)
        self._status("Checking '{}' ... ".format(self.sim_path))

        if self.sim_path.exists():
            self._status(Fore.GREEN + 'OK' + Style.RESET_ALL, end="\n")
        else:
            self.sim_path.mkdir(parents=False)
            self._status(Fore.YELLOW + 'CREATED' + Style.RESET_ALL, end="\n")

        # set init ok
        self.init_ok = True

    def raw_frame(self):
        """
        One row per (replication, estimator): beta coordinates, error message and time.
        """
        records = []
        for r in self.results:
            for row in r['rows']:
                rec = {'rep': r['rep'], 'estimator': row['label']}
                p = len(r['beta0'])
                beta = row['beta'] if row['beta'] is not None else np.full(p, np.nan)
                for c in range(p):
                    rec['beta_{}'.format(c)] = beta[c]
                rec['error'] = row['error'] or ''
                rec['seconds'] = row['seconds']
                rec['mean_degree'] = r['mean_degree']
                records.append(rec)
        return pd.DataFrame.from_records(records)

    @check_init
    def output_raw(self):
        """
        Write raw_data_<design>.csv with the per-replication estimates.
        """
        fp = self.sim_path.joinpath("raw_data_{}.csv".format(self.config.name))
        self.raw_frame().to_csv(fp, index=False, float_format='%.17g')
        self._status("Updated file '{}'".format(fp), end="\n")
        return fp

    @check_init
    def output_summary(self):
        """
        Write summary_<design>.json with the configuration echo and the summary statistics.
        """
        fp = self.sim_path.joinpath("summary_{}.json".format(self.config.name))
        with fp.open('wt') as f:
            json.dump({'config': as_plain(self.config.to_dict()), 'summary': self.summary.to_dict()}, f, indent=2)
        self._status("Updated file '{}'".format(fp), end="\n")
        return fp

    def summarize(self, wall_time=0.0, component=0):
        """
        Reduce the ordered results into a McSummary.
        """
        summaries = []
        for k, config in enumerate(self.config.estimators):
            estimates = []
            failures = []
            seconds = 0.0
            beta0 = np.nan
            for r in self.results:
                row = r['rows'][k]
                beta0 = r['beta0'][component]
                seconds += row['seconds']
                if row['error'] is None:
                    estimates.append(row['beta'][component])
                else:
                    failures.append((r['rep'], row['error']))
            summaries.append(EstimatorSummary(config.label, beta0, estimates, failures, seconds, component))

        degrees = [r['mean_degree'] for r in self.results if r['mean_degree'] is not None]
        mean_degree = float(np.mean(degrees)) if degrees else None
        return McSummary(self.config, summaries, wall_time, mean_degree)

    def run(self):
        """
        Run every replication and summarise. Writes the result files when initialized.

        :return: McSummary
        """
        cfg = self.config
        tasks = [(cfg.dgp, cfg.estimators, rep) for rep in range(cfg.reps)]
        workers = cfg.parallelism if cfg.parallelism else None

        self._status(Fore.CYAN + "\nSimulation '{}' being executed\n".format(cfg.name) + Style.RESET_ALL)
        quantum_progress = max(cfg.reps // 100, 1)

        self._status("RUNNING ... ")
        start_time = datetime.now()
        results = []

        def progress(i):
            if i % quantum_progress == 0:
                elapsed_time = datetime.now() - start_time
                self._status('\rRUNNING ... {} % \t Elapsed: {}'.format(qd(Decimal(i * 100 / cfg.reps)),
                                                                        elapsed_time))

        if workers == 1:
            for i, t in enumerate(tasks):
                progress(i)
                results.append(run_replication(t))
        else:
            with Pool(processes=workers) as pool:
                # imap keeps the task order, chunks only change the scheduling
                for i, r in enumerate(pool.imap(run_replication, tasks, chunksize=max(cfg.reps // 64, 1))):
                    progress(i)
                    results.append(r)

        final_elapsed_time = datetime.now() - start_time
        self.results = sorted(results, key=lambda r: r['rep'])

        self._status('\rRUNNING ... ')
        self._status(Fore.GREEN + "DONE" + Style.RESET_ALL, end="\n")
        self._status('Total simulation time: {}'.format(final_elapsed_time), end="\n")

        self.summary = self.summarize(final_elapsed_time.total_seconds())
        for e in self.summary.estimators:
            if e.failures:
                self._status(Fore.YELLOW + "{}: {} failed replications".format(e.label, len(e.failures)) +
                             Style.RESET_ALL, end="\n")

        if self.init_ok:
            self.output_raw()
            self.output_summary()
        return self.summary


def run_mc(cfg, stream=None):
    """
    Run a McConfig, writing raw_data_<name>.csv and summary_<name>.json under cfg.output when given.

    :return: McSummary
    """
    mc = MonteCarlo(cfg, stream)
    if cfg.output is not None:
        mc.init_simulation(cfg.output)
    return mc.run()
