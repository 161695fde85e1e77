# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Calibrated logit network formation design: plain logit MLE against the single index kernel estimator.
The full size (n = 550) takes tens of minutes, pass --fast for n = 200.
"""

# IMPORTS
import sys
from pathlib import Path
from dyadnet.common import init_logging
from dyadnet.harness.MonteCarlo import run_mc
from dyadnet.harness.Presets import preset_configs, PRESET_TABLE2
from dyadnet.harness.Tables import format_table, LAYOUT_TABLE2

BASE_PATH = "./simulations/RESULTS/"


def main(fast=False):
    init_logging('WARNING')
    Path(BASE_PATH).mkdir(exist_ok=True)

    summaries = [run_mc(cfg) for cfg in preset_configs(PRESET_TABLE2, reps=200, seed=2, parallelism=0,
                                                       output=BASE_PATH, fast=fast)]

    table = format_table(summaries, LAYOUT_TABLE2)
    Path(BASE_PATH).joinpath("table2{}.txt".format("_fast" if fast else "")).write_text(table)
    print(table)

#
# MAIN ENTRY POINT
#
if __name__ == "__main__":
    # execute only if run as a script
    main(fast='--fast' in sys.argv[1:])
