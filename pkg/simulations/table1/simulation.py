# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Linear homophily design: additive fixed effects, kernel and nearest neighbor estimators for
n in {30, 50, 100} and rho in {0, 0.3, 0.5, 0.7}.
"""

# IMPORTS
from pathlib import Path
from dyadnet.common import init_logging
from dyadnet.harness.MonteCarlo import run_mc
from dyadnet.harness.Presets import preset_configs, PRESET_TABLE1
from dyadnet.harness.Tables import format_table, LAYOUT_TABLE1

BASE_PATH = "./simulations/RESULTS/"


def main():
    init_logging('WARNING')
    Path(BASE_PATH).mkdir(exist_ok=True)

    # 1000 replications per cell, DEFAULT_REPS is 10,000
    summaries = [run_mc(cfg) for cfg in preset_configs(PRESET_TABLE1, reps=1000, seed=1, parallelism=0,
                                                       output=BASE_PATH)]

    table = format_table(summaries, LAYOUT_TABLE1)
    Path(BASE_PATH).joinpath("table1.txt").write_text(table)
    print(table)

#
# MAIN ENTRY POINT
#
if __name__ == "__main__":
    # execute only if run as a script
    main()
