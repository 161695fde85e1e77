# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

"""
Linear homophily design with 30% of the dyads missing completely at random (n = 100, rho = 0.5),
then the same design with a heteroskedastic kernel estimator on the imputed outcomes.
"""

# IMPORTS
from pathlib import Path
from dyadnet.common import init_logging, ESTIMATOR_KERNEL, DISTANCE_HETERO
from dyadnet.estimators.Pipeline import EstimatorConfig
from dyadnet.harness.MonteCarlo import McConfig, run_mc
from dyadnet.harness.Presets import preset_configs, PRESET_MISSING
from dyadnet.harness.Tables import format_table, LAYOUT_PLAIN

BASE_PATH = "./simulations/RESULTS/"


def main():
    init_logging('WARNING')
    Path(BASE_PATH).mkdir(exist_ok=True)

    preset = preset_configs(PRESET_MISSING, reps=500, seed=3, parallelism=0, output=BASE_PATH)[0]
    hetero = McConfig(preset.dgp, [EstimatorConfig(ESTIMATOR_KERNEL, DISTANCE_HETERO)], reps=100,
                      parallelism=0, output=BASE_PATH, name=preset.name + "_hetero")

    summaries = [run_mc(preset), run_mc(hetero)]
    table = format_table(summaries, LAYOUT_PLAIN)
    Path(BASE_PATH).joinpath("missing_data.txt").write_text(table)
    print(table)

#
# MAIN ENTRY POINT
#
if __name__ == "__main__":
    # execute only if run as a script
    main()
