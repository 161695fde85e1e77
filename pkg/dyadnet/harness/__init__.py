# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

from dyadnet.harness.MonteCarlo import McConfig, McSummary, EstimatorSummary, MonteCarlo, run_mc
from dyadnet.harness.Presets import preset_configs, PRESETS
from dyadnet.harness.Tables import format_table, LAYOUTS
from dyadnet.harness.Ingest import ingest, write_dataset, write_matrix
