import logging
import os

import pandas as pd
import pytest

from bnsl_bench.experiments import ScalingExperimentSpec, run_scaling_experiment
from bnsl_data.csv_io import CONTINUOUS, write_dataset
from bnsl_data.generators import random_dag, synthetic_gaussian_dataset
from bnsl_structure.config import NONE

logger = logging.getLogger(__name__)

# reference overheads of a cluster run, printed for context only
REFERENCE_OVERHEAD = {8: (0.157, 0.191), 20: (0.062, 0.076)}


@pytest.mark.slow
@pytest.mark.skipif(
    (os.cpu_count() or 1) < 4, reason="Scaling needs at least four cores."
)
class TestScaling:
    def test_four_workers_are_faster(self, tmp_path):
        path = tmp_path / "gaussian200.csv"
        dag = random_dag(200, seed=200)
        write_dataset(synthetic_gaussian_dataset(dag, 2000, seed=200), path)
        spec = ScalingExperimentSpec(
            dataset=str(path),
            kind=CONTINUOUS,
            test="cor",
            workers=(1, 4),
            repetitions=3,
        )

        frame = pd.DataFrame(run_scaling_experiment(spec))
        means = frame[frame["mode"] == NONE].groupby("workers").first()
        logger.info(
            f"Normalized running time:\n{means[['mean_seconds', 'ratio', 'overhead']]}"
            f"\nReference overheads: {REFERENCE_OVERHEAD}"
        )

        assert means.loc[4, "mean_seconds"] < means.loc[1, "mean_seconds"]
        assert 0.25 <= means.loc[4, "ratio"] <= 0.70
