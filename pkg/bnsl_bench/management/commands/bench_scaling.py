from functools import partial

from bnsl_citest.engines import TEST_NAMES
from bnsl_data.csv_io import CONTINUOUS, DISCRETE
from bnsl_parallel.executor import BACKENDS, SCHEDULES
from bnsl_structure.config import ALGORITHMS

from ...experiments import SCALING_COLUMNS, run_scaling_experiment
from ...serializers import build_scaling_spec
from ...tasks import run_scaling_experiment_task
from ..base import ExperimentCommand, split_list


class Command(ExperimentCommand):
    help = (
        "Skeleton learning time for each worker count, normalised by the "
        "1-worker run, plus start-set backtracking on one worker."
    )
    columns = SCALING_COLUMNS
    overrides = (
        "dataset",
        "kind",
        "network",
        "n",
        "algorithm",
        "workers",
        "repetitions",
        "alpha",
        "seed",
        "test",
        "schedule",
        "backend",
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--dataset")
        parser.add_argument("--kind", choices=(DISCRETE, CONTINUOUS))
        parser.add_argument("--network")
        parser.add_argument("--n", type=int)
        parser.add_argument("--algorithm", choices=ALGORITHMS)
        parser.add_argument("--workers", type=partial(split_list, cast=int))
        parser.add_argument("--repetitions", type=int)
        parser.add_argument("--alpha", type=float)
        parser.add_argument("--seed", type=int)
        parser.add_argument("--test", choices=TEST_NAMES)
        parser.add_argument("--schedule", choices=SCHEDULES)
        parser.add_argument("--backend", choices=BACKENDS)

    def experiment(self, experiment):
        return run_scaling_experiment(build_scaling_spec(experiment))

    def task(self):
        return run_scaling_experiment_task
