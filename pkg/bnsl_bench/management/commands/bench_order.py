from functools import partial

from bnsl_citest.engines import TEST_NAMES

from ...experiments import ORDER_COLUMNS, run_order_experiment
from ...serializers import build_order_spec
from ...tasks import run_order_experiment_task
from ..base import ExperimentCommand, split_list


class Command(ExperimentCommand):
    help = (
        "Hamming distance between skeletons learned from original and "
        "column-reversed samples, with and without backtracking."
    )
    columns = ORDER_COLUMNS
    overrides = (
        "network",
        "algorithms",
        "ratios",
        "repetitions",
        "alpha",
        "seed",
        "test",
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--network")
        parser.add_argument("--algorithms", type=partial(split_list, cast=str))
        parser.add_argument("--ratios", type=split_list)
        parser.add_argument("--repetitions", type=int)
        parser.add_argument("--alpha", type=float)
        parser.add_argument("--seed", type=int)
        parser.add_argument("--test", choices=TEST_NAMES)

    def experiment(self, experiment):
        return run_order_experiment(build_order_spec(experiment))

    def task(self):
        return run_order_experiment_task
