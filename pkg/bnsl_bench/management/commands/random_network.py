from bnsl_data.generators import random_dag, random_discrete_bn
from bnsl_data.serializers import dump_network

from ..base import BnslCommand


class Command(BnslCommand):
    help = "Write a random discrete network as network JSON."

    def add_arguments(self, parser):
        parser.add_argument("--nodes", type=int, required=True)
        parser.add_argument("--max-in-degree", type=int, default=3)
        parser.add_argument("--min-levels", type=int, default=2)
        parser.add_argument("--max-levels", type=int, default=3)
        parser.add_argument("--min-probability", type=float, default=None)
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--output", required=True)

    def run(self, **options):
        if options["nodes"] < 1:
            self.usage_error("--nodes must be at least 1.")
        if not 1 <= options["min_levels"] <= options["max_levels"]:
            self.usage_error("Need 1 <= --min-levels <= --max-levels.")
        seed = self.seed(options)
        dag = random_dag(
            options["nodes"], seed, max_in_degree=options["max_in_degree"]
        )
        bn = random_discrete_bn(
            dag,
            seed,
            min_levels=options["min_levels"],
            max_levels=options["max_levels"],
            min_probability=options["min_probability"],
        )
        dump_network(bn, options["output"])
        self.stdout.write(
            f"Wrote a network with {len(dag.nodes)} nodes and {len(dag.arcs)} arcs "
            f"to {options['output']}."
        )
