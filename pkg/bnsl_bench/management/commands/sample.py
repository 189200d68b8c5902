from bnsl_data.csv_io import write_dataset
from bnsl_data.networks import sample
from bnsl_data.serializers import load_network

from ..base import BnslCommand


class Command(BnslCommand):
    help = "Draw n observations from a network JSON file and write them as CSV."

    def add_arguments(self, parser):
        parser.add_argument("--network", required=True)
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--output", required=True)

    def run(self, **options):
        bn = load_network(options["network"])
        data = sample(bn, options["n"], self.seed(options))
        write_dataset(data, options["output"])
        self.stdout.write(f"Wrote {data.n} rows to {options['output']}.")
