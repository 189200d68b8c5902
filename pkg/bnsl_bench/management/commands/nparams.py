from bnsl_data.networks import nparams
from bnsl_data.serializers import load_network

from ..base import BnslCommand


class Command(BnslCommand):
    help = "Print the number of free parameters of a network JSON file."

    def add_arguments(self, parser):
        parser.add_argument("--network", required=True)

    def run(self, **options):
        self.stdout.write(str(nparams(load_network(options["network"]))))
