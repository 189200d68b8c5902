import json

from bnsl_graph.metrics import hamming_skeleton
from bnsl_graph.serializers import skeleton_from_json

from ...exceptions import ExperimentError
from ..base import BnslCommand


def read_skeleton(path):
    try:
        with open(path, encoding="utf-8") as graph_file:
            payload = json.load(graph_file)
    except (OSError, ValueError) as exc:
        raise ExperimentError(f"Cannot read graph `{path}`: {exc}") from exc
    return skeleton_from_json(payload)


class Command(BnslCommand):
    help = "Print the skeleton Hamming distance between two graph JSON files."

    def add_arguments(self, parser):
        parser.add_argument("--a", required=True)
        parser.add_argument("--b", required=True)

    def run(self, **options):
        distance = hamming_skeleton(
            read_skeleton(options["a"]), read_skeleton(options["b"])
        )
        self.stdout.write(str(distance))
