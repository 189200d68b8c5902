import json

from bnsl_citest.engines import ORACLE, TEST_NAMES, build_test
from bnsl_data.csv_io import CONTINUOUS, DISCRETE, read_dataset
from bnsl_data.serializers import load_network
from bnsl_graph.serializers import graph_to_json
from bnsl_parallel.executor import BACKENDS, SCHEDULES, ParallelExecutor
from bnsl_structure.config import ALGORITHMS, BACKTRACKING, NONE, GlobalLearnConfig
from bnsl_structure.pipeline import learn_structure

from ..base import BnslCommand


class Command(BnslCommand):
    help = "Learn the completed PDAG of a data set and print it as graph JSON."

    def add_arguments(self, parser):
        parser.add_argument("--data", help="CSV file, first row holds the names.")
        parser.add_argument("--kind", choices=(DISCRETE, CONTINUOUS), default=None)
        parser.add_argument("--algorithm", choices=ALGORITHMS, required=True)
        parser.add_argument("--test", choices=TEST_NAMES, default="mi")
        parser.add_argument("--alpha", type=float, default=None)
        parser.add_argument("--workers", type=int, default=None)
        parser.add_argument("--schedule", choices=SCHEDULES, default=None)
        parser.add_argument("--backend", choices=BACKENDS, default=None)
        parser.add_argument("--backtracking", choices=BACKTRACKING, default=NONE)
        parser.add_argument("--max-condition-size", type=int, default=None)
        parser.add_argument(
            "--network",
            help="Network JSON: level order for --data, the DAG for --test oracle.",
        )
        parser.add_argument("--output", help="Write the graph JSON here.")
        parser.add_argument("--telemetry", help="Append run telemetry as JSON lines.")

    def run(self, **options):
        executor = ParallelExecutor.from_settings(
            workers=options["workers"],
            schedule=options["schedule"],
            backend=options["backend"],
        )
        cfg = GlobalLearnConfig(
            options["algorithm"],
            test=options["test"],
            alpha=self.alpha(options),
            backtracking=options["backtracking"],
            workers=executor.workers,
            schedule=executor.schedule,
            max_condition_size=self.max_condition_size(options),
        )

        network = load_network(options["network"]) if options["network"] else None
        data = None
        if options["data"]:
            kind = options["kind"] or (CONTINUOUS if cfg.test == "cor" else DISCRETE)
            data = read_dataset(options["data"], kind, network=network)
        elif cfg.test != ORACLE:
            self.usage_error("--data is required unless --test oracle is used.")

        test = build_test(
            cfg.test, data, cfg.alpha, dag=network.dag if network else None
        )
        run = learn_structure(data, cfg, executor, test)

        if options["telemetry"]:
            with open(options["telemetry"], "a", encoding="utf-8") as telemetry:
                for line in run.telemetry():
                    telemetry.write(json.dumps(line) + "\n")
        self.emit_json(graph_to_json(run.cpdag), options["output"])
