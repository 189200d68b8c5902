from bnsl_citest.engines import ORACLE, TEST_NAMES, build_test
from bnsl_data.csv_io import CONTINUOUS, DISCRETE, read_dataset
from bnsl_data.serializers import load_network
from bnsl_local.config import BACKENDS, LocalLearnConfig
from bnsl_local.learn import learn_local, local_result_to_json

from ..base import BnslCommand, name_list


class Command(BnslCommand):
    help = "Learn the Markov blanket or the neighbours of a single node."

    def add_arguments(self, parser):
        parser.add_argument("--data")
        parser.add_argument("--kind", choices=(DISCRETE, CONTINUOUS), default=None)
        parser.add_argument("--network")
        parser.add_argument("--node", required=True)
        parser.add_argument("--backend", choices=BACKENDS, required=True)
        parser.add_argument("--test", choices=TEST_NAMES, default="mi")
        parser.add_argument("--alpha", type=float, default=None)
        parser.add_argument("--max-condition-size", type=int, default=None)
        parser.add_argument("--start", type=name_list, default=frozenset())
        parser.add_argument("--whitelist", type=name_list, default=frozenset())
        parser.add_argument("--blacklist", type=name_list, default=frozenset())
        parser.add_argument("--output")

    def run(self, **options):
        cfg = LocalLearnConfig(
            options["backend"],
            alpha=self.alpha(options),
            start=options["start"],
            whitelist=options["whitelist"],
            blacklist=options["blacklist"],
            max_condition_size=self.max_condition_size(options),
        )
        network = load_network(options["network"]) if options["network"] else None
        data = None
        if options["data"]:
            kind = options["kind"] or (
                CONTINUOUS if options["test"] == "cor" else DISCRETE
            )
            data = read_dataset(options["data"], kind, network=network)
        elif options["test"] != ORACLE:
            self.usage_error("--data is required unless --test oracle is used.")

        test = build_test(
            options["test"], data, cfg.alpha, dag=network.dag if network else None
        )
        result = learn_local(data, options["node"], cfg, test)
        self.emit_json(
            local_result_to_json(options["node"], cfg, result, test.counter.count),
            options["output"],
        )
