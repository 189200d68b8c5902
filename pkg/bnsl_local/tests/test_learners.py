import pytest

from bnsl_citest.engines import OracleTest
from bnsl_data.generators import random_dag
from bnsl_graph.graphs import Dag
from bnsl_graph.separation import markov_blanket_of

from ..blankets import learn_mb
from ..config import BLANKET_BACKENDS, NEIGHBOUR_BACKENDS, LocalLearnConfig
from ..exceptions import LocalLearnConfigError
from ..learn import learn_local, local_result_to_json
from ..neighbours import learn_nbr


class RecordingOracle(OracleTest):
    def __init__(self, dag):
        super().__init__(dag)
        self.queries = []

    def test(self, x, y, z=()):
        self.queries.append((x, y, frozenset(z)))
        return super().test(x, y, z)


def dag_of(nodes, arcs):
    return Dag(tuple(nodes), frozenset(arcs))


CHAIN = dag_of("ABC", {("A", "B"), ("B", "C")})
COLLIDER = dag_of("ABC", {("A", "C"), ("B", "C")})
DIAMOND = dag_of("ABCD", {("A", "D"), ("B", "D"), ("C", "D"), ("A", "B")})
RANDOM_DAGS = [
    random_dag(m, seed, max_in_degree=3) for m in (6, 8, 10) for seed in range(4)
]


def parents_and_children(dag, node):
    return dag.parents(node) | dag.children(node)


class TestLearnMb:
    @pytest.mark.parametrize("backend", BLANKET_BACKENDS)
    def test_empty_graph(self, backend):
        dag = dag_of("AT", set())

        nodes, sepsets = learn_mb(None, "T", LocalLearnConfig(backend), OracleTest(dag))

        assert nodes == frozenset()
        assert sepsets.get("A", "T") == frozenset()

    @pytest.mark.parametrize("backend", BLANKET_BACKENDS)
    def test_chain_and_collider(self, backend):
        cfg = LocalLearnConfig(backend)

        assert learn_mb(None, "B", cfg, OracleTest(CHAIN)).nodes == {"A", "C"}
        assert learn_mb(None, "A", cfg, OracleTest(COLLIDER)).nodes == {"B", "C"}

    @pytest.mark.parametrize("backend", BLANKET_BACKENDS)
    @pytest.mark.parametrize("dag", RANDOM_DAGS)
    def test_recovers_true_blankets(self, backend, dag):
        test = OracleTest(dag)

        for node in dag.nodes:
            result = learn_mb(None, node, LocalLearnConfig(backend), test)

            assert result.nodes == markov_blanket_of(dag, node)
            for pair, sepset in result.sepsets.items():
                assert test.test(*sorted(pair), sepset).independent

    @pytest.mark.parametrize("backend", BLANKET_BACKENDS)
    def test_start_only_seeds(self, backend):
        dag = RANDOM_DAGS[-1]
        test = OracleTest(dag)

        for node in dag.nodes:
            start = frozenset(dag.nodes[:3]) - {node}
            seeded = learn_mb(None, node, LocalLearnConfig(backend, start=start), test)

            assert seeded.nodes == markov_blanket_of(dag, node)

    @pytest.mark.parametrize("backend", BLANKET_BACKENDS)
    def test_blacklist_is_never_tested(self, backend):
        test = RecordingOracle(DIAMOND)
        cfg = LocalLearnConfig(backend, blacklist={"B"})

        nodes, _ = learn_mb(None, "D", cfg, test)

        assert "B" not in nodes
        assert all("B" not in (x, y) and "B" not in z for x, y, z in test.queries)

    @pytest.mark.parametrize("backend", BLANKET_BACKENDS)
    def test_whitelist_is_forced_and_untested(self, backend):
        test = RecordingOracle(CHAIN)
        cfg = LocalLearnConfig(backend, whitelist={"A"})

        nodes, _ = learn_mb(None, "C", cfg, test)

        assert "A" in nodes
        assert all("A" not in (x, y) for x, y, _ in test.queries)

    def test_rejects_neighbour_backend(self):
        with pytest.raises(LocalLearnConfigError):
            learn_mb(None, "A", LocalLearnConfig("mmpc"), OracleTest(CHAIN))


class TestLearnNbr:
    @pytest.mark.parametrize("backend", NEIGHBOUR_BACKENDS)
    def test_collider(self, backend):
        cfg = LocalLearnConfig(backend)
        test = OracleTest(COLLIDER)

        left = learn_nbr(None, "A", cfg, test)

        assert left.nodes == {"C"}
        assert left.sepsets.get("A", "B") == frozenset()
        assert learn_nbr(None, "C", cfg, test).nodes == {"A", "B"}

    @pytest.mark.parametrize("backend", NEIGHBOUR_BACKENDS)
    @pytest.mark.parametrize("dag", RANDOM_DAGS)
    def test_symmetric_neighbourhoods_give_true_skeleton(self, backend, dag):
        test = OracleTest(dag)
        found = {
            node: learn_nbr(None, node, LocalLearnConfig(backend), test)
            for node in dag.nodes
        }

        for node, result in found.items():
            # descendants may survive one side of the search but never both
            assert result.nodes >= parents_and_children(dag, node)
            symmetric = {other for other in result.nodes if node in found[other].nodes}
            assert symmetric == parents_and_children(dag, node)
            for pair, sepset in result.sepsets.items():
                assert test.test(*sorted(pair), sepset).independent

    @pytest.mark.parametrize("backend", NEIGHBOUR_BACKENDS)
    def test_start_set_with_blacklist(self, backend):
        test = RecordingOracle(DIAMOND)
        cfg = LocalLearnConfig(backend, start={"A", "C"}, blacklist={"B"})

        nodes, _ = learn_nbr(None, "D", cfg, test)

        assert nodes == {"A", "C"}
        assert all("B" not in (x, y) and "B" not in z for x, y, z in test.queries)

    @pytest.mark.parametrize("backend", NEIGHBOUR_BACKENDS)
    def test_whitelist_with_blacklist(self, backend):
        test = RecordingOracle(DIAMOND)
        cfg = LocalLearnConfig(backend, whitelist={"A", "C"}, blacklist={"B"})

        nodes, _ = learn_nbr(None, "D", cfg, test)

        assert nodes >= {"A", "C"}
        assert test.queries == []

    @pytest.mark.parametrize("backend", NEIGHBOUR_BACKENDS)
    def test_start_members_can_be_discarded(self, backend):
        cfg = LocalLearnConfig(backend, start={"A"})

        nodes, sepsets = learn_nbr(None, "C", cfg, OracleTest(CHAIN))

        assert nodes == {"B"}
        assert sepsets.get("A", "C") == frozenset({"B"})

    @pytest.mark.parametrize("backend", NEIGHBOUR_BACKENDS)
    def test_search_is_limited_to_blanket(self, backend):
        test = RecordingOracle(CHAIN)
        cfg = LocalLearnConfig(backend, markov_blanket={"B"})

        nodes, sepsets = learn_nbr(None, "C", cfg, test)

        assert nodes == {"B"}
        assert len(sepsets) == 0
        assert all("A" not in (x, y) for x, y, _ in test.queries)

    def test_rejects_blanket_backend(self):
        with pytest.raises(LocalLearnConfigError):
            learn_nbr(None, "A", LocalLearnConfig("gs"), OracleTest(CHAIN))


class TestLearnLocal:
    @pytest.mark.parametrize(
        "backend, expected", [("iamb", ["A", "C"]), ("si-hiton-pc", ["A", "C"])]
    )
    def test_dispatches_on_backend(self, backend, expected):
        test = OracleTest(CHAIN)
        cfg = LocalLearnConfig(backend)

        result = learn_local(None, "B", cfg, test)
        payload = local_result_to_json("B", cfg, result, test.counter.count)

        assert payload["nodes"] == expected
        assert payload["backend"] == backend
        assert payload["tests"] == test.counter.count > 0
