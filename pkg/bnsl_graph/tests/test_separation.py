from itertools import chain, combinations

import networkx as nx
import pytest

from bnsl_data.generators import random_dag

from ..exceptions import GraphError, UnknownNodeError
from ..graphs import Dag
from ..separation import d_separated, markov_blanket_of

CHAIN = Dag(("A", "B", "C"), frozenset({("A", "B"), ("B", "C")}))
COLLIDER = Dag(("A", "B", "C"), frozenset({("A", "C"), ("B", "C")}))


def moralized_separation(dag, x, y, z):
    """Separation in the moral graph of the ancestral set of {x, y} and z."""
    graph = dag.to_networkx()
    relevant = {x, y, *z}
    for name in list(relevant):
        relevant |= nx.ancestors(graph, name)
    moral = nx.moral_graph(graph.subgraph(relevant))
    moral.remove_nodes_from(z)
    return not nx.has_path(moral, x, y)


def queries(dag, max_size):
    for x, y in combinations(dag.nodes, 2):
        others = [name for name in dag.nodes if name not in (x, y)]
        for z in chain.from_iterable(
            combinations(others, size) for size in range(max_size + 1)
        ):
            yield x, y, frozenset(z)


class TestDSeparated:
    def test_chain(self):
        assert d_separated(CHAIN, "A", "C", {"B"})
        assert not d_separated(CHAIN, "A", "C", set())

    def test_collider(self):
        assert d_separated(COLLIDER, "A", "B", set())
        assert not d_separated(COLLIDER, "A", "B", {"C"})

    def test_descendant_of_collider_opens_the_path(self):
        dag = Dag(
            ("A", "B", "C", "D"), frozenset({("A", "C"), ("B", "C"), ("C", "D")})
        )

        assert not d_separated(dag, "A", "B", {"D"})

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_moralized_ancestral_graph(self, seed):
        dag = random_dag(8, seed)

        for x, y, z in queries(dag, 2):
            assert d_separated(dag, x, y, z) == moralized_separation(dag, x, y, z)

    def test_is_symmetric(self):
        dag = random_dag(7, seed=9)

        for x, y, z in queries(dag, 2):
            assert d_separated(dag, x, y, z) == d_separated(dag, y, x, z)

    @pytest.mark.parametrize(
        "x, y, z, error",
        [
            ("A", "Q", set(), UnknownNodeError),
            ("A", "B", {"Q"}, UnknownNodeError),
            ("A", "A", set(), GraphError),
            ("A", "B", {"A"}, GraphError),
        ],
    )
    def test_invalid_queries(self, x, y, z, error):
        with pytest.raises(error):
            d_separated(CHAIN, x, y, z)


class TestMarkovBlanketOf:
    def test_examples(self):
        assert markov_blanket_of(CHAIN, "B") == {"A", "C"}
        assert markov_blanket_of(COLLIDER, "A") == {"B", "C"}

    @pytest.mark.parametrize("seed", range(4))
    def test_blanket_separates_the_rest(self, seed):
        dag = random_dag(10, seed)

        for x in dag.nodes:
            blanket = markov_blanket_of(dag, x)
            for w in set(dag.nodes) - blanket - {x}:
                assert d_separated(dag, x, w, blanket)

    def test_unknown_node(self):
        with pytest.raises(UnknownNodeError):
            markov_blanket_of(CHAIN, "Q")
