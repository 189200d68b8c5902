import logging
import os
from itertools import product
from math import prod

import numpy as np
import pytest

from bnsl_data.datasets import DiscreteVariable
from bnsl_data.generators import random_dag, random_discrete_bn
from bnsl_data.networks import Cpt, DiscreteBn
from bnsl_data.serializers import dump_network
from bnsl_graph.graphs import Dag

logger = logging.getLogger(__name__)

# converted ALARM network in the JSON network format, optional
ALARM_NETWORK = os.environ.get("BNSL_ALARM_NETWORK")


def binary(name):
    return DiscreteVariable(name, ("no", "yes"))


def exact_marginal(bn: DiscreteBn, name: str) -> np.ndarray:
    """Marginal of name by summing the full joint, for networks of a few nodes."""
    marginal = np.zeros(bn.cardinality(name))
    names = bn.names
    for assignment in product(*(range(bn.cardinality(node)) for node in names)):
        state = dict(zip(names, assignment))
        joint = 1.0
        for node in names:
            cpt = bn.cpts[node]
            row = 0
            for parent in cpt.parents:
                row = row * bn.cardinality(parent) + state[parent]
            joint *= cpt.table[row, state[node]]
        marginal[state[name]] += joint
    return marginal


def within_three_sigma(frequency: float, probability: float, n: int) -> bool:
    sigma = np.sqrt(probability * (1 - probability) / n)
    return bool(abs(frequency - probability) <= 3 * sigma)


def sprinkler_bn() -> DiscreteBn:
    names = ("Cloudy", "Sprinkler", "Rain", "WetGrass")
    dag = Dag(
        names,
        frozenset(
            {
                ("Cloudy", "Sprinkler"),
                ("Cloudy", "Rain"),
                ("Sprinkler", "WetGrass"),
                ("Rain", "WetGrass"),
            }
        ),
    )
    return DiscreteBn(
        tuple(binary(name) for name in names),
        dag,
        {
            "Cloudy": Cpt((), [[0.5, 0.5]]),
            "Sprinkler": Cpt(("Cloudy",), [[0.5, 0.5], [0.9, 0.1]]),
            "Rain": Cpt(("Cloudy",), [[0.8, 0.2], [0.2, 0.8]]),
            "WetGrass": Cpt(
                ("Sprinkler", "Rain"),
                [[1.0, 0.0], [0.1, 0.9], [0.1, 0.9], [0.01, 0.99]],
            ),
        },
    )


def three_level_chain_bn() -> DiscreteBn:
    variables = (
        DiscreteVariable("A", ("low", "mid", "high")),
        DiscreteVariable("B", ("low", "mid", "high")),
        binary("C"),
    )
    return DiscreteBn(
        variables,
        Dag(("A", "B", "C"), frozenset({("A", "B"), ("B", "C")})),
        {
            "A": Cpt((), [[0.2, 0.5, 0.3]]),
            "B": Cpt(("A",), [[0.6, 0.3, 0.1], [0.2, 0.6, 0.2], [0.1, 0.2, 0.7]]),
            "C": Cpt(("B",), [[0.9, 0.1], [0.5, 0.5], [0.15, 0.85]]),
        },
    )


def random_small_bn() -> DiscreteBn:
    return random_discrete_bn(random_dag(5, seed=3), seed=3, min_probability=0.05)


def free_parameters(bn: DiscreteBn) -> int:
    """Closed formula: (levels - 1) times the number of parent configurations."""
    return sum(
        (len(bn.variable(name).levels) - 1)
        * prod(len(bn.variable(parent).levels) for parent in bn.dag.parents(name))
        for name in bn.names
    )


@pytest.fixture(scope="module")
def network_37(tmp_path_factory):
    bn = random_discrete_bn(random_dag(37, seed=37), seed=37, min_probability=0.05)
    path = tmp_path_factory.mktemp("networks") / "net37.json"
    dump_network(bn, path)
    logger.info(f"Wrote 37-node network to {path}.")
    return path
