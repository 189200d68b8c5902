"""Synthetic networks and data sets for tests and experiments."""

from math import prod
from typing import Optional

import numpy as np

from bnsl_graph.graphs import Dag

from .datasets import ContinuousDataset, DiscreteVariable
from .networks import Cpt, DiscreteBn, make_generator


def node_names(m: int, prefix: str = "V") -> tuple:
    width = len(str(max(m - 1, 0)))
    return tuple(f"{prefix}{index:0{width}d}" for index in range(m))


def random_dag(
    m: int,
    seed: int,
    max_in_degree: int = 3,
    mean_in_degree: float = 1.2,
) -> Dag:
    """Random DAG whose causal order is a random permutation of the columns.

    In-degrees are Poisson with the given mean, truncated at max_in_degree and
    at the number of nodes earlier in the causal order.
    """
    generator = make_generator(seed)
    names = node_names(m)
    order = [names[index] for index in generator.permutation(m)]

    arcs = set()
    for position, child in enumerate(order):
        k = min(int(generator.poisson(mean_in_degree)), max_in_degree, position)
        if k:
            chosen = generator.choice(position, size=k, replace=False)
            arcs.update((order[index], child) for index in sorted(chosen))

    return Dag(names, frozenset(arcs))


def random_discrete_bn(
    dag: Dag,
    seed: int,
    min_levels: int = 2,
    max_levels: int = 3,
    concentration: float = 1.0,
    min_probability: Optional[float] = None,
) -> DiscreteBn:
    """Discrete network over dag with Dirichlet-distributed CPT rows.

    min_probability, when given, floors every entry before renormalising so
    that all parent configurations stay reachable.
    """
    generator = make_generator(seed)
    variables = tuple(
        DiscreteVariable(
            name,
            tuple(
                f"s{level}"
                for level in range(int(generator.integers(min_levels, max_levels + 1)))
            ),
        )
        for name in dag.nodes
    )
    cardinality = {variable.name: variable.cardinality for variable in variables}

    cpts = {}
    for name in dag.nodes:
        parents = tuple(sorted(dag.parents(name), key=dag.position.__getitem__))
        rows = prod(cardinality[parent] for parent in parents)
        table = generator.dirichlet(
            np.full(cardinality[name], concentration), size=rows
        )
        if min_probability is not None:
            table = np.maximum(table, min_probability)
        cpts[name] = Cpt(parents, table / table.sum(axis=1, keepdims=True))

    return DiscreteBn(variables, dag, cpts)


def synthetic_gaussian_dataset(
    dag: Dag, n: int, seed: int, min_weight: float = 0.5, max_weight: float = 1.5
) -> ContinuousDataset:
    """Linear-Gaussian observations over dag, used as a benchmark fixture.

    Each node is a signed random combination of its parents plus standard
    normal noise; nodes are standardised before their children use them.
    """
    generator = make_generator(seed)
    values = {}
    for name in dag.topological_order:
        column = generator.standard_normal(n)
        for parent in sorted(dag.parents(name)):
            weight = generator.uniform(min_weight, max_weight)
            sign = 1.0 if generator.random() < 0.5 else -1.0
            column = column + sign * weight * values[parent]
        values[name] = (column - column.mean()) / column.std()

    return ContinuousDataset(dag.nodes, tuple(values[name] for name in dag.nodes))
