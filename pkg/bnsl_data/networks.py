from dataclasses import dataclass
from math import prod
from typing import Mapping, Tuple

import numpy as np

from bnsl_graph.graphs import Dag

from .datasets import DiscreteDataset, DiscreteVariable
from .exceptions import DataModelError

ROW_SUM_TOLERANCE = 1e-9


def make_generator(seed: int) -> np.random.Generator:
    """Counter-based Philox (4x64, 10 rounds) generator used for every draw."""
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True, eq=False)
class Cpt:
    """Conditional probability table of one node.

    Rows are parent configurations in lexicographic order with the last
    listed parent varying fastest; columns are the node's own levels.
    """

    parents: Tuple[str, ...]
    table: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        table = np.array(self.table, dtype=np.float64, copy=True, ndmin=2)
        table.flags.writeable = False
        object.__setattr__(self, "table", table)


@dataclass(frozen=True, eq=False)
class DiscreteBn:
    variables: Tuple[DiscreteVariable, ...]
    dag: Dag
    cpts: Mapping[str, Cpt]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        names = tuple(variable.name for variable in self.variables)
        if names != self.dag.nodes:
            raise DataModelError("Variables and DAG nodes must match in order.")
        if set(self.cpts) != set(names):
            raise DataModelError("Exactly one CPT is needed per variable.")

        for name in names:
            self._check_cpt(name, self.cpts[name])

    def _check_cpt(self, name: str, cpt: Cpt) -> None:
        if len(set(cpt.parents)) != len(cpt.parents) or set(cpt.parents) != set(
            self.dag.parents(name)
        ):
            raise DataModelError(f"CPT parents of `{name}` do not match the DAG.")

        expected = (
            prod(self.cardinality(parent) for parent in cpt.parents),
            self.cardinality(name),
        )
        if cpt.table.shape != expected:
            raise DataModelError(
                f"CPT of `{name}` has shape {cpt.table.shape}, expected {expected}."
            )
        if np.any(cpt.table < 0) or not np.all(np.isfinite(cpt.table)):
            raise DataModelError(f"CPT of `{name}` has negative or non-finite entries.")
        if np.any(np.abs(cpt.table.sum(axis=1) - 1.0) > ROW_SUM_TOLERANCE):
            raise DataModelError(f"CPT rows of `{name}` must sum to 1.")

    @property
    def names(self) -> Tuple[str, ...]:
        return self.dag.nodes

    def variable(self, name: str) -> DiscreteVariable:
        self.dag.require(name)
        return self.variables[self.dag.position[name]]

    def cardinality(self, name: str) -> int:
        return self.variable(name).cardinality


def nparams(bn: DiscreteBn) -> int:
    """Free parameters: one fewer than the levels, per parent configuration."""
    return sum(
        (bn.cardinality(name) - 1)
        * prod(bn.cardinality(parent) for parent in bn.cpts[name].parents)
        for name in bn.names
    )


def sample(bn: DiscreteBn, n: int, seed: int) -> DiscreteDataset:
    """Ancestral sampling: each node is drawn once all its parents are."""
    if n < 1:
        raise DataModelError("The sample size must be at least 1.")

    generator = make_generator(seed)
    codes = {}
    for name in bn.dag.topological_order:
        cpt = bn.cpts[name]
        if cpt.parents:
            configuration = np.ravel_multi_index(
                tuple(codes[parent] for parent in cpt.parents),
                tuple(bn.cardinality(parent) for parent in cpt.parents),
            )
        else:
            configuration = np.zeros(n, dtype=np.int64)

        cumulative = np.cumsum(cpt.table, axis=1)[configuration]
        draws = generator.random(n)
        level = (cumulative <= draws[:, None]).sum(axis=1)
        codes[name] = np.minimum(level, bn.cardinality(name) - 1)

    return DiscreteDataset(bn.variables, tuple(codes[name] for name in bn.names))
