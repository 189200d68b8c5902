from itertools import product

import numpy as np
import pytest
from scipy.stats import chi2

from bnsl_citest.engines import g2_statistic
from bnsl_graph.graphs import Dag

from ..datasets import DiscreteVariable
from ..exceptions import DataModelError
from ..generators import random_dag, random_discrete_bn
from ..networks import Cpt, DiscreteBn, nparams, sample


def variable(name, cardinality):
    levels = tuple(f"{name.lower()}{index}" for index in range(cardinality))
    return DiscreteVariable(name, levels)


def collider_bn():
    """X (3 levels) with binary parents Y and Z."""
    dag = Dag(("Y", "Z", "X"), frozenset({("Y", "X"), ("Z", "X")}))
    table = [[0.2, 0.3, 0.5], [0.1, 0.1, 0.8], [0.6, 0.2, 0.2], [1.0, 0.0, 0.0]]
    return DiscreteBn(
        (variable("Y", 2), variable("Z", 2), variable("X", 3)),
        dag,
        {
            "Y": Cpt((), [[0.5, 0.5]]),
            "Z": Cpt((), [[0.3, 0.7]]),
            "X": Cpt(("Y", "Z"), table),
        },
    )


def chain_bn():
    return DiscreteBn(
        (variable("A", 2), variable("B", 2)),
        Dag(("A", "B"), frozenset({("A", "B")})),
        {
            "A": Cpt((), [[0.7, 0.3]]),
            "B": Cpt(("A",), [[0.1, 0.9], [0.8, 0.2]]),
        },
    )


def disconnected_bn():
    return DiscreteBn(
        (variable("A", 2), variable("B", 2)),
        Dag(("A", "B")),
        {"A": Cpt((), [[0.6, 0.4]]), "B": Cpt((), [[0.65, 0.35]])},
    )


def free_entries(bn):
    """Counts free CPT cells one row at a time."""
    return sum(
        len(row) - 1 for name in bn.names for row in bn.cpts[name].table.tolist()
    )


class TestDiscreteBn:
    def test_rows_must_sum_to_one(self):
        with pytest.raises(DataModelError, match="sum to 1"):
            DiscreteBn(
                (variable("A", 2),),
                Dag(("A",)),
                {"A": Cpt((), [[0.5, 0.6]])},
            )

    def test_table_shape(self):
        with pytest.raises(DataModelError, match="shape"):
            DiscreteBn(
                (variable("A", 2), variable("B", 2)),
                Dag(("A", "B"), frozenset({("A", "B")})),
                {"A": Cpt((), [[0.5, 0.5]]), "B": Cpt(("A",), [[0.5, 0.5]])},
            )

    def test_parents_match_the_dag(self):
        with pytest.raises(DataModelError, match="parents"):
            DiscreteBn(
                (variable("A", 2), variable("B", 2)),
                Dag(("A", "B"), frozenset({("A", "B")})),
                {"A": Cpt((), [[0.5, 0.5]]), "B": Cpt((), [[0.5, 0.5]])},
            )

    def test_negative_entries(self):
        with pytest.raises(DataModelError, match="negative"):
            DiscreteBn(
                (variable("A", 2),), Dag(("A",)), {"A": Cpt((), [[1.5, -0.5]])}
            )


class TestNparams:
    def test_collider(self):
        assert nparams(collider_bn()) == (3 - 1) * 4 + 1 + 1

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_free_cpt_entries(self, seed):
        bn = random_discrete_bn(random_dag(8, seed), seed, max_levels=4)

        assert nparams(bn) == free_entries(bn)

    def test_relabelling_levels_does_not_change_it(self):
        bn = collider_bn()
        relabelled = DiscreteBn(
            tuple(
                DiscreteVariable(v.name, tuple(f"L{i}" for i in range(v.cardinality)))
                for v in bn.variables
            ),
            bn.dag,
            bn.cpts,
        )

        assert nparams(relabelled) == nparams(bn)


class TestSample:
    def test_degenerate_node(self):
        bn = DiscreteBn((variable("A", 2),), Dag(("A",)), {"A": Cpt((), [[1.0, 0.0]])})

        data = sample(bn, 100, seed=1)

        assert data.n == 100
        assert set(data.labels("A")) == {"a0"}

    def test_same_seed_same_data(self):
        assert sample(collider_bn(), 500, seed=3) == sample(collider_bn(), 500, seed=3)
        assert sample(collider_bn(), 500, seed=3) != sample(collider_bn(), 500, seed=4)

    def test_column_order_is_the_network_order(self):
        assert sample(collider_bn(), 10, seed=0).names == ("Y", "Z", "X")

    def test_zero_rows(self):
        with pytest.raises(DataModelError):
            sample(collider_bn(), 0, seed=0)

    def test_chain_marginal(self):
        n = 50000
        data = sample(chain_bn(), n, seed=7)
        exact = 0.7 * 0.9 + 0.3 * 0.2

        empirical = np.mean(data.column("B") == 1)

        assert abs(empirical - exact) <= 3 * np.sqrt(exact * (1 - exact) / n)

    @pytest.mark.slow
    def test_disconnected_nodes_look_independent(self):
        bn = disconnected_bn()
        quantile = chi2.ppf(0.999, 1)

        passed = 0
        for seed in range(100):
            data = sample(bn, 50000, seed)
            counts = np.zeros((2, 2))
            np.add.at(counts, (data.column("A"), data.column("B")), 1)
            passed += g2_statistic(counts[np.newaxis]) < quantile

        assert passed >= 99

    @pytest.mark.parametrize("seed", range(3))
    def test_frequencies_converge_to_the_cpts(self, seed):
        dag = random_dag(4, seed, max_in_degree=1)
        bn = random_discrete_bn(dag, seed, max_levels=2, min_probability=0.2)
        data = sample(bn, 100000, seed)

        for name in bn.names:
            cpt = bn.cpts[name]
            shape = tuple(bn.cardinality(parent) for parent in cpt.parents)
            for row, configuration in enumerate(product(*map(range, shape))):
                mask = np.ones(data.n, dtype=bool)
                for parent, level in zip(cpt.parents, configuration):
                    mask &= data.column(parent) == level
                frequencies = np.bincount(
                    data.column(name)[mask], minlength=bn.cardinality(name)
                ) / mask.sum()
                assert np.max(np.abs(frequencies - cpt.table[row])) <= 0.02
