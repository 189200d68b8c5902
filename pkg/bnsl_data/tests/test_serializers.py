import json

import numpy as np
import pytest
from rest_framework.exceptions import ValidationError

from ..exceptions import DataModelError
from ..generators import random_dag, random_discrete_bn
from ..serializers import (
    NetworkSerializer,
    dump_network,
    load_network,
    network_from_json,
    network_to_json,
)

CHAIN = {
    "variables": [
        {"name": "A", "levels": ["a0", "a1"]},
        {"name": "B", "levels": ["b0", "b1", "b2"]},
    ],
    "arcs": [["A", "B"]],
    "cpts": {
        "A": {"parents": [], "table": [[0.4, 0.6]]},
        "B": {"parents": ["A"], "table": [[0.2, 0.3, 0.5], [0.1, 0.1, 0.8]]},
    },
}


def changed(**fields):
    return {**json.loads(json.dumps(CHAIN)), **fields}


class TestNetworkFromJson:
    def test_chain(self):
        bn = network_from_json(CHAIN)

        assert bn.names == ("A", "B")
        assert bn.variable("B").levels == ("b0", "b1", "b2")
        assert bn.dag.arcs == {("A", "B")}
        assert np.allclose(bn.cpts["B"].table, [[0.2, 0.3, 0.5], [0.1, 0.1, 0.8]])

    def test_written_network_reads_back(self, tmp_path):
        bn = random_discrete_bn(random_dag(6, seed=4), 4)
        path = tmp_path / "net.json"

        dump_network(bn, path)
        loaded = load_network(path)

        assert network_to_json(loaded) == network_to_json(bn)

    @pytest.mark.parametrize(
        "payload, code",
        [
            (
                changed(variables=CHAIN["variables"] + [CHAIN["variables"][0]]),
                "duplicate_variable",
            ),
            (changed(arcs=[["A", "Q"]]), "unknown_arc_node"),
            (changed(cpts={"A": CHAIN["cpts"]["A"]}), "cpt_mismatch"),
            (changed(arcs=[]), "cpt_parents_mismatch"),
        ],
    )
    def test_schema_errors(self, payload, code):
        serializer = NetworkSerializer(data=payload)

        assert not serializer.is_valid()
        assert code in str(serializer.errors)

    def test_negative_probability(self):
        payload = changed(
            cpts={**CHAIN["cpts"], "A": {"parents": [], "table": [[1.2, -0.2]]}}
        )

        with pytest.raises(ValidationError):
            network_from_json(payload)

    @pytest.mark.parametrize(
        "cpts",
        [
            {**CHAIN["cpts"], "A": {"parents": [], "table": [[0.4, 0.5]]}},
            {**CHAIN["cpts"], "B": {"parents": ["A"], "table": [[0.2, 0.3, 0.5]]}},
        ],
    )
    def test_invalid_tables(self, cpts):
        with pytest.raises(DataModelError):
            network_from_json(changed(cpts=cpts))

    def test_cycle(self):
        payload = {
            "variables": [
                {"name": "A", "levels": ["0", "1"]},
                {"name": "B", "levels": ["0", "1"]},
            ],
            "arcs": [["A", "B"], ["B", "A"]],
            "cpts": {
                "A": {"parents": ["B"], "table": [[0.5, 0.5], [0.5, 0.5]]},
                "B": {"parents": ["A"], "table": [[0.5, 0.5], [0.5, 0.5]]},
            },
        }

        with pytest.raises(DataModelError, match="structure"):
            network_from_json(payload)


class TestLoadNetwork:
    def test_not_json(self, tmp_path):
        path = tmp_path / "net.json"
        path.write_text("not json")

        with pytest.raises(DataModelError, match="Cannot read"):
            load_network(path)
