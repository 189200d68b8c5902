import json
from pathlib import Path
from typing import Union

from rest_framework import serializers

from bnsl_graph.exceptions import GraphError
from bnsl_graph.graphs import Dag

from .datasets import DiscreteVariable
from .exceptions import DataModelError
from .networks import Cpt, DiscreteBn


class VariableSerializer(serializers.Serializer):  # noqa
    name = serializers.CharField()
    levels = serializers.ListField(child=serializers.CharField(), allow_empty=False)


class CptSerializer(serializers.Serializer):  # noqa
    parents = serializers.ListField(child=serializers.CharField(), default=list)
    table = serializers.ListField(
        child=serializers.ListField(
            child=serializers.FloatField(min_value=0.0), allow_empty=False
        ),
        allow_empty=False,
    )


class NetworkSerializer(serializers.Serializer):  # noqa
    """Portable discrete network format.

    ``variables`` fixes the node order, ``arcs`` lists [parent, child] pairs
    and ``cpts`` maps every node to its ordered parents and probability rows
    (last parent varying fastest).
    """

    variables = VariableSerializer(many=True, allow_empty=False)
    arcs = serializers.ListField(
        child=serializers.ListField(
            child=serializers.CharField(), min_length=2, max_length=2
        ),
        default=list,
    )
    cpts = serializers.DictField(child=CptSerializer())

    @staticmethod
    def validate_variables(variables):
        names = [variable["name"] for variable in variables]
        if len(set(names)) != len(names):
            raise serializers.ValidationError({"error": "duplicate_variable"})
        return variables

    def validate(self, data):
        names = {variable["name"] for variable in data["variables"]}
        for parent, child in data["arcs"]:
            for name in (parent, child):
                if name not in names:
                    raise serializers.ValidationError(
                        {"error": "unknown_arc_node", "node": name}
                    )

        if set(data["cpts"]) != names:
            missing = sorted(names ^ set(data["cpts"]))
            raise serializers.ValidationError(
                {"error": "cpt_mismatch", "nodes": missing}
            )

        for name, cpt in data["cpts"].items():
            declared = {parent for parent, child in data["arcs"] if child == name}
            if set(cpt["parents"]) != declared:
                raise serializers.ValidationError(
                    {"error": "cpt_parents_mismatch", "node": name}
                )
        return data


def network_from_json(payload: dict) -> DiscreteBn:
    serializer = NetworkSerializer(data=payload)
    serializer.is_valid(raise_exception=True)
    data = serializer.validated_data

    variables = tuple(
        DiscreteVariable(variable["name"], tuple(variable["levels"]))
        for variable in data["variables"]
    )
    try:
        dag = Dag(
            tuple(variable.name for variable in variables),
            frozenset((parent, child) for parent, child in data["arcs"]),
        )
    except GraphError as exc:
        raise DataModelError(f"Invalid network structure: {exc}") from exc

    cpts = {
        name: Cpt(tuple(cpt["parents"]), cpt["table"])
        for name, cpt in data["cpts"].items()
    }
    return DiscreteBn(variables, dag, cpts)


def network_to_json(bn: DiscreteBn) -> dict:
    return {
        "variables": [
            {"name": variable.name, "levels": list(variable.levels)}
            for variable in bn.variables
        ],
        "arcs": [list(arc) for arc in sorted(bn.dag.arcs)],
        "cpts": {
            name: {
                "parents": list(bn.cpts[name].parents),
                "table": bn.cpts[name].table.tolist(),
            }
            for name in bn.names
        },
    }


def load_network(path: Union[str, Path]) -> DiscreteBn:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise DataModelError(f"Cannot read network file `{path}`: {exc}") from exc
    return network_from_json(payload)


def dump_network(bn: DiscreteBn, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(network_to_json(bn), indent=2), encoding="utf-8")
