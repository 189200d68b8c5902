from typing import Union

from rest_framework import serializers

from .graphs import Pdag, Skeleton, canonical, edge


class EdgeSerializer(serializers.Serializer):  # noqa
    to = serializers.CharField()
    directed = serializers.BooleanField()

    def get_fields(self):
        # `from` is a keyword, so it cannot be declared as a class attribute
        fields = super().get_fields()
        fields["from"] = serializers.CharField()
        return fields


class GraphSerializer(serializers.Serializer):  # noqa
    nodes = serializers.ListField(child=serializers.CharField(), allow_empty=False)
    edges = EdgeSerializer(many=True)

    @staticmethod
    def validate_nodes(nodes):
        if len(set(nodes)) != len(nodes):
            raise serializers.ValidationError({"error": "duplicate_node"})
        return nodes

    def validate(self, data):
        known = set(data["nodes"])
        seen = set()
        for item in data["edges"]:
            for name in (item["from"], item["to"]):
                if name not in known:
                    raise serializers.ValidationError(
                        {"error": "unknown_node", "node": name}
                    )
            if item["from"] == item["to"]:
                raise serializers.ValidationError(
                    {"error": "self_loop", "node": item["from"]}
                )
            pair = edge(item["from"], item["to"])
            if pair in seen:
                raise serializers.ValidationError(
                    {"error": "duplicate_edge", "edge": sorted(pair)}
                )
            seen.add(pair)
        return data


def graph_to_json(graph: Union[Pdag, Skeleton]) -> dict:
    if isinstance(graph, Skeleton):
        graph = Pdag.from_skeleton(graph)

    edges = [
        {"from": a, "to": b, "directed": True} for a, b in sorted(graph.directed_arcs)
    ]
    edges += [
        {"from": a, "to": b, "directed": False}
        for a, b in sorted(tuple(canonical(pair)) for pair in graph.undirected_edges)
    ]
    edges.sort(key=lambda item: (item["from"], item["to"]))
    return {"nodes": list(graph.nodes), "edges": edges}


def pdag_from_json(payload: dict) -> Pdag:
    serializer = GraphSerializer(data=payload)
    serializer.is_valid(raise_exception=True)
    data = serializer.validated_data

    arcs = frozenset(
        (item["from"], item["to"]) for item in data["edges"] if item["directed"]
    )
    edges = frozenset(
        edge(item["from"], item["to"])
        for item in data["edges"]
        if not item["directed"]
    )
    return Pdag(tuple(data["nodes"]), arcs, edges)


def skeleton_from_json(payload: dict) -> Skeleton:
    return pdag_from_json(payload).skeleton()
