"""Immutable graph types over named variables.

Node order is the order of the variables in the data set; every operation
that has to make a choice iterates in canonical (name-sorted) order instead,
so results never depend on where a column happens to be stored.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx

from .exceptions import GraphError, UnknownNodeError

Arc = Tuple[str, str]
Edge = FrozenSet[str]


def edge(a: str, b: str) -> Edge:
    return frozenset((a, b))


def canonical(nodes: Iterable[str]) -> List[str]:
    return sorted(nodes)


def _check_nodes(nodes: Tuple[str, ...]) -> None:
    if any(not isinstance(name, str) or not name for name in nodes):
        raise GraphError("Node names must be non-empty strings.")
    if len(set(nodes)) != len(nodes):
        raise GraphError("Node names must be unique.")


def _endpoints(pair: Iterable[str]) -> Tuple[str, str]:
    members = tuple(pair)
    if len(members) == 1:
        return members[0], members[0]
    if len(members) != 2:
        raise GraphError("An edge joins exactly two nodes.")
    return members[0], members[1]


def _check_pair(known: FrozenSet[str], a: str, b: str) -> None:
    for name in (a, b):
        if name not in known:
            raise UnknownNodeError(name)
    if a == b:
        raise GraphError(f"Self-loop on `{a}` is not allowed.")


class _NodeIndex:
    nodes: Tuple[str, ...]

    @cached_property
    def node_set(self) -> FrozenSet[str]:
        return frozenset(self.nodes)

    @cached_property
    def position(self) -> Dict[str, int]:
        return {name: index for index, name in enumerate(self.nodes)}

    def require(self, *names: str) -> None:
        for name in names:
            if name not in self.node_set:
                raise UnknownNodeError(name)


@dataclass(frozen=True)
class Skeleton(_NodeIndex):
    nodes: Tuple[str, ...]
    edges: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        _check_nodes(self.nodes)
        edges = set()
        for pair in self.edges:
            a, b = _endpoints(pair)
            _check_pair(frozenset(self.nodes), a, b)
            edges.add(edge(a, b))
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_pairs(cls, nodes: Iterable[str], pairs: Iterable[Tuple[str, str]]):
        return cls(tuple(nodes), frozenset(edge(a, b) for a, b in pairs))

    @cached_property
    def _adjacency(self) -> Dict[str, FrozenSet[str]]:
        adjacency = {name: set() for name in self.nodes}
        for pair in self.edges:
            a, b = tuple(pair)
            adjacency[a].add(b)
            adjacency[b].add(a)
        return {name: frozenset(others) for name, others in adjacency.items()}

    def neighbours(self, name: str) -> FrozenSet[str]:
        self.require(name)
        return self._adjacency[name]

    def adjacent(self, a: str, b: str) -> bool:
        return edge(a, b) in self.edges

    def sorted_edges(self) -> List[Tuple[str, str]]:
        return sorted(tuple(canonical(pair)) for pair in self.edges)


@dataclass(frozen=True)
class Pdag(_NodeIndex):
    nodes: Tuple[str, ...]
    directed_arcs: FrozenSet[Arc] = field(default_factory=frozenset)
    undirected_edges: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        _check_nodes(self.nodes)
        known = frozenset(self.nodes)
        seen = set()
        for a, b in self.directed_arcs:
            _check_pair(known, a, b)
            if edge(a, b) in seen:
                raise GraphError(f"More than one edge between `{a}` and `{b}`.")
            seen.add(edge(a, b))
        undirected = set()
        for pair in self.undirected_edges:
            a, b = _endpoints(pair)
            _check_pair(known, a, b)
            if edge(a, b) in seen:
                raise GraphError(f"More than one edge between `{a}` and `{b}`.")
            seen.add(edge(a, b))
            undirected.add(edge(a, b))
        object.__setattr__(self, "directed_arcs", frozenset(self.directed_arcs))
        object.__setattr__(self, "undirected_edges", frozenset(undirected))

    @classmethod
    def from_skeleton(cls, skeleton: Skeleton) -> "Pdag":
        return cls(skeleton.nodes, frozenset(), skeleton.edges)

    @cached_property
    def _links(self) -> Dict[str, Tuple[set, set, set]]:
        links = {name: (set(), set(), set()) for name in self.nodes}
        for a, b in self.directed_arcs:
            links[b][0].add(a)
            links[a][1].add(b)
        for pair in self.undirected_edges:
            a, b = tuple(pair)
            links[a][2].add(b)
            links[b][2].add(a)
        return links

    def parents(self, name: str) -> FrozenSet[str]:
        self.require(name)
        return frozenset(self._links[name][0])

    def children(self, name: str) -> FrozenSet[str]:
        self.require(name)
        return frozenset(self._links[name][1])

    def undirected_neighbours(self, name: str) -> FrozenSet[str]:
        self.require(name)
        return frozenset(self._links[name][2])

    def adjacent(self, a: str, b: str) -> bool:
        parents, children, undirected = self._links[a]
        return b in parents or b in children or b in undirected

    def skeleton(self) -> Skeleton:
        pairs = {edge(a, b) for a, b in self.directed_arcs}
        return Skeleton(self.nodes, frozenset(pairs | set(self.undirected_edges)))


@dataclass(frozen=True)
class Dag(_NodeIndex):
    nodes: Tuple[str, ...]
    arcs: FrozenSet[Arc] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "arcs", frozenset(tuple(arc) for arc in self.arcs))
        _check_nodes(self.nodes)
        known = frozenset(self.nodes)
        pairs = set()
        for a, b in self.arcs:
            _check_pair(known, a, b)
            if edge(a, b) in pairs:
                raise GraphError(f"More than one arc between `{a}` and `{b}`.")
            pairs.add(edge(a, b))
        if not nx.is_directed_acyclic_graph(self.to_networkx()):
            raise GraphError("The arc set contains a directed cycle.")

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.arcs)
        return graph

    @cached_property
    def _parents(self) -> Dict[str, FrozenSet[str]]:
        parents = {name: set() for name in self.nodes}
        for a, b in self.arcs:
            parents[b].add(a)
        return {name: frozenset(found) for name, found in parents.items()}

    @cached_property
    def _children(self) -> Dict[str, FrozenSet[str]]:
        children = {name: set() for name in self.nodes}
        for a, b in self.arcs:
            children[a].add(b)
        return {name: frozenset(found) for name, found in children.items()}

    def parents(self, name: str) -> FrozenSet[str]:
        self.require(name)
        return self._parents[name]

    def children(self, name: str) -> FrozenSet[str]:
        self.require(name)
        return self._children[name]

    def neighbours(self, name: str) -> FrozenSet[str]:
        return self.parents(name) | self.children(name)

    def descendants(self, name: str) -> FrozenSet[str]:
        self.require(name)
        return frozenset(nx.descendants(self.to_networkx(), name))

    @cached_property
    def topological_order(self) -> Tuple[str, ...]:
        # ties are broken by column position so sampling order is reproducible
        return tuple(
            nx.lexicographical_topological_sort(
                self.to_networkx(), key=self.position.__getitem__
            )
        )

    def skeleton(self) -> Skeleton:
        return Skeleton(self.nodes, frozenset(edge(a, b) for a, b in self.arcs))


@dataclass(frozen=True, order=True)
class VStructure:
    left: str
    collider: str
    right: str

    def __post_init__(self):
        if self.left == self.right:
            raise GraphError("A v-structure needs two distinct parents.")
        if self.right < self.left:
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)

    @property
    def arcs(self) -> Tuple[Arc, Arc]:
        return (self.left, self.collider), (self.right, self.collider)
