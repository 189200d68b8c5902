import logging
from collections import deque
from typing import Callable, Dict, Set, Tuple

import networkx as nx

from .exceptions import GraphError
from .graphs import Dag, Pdag, canonical, edge

logger = logging.getLogger(__name__)


def has_strictly_directed_path(pdag: Pdag, source: str, target: str) -> bool:
    pdag.require(source, target)
    return _directed_reach(
        {name: set(pdag.children(name)) for name in pdag.nodes}, source, target
    )


def _directed_reach(children: Dict[str, Set[str]], source: str, target: str) -> bool:
    seen = {source}
    queue = deque([source])
    while queue:
        for child in children[queue.popleft()]:
            if child == target:
                return True
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return False


class WorkingPdag:
    """Mutable working copy of a PDAG used while propagating orientations."""

    def __init__(self, pdag: Pdag):
        self.nodes = pdag.nodes
        self.parents = {name: set(pdag.parents(name)) for name in pdag.nodes}
        self.children = {name: set(pdag.children(name)) for name in pdag.nodes}
        self.undirected = {
            name: set(pdag.undirected_neighbours(name)) for name in pdag.nodes
        }

    def adjacent(self, a: str, b: str) -> bool:
        return b in self.parents[a] or b in self.children[a] or b in self.undirected[a]

    def creates_cycle(self, a: str, b: str) -> bool:
        return _directed_reach(self.children, b, a)

    def orient(self, a: str, b: str) -> bool:
        """Turn a - b into a -> b unless that closes a directed cycle."""
        if b not in self.undirected[a] or self.creates_cycle(a, b):
            return False
        self.undirected[a].discard(b)
        self.undirected[b].discard(a)
        self.children[a].add(b)
        self.parents[b].add(a)
        return True

    def check_acyclic(self) -> None:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(
            (parent, child)
            for parent, children in self.children.items()
            for child in children
        )
        if not nx.is_directed_acyclic_graph(graph):
            raise GraphError("The directed part of the PDAG contains a cycle.")

    def to_pdag(self) -> Pdag:
        arcs = frozenset(
            (parent, child)
            for parent, children in self.children.items()
            for child in children
        )
        edges = frozenset(
            edge(a, b) for a, others in self.undirected.items() for b in others
        )
        return Pdag(self.nodes, arcs, edges)


def _rule_directed_path(state: WorkingPdag, x: str, y: str) -> bool:
    return _directed_reach(state.children, x, y)


def _rule_no_new_collider(state: WorkingPdag, x: str, y: str) -> bool:
    return any(not state.adjacent(parent, y) for parent in state.parents[x])


def _rule_two_colliders(state: WorkingPdag, x: str, y: str) -> bool:
    candidates = canonical(state.undirected[x] & state.parents[y])
    return any(
        not state.adjacent(k, l)
        for i, k in enumerate(candidates)
        for l in candidates[i + 1 :]
    )


_RULES: Tuple[Callable[[WorkingPdag, str, str], bool], ...] = (
    _rule_directed_path,
    _rule_no_new_collider,
    _rule_two_colliders,
)


def apply_meek_rules(pdag: Pdag) -> Pdag:
    """Propagate arc directions until a full sweep changes nothing.

    Each sweep applies every rule in turn to the undirected edges x - y,
    scanning x and then y in canonical order:

    (a) a strictly directed path x ~> y exists;
    (b) some parent of x is not adjacent to y;
    (c) x has two non-adjacent undirected neighbours that are both parents of y.
    """
    state = WorkingPdag(pdag)
    state.check_acyclic()
    sweeps = 0
    changed = True
    while changed:
        changed = False
        sweeps += 1
        for rule in _RULES:
            for x in canonical(state.nodes):
                for y in canonical(state.undirected[x]):
                    if y in state.undirected[x] and rule(state, x, y):
                        changed = state.orient(x, y) or changed
        state.check_acyclic()

    logger.debug(f"Orientation propagation converged after {sweeps} sweep(s).")
    return state.to_pdag()


def dag_to_cpdag(dag: Dag) -> Pdag:
    skeleton = dag.skeleton()
    arcs = set()
    for collider in dag.nodes:
        parents = canonical(dag.parents(collider))
        for i, left in enumerate(parents):
            for right in parents[i + 1 :]:
                if not skeleton.adjacent(left, right):
                    arcs.add((left, collider))
                    arcs.add((right, collider))

    edges = frozenset(edge(a, b) for a, b in dag.arcs if (a, b) not in arcs)
    return apply_meek_rules(Pdag(dag.nodes, frozenset(arcs), edges))
