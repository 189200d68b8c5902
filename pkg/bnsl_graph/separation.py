from collections import deque
from typing import FrozenSet, Iterable

from .exceptions import GraphError
from .graphs import Dag

_UP = "up"
_DOWN = "down"


def d_separated(dag: Dag, x: str, y: str, z: Iterable[str]) -> bool:
    """Reachability ("Bayes ball") test for d-separation of x and y given z.

    A trail is followed from x; it leaves a node upwards (towards parents) or
    downwards (towards children). Chains and forks are blocked by observed
    nodes, colliders pass only when they or one of their descendants are
    observed, which is the same as the collider being an ancestor of z.
    """
    z = frozenset(z)
    dag.require(x, y, *z)
    if x == y:
        raise GraphError("d-separation needs two distinct nodes.")
    if x in z or y in z:
        raise GraphError("The conditioning set must not contain the queried nodes.")

    observed_ancestors = set(z)
    frontier = list(z)
    while frontier:
        for parent in dag.parents(frontier.pop()):
            if parent not in observed_ancestors:
                observed_ancestors.add(parent)
                frontier.append(parent)

    visited = set()
    queue = deque([(x, _UP)])
    while queue:
        node, direction = queue.popleft()
        if (node, direction) in visited:
            continue
        visited.add((node, direction))

        if node == y:
            return False

        if direction == _UP and node not in z:
            queue.extend((parent, _UP) for parent in dag.parents(node))
            queue.extend((child, _DOWN) for child in dag.children(node))
        elif direction == _DOWN:
            if node not in z:
                queue.extend((child, _DOWN) for child in dag.children(node))
            if node in observed_ancestors:
                queue.extend((parent, _UP) for parent in dag.parents(node))

    return True


def markov_blanket_of(dag: Dag, x: str) -> FrozenSet[str]:
    children = dag.children(x)
    spouses = set()
    for child in children:
        spouses |= dag.parents(child)
    return frozenset((dag.parents(x) | children | spouses) - {x})
