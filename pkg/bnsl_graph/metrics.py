from .exceptions import GraphError
from .graphs import Skeleton


def hamming_skeleton(a: Skeleton, b: Skeleton) -> int:
    """Number of undirected edges present in exactly one of the two skeletons."""
    if a.node_set != b.node_set:
        missing = sorted(a.node_set ^ b.node_set)
        raise GraphError(f"Skeletons are defined over different nodes: {missing}.")
    return len(a.edges ^ b.edges)
