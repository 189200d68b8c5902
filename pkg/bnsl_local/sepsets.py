from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Tuple

from bnsl_graph.graphs import Edge, canonical, edge

Sepset = Optional[FrozenSet[str]]


class SepsetTable:
    """Separating sets keyed by unordered node pair.

    Only pairs found independent are recorded; lookups of any other pair
    return None.
    """

    def __init__(self, entries: Optional[Dict[Edge, FrozenSet[str]]] = None):
        self._entries: Dict[Edge, FrozenSet[str]] = dict(entries or {})

    def record(self, a: str, b: str, sepset: Iterable[str]) -> None:
        self._entries[edge(a, b)] = frozenset(sepset)

    def get(self, a: str, b: str) -> Sepset:
        return self._entries.get(edge(a, b))

    def merge(self, other: "SepsetTable") -> None:
        """Adds the pairs of other this table lacks; existing entries win."""
        for pair, sepset in other.items():
            if pair not in self._entries:
                self._entries[pair] = sepset

    def items(self) -> Iterator[Tuple[Edge, FrozenSet[str]]]:
        for pair in sorted(self._entries, key=canonical):
            yield pair, self._entries[pair]

    def to_json(self) -> list:
        return [
            {
                "pair": canonical(pair),
                "sepset": canonical(sepset),
            }
            for pair, sepset in self.items()
        ]

    def __contains__(self, pair) -> bool:
        return frozenset(pair) in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, SepsetTable):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self):
        return f"SepsetTable({dict(self.items())!r})"
