from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional

from .exceptions import LocalLearnConfigError

GS = "gs"
IAMB = "iamb"
INTER_IAMB = "inter-iamb"
MMPC = "mmpc"
SI_HITON_PC = "si-hiton-pc"

BLANKET_BACKENDS = (GS, IAMB, INTER_IAMB)
NEIGHBOUR_BACKENDS = (MMPC, SI_HITON_PC)
BACKENDS = BLANKET_BACKENDS + NEIGHBOUR_BACKENDS


@dataclass(frozen=True)
class LocalLearnConfig:
    """Settings for learning the blanket or the neighbours of one node.

    start seeds the candidate set (members stay removable), whitelist forces
    members that are never tested, blacklist excludes nodes from every test.
    markov_blanket, when given, restricts the neighbour search to it.
    max_condition_size caps the subsets enumerated by the neighbour searches.
    """

    backend: str
    alpha: float = 0.01
    start: FrozenSet[str] = field(default_factory=frozenset)
    whitelist: FrozenSet[str] = field(default_factory=frozenset)
    blacklist: FrozenSet[str] = field(default_factory=frozenset)
    max_condition_size: Optional[int] = None
    markov_blanket: Optional[FrozenSet[str]] = None

    def __post_init__(self):
        for name in ("start", "whitelist", "blacklist"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.markov_blanket is not None:
            object.__setattr__(self, "markov_blanket", frozenset(self.markov_blanket))

        if self.backend not in BACKENDS:
            raise LocalLearnConfigError(
                f"Unknown backend `{self.backend}`; expected one of {list(BACKENDS)}."
            )
        if not 0.0 < self.alpha < 1.0:
            raise LocalLearnConfigError(f"alpha must lie in (0, 1), got {self.alpha}.")
        if self.max_condition_size is not None and self.max_condition_size < 0:
            raise LocalLearnConfigError("max_condition_size must be non-negative.")
        if self.whitelist & self.blacklist:
            raise LocalLearnConfigError(
                f"Nodes {sorted(self.whitelist & self.blacklist)} are both "
                "whitelisted and blacklisted."
            )
        if self.start & self.blacklist:
            raise LocalLearnConfigError(
                f"Nodes {sorted(self.start & self.blacklist)} are both in the start "
                "set and blacklisted."
            )

    def check_target(self, target: str, variables: Iterable[str]) -> None:
        variables = frozenset(variables)
        if target not in variables:
            raise LocalLearnConfigError(f"Unknown target `{target}`.")
        for name in ("start", "whitelist", "blacklist"):
            members = getattr(self, name)
            if target in members:
                raise LocalLearnConfigError(f"The target cannot be in the {name}.")
            unknown = members - variables
            if unknown:
                raise LocalLearnConfigError(
                    f"Unknown nodes {sorted(unknown)} in the {name}."
                )
