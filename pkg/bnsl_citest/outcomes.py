from dataclasses import dataclass, field
from typing import FrozenSet

DEGENERATE = "degenerate"
RIDGE = "ridge"
PERFECT = "perfect"


@dataclass(frozen=True)
class TestOutcome:
    __test__ = False

    statistic: float
    dof: float
    p_value: float
    independent: bool
    flags: FrozenSet[str] = field(default_factory=frozenset)

    @classmethod
    def decide(
        cls, statistic: float, dof: float, p_value: float, alpha: float, flags=()
    ) -> "TestOutcome":
        p_value = min(max(float(p_value), 0.0), 1.0)
        return cls(float(statistic), dof, p_value, p_value > alpha, frozenset(flags))

    @classmethod
    def vacuous(cls, dof: float = 0) -> "TestOutcome":
        """No evidence of dependence can come from a test that cannot be run."""
        return cls(0.0, dof, 1.0, True, frozenset({DEGENERATE}))


class TestCounter:
    __test__ = False

    def __init__(self):
        self.count = 0

    def increment(self) -> None:
        self.count += 1

    def reset(self) -> None:
        self.count = 0
