from dataclasses import dataclass
from typing import Iterable, Optional

from bnsl_citest.engines import TEST_NAMES
from bnsl_local.config import (
    BLANKET_BACKENDS,
    GS,
    INTER_IAMB,
    MMPC,
    SI_HITON_PC,
    LocalLearnConfig,
)
from bnsl_parallel.executor import SCHEDULES, STATIC, ParallelExecutor

from .exceptions import LearnConfigError

ALGORITHMS = (GS, INTER_IAMB, MMPC, SI_HITON_PC)

NONE = "none"
START_SET = "start-set"
LEGACY = "legacy"
BACKTRACKING = (NONE, START_SET, LEGACY)


@dataclass(frozen=True)
class GlobalLearnConfig:
    algorithm: str
    test: str = "mi"
    alpha: float = 0.01
    backtracking: str = NONE
    workers: int = 1
    schedule: str = STATIC
    max_condition_size: Optional[int] = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise LearnConfigError(
                f"Unknown algorithm `{self.algorithm}`; "
                f"expected one of {list(ALGORITHMS)}."
            )
        if self.test not in TEST_NAMES:
            raise LearnConfigError(
                f"Unknown test `{self.test}`; expected one of {list(TEST_NAMES)}."
            )
        if not 0.0 < self.alpha < 1.0:
            raise LearnConfigError(f"alpha must lie in (0, 1), got {self.alpha}.")
        if self.backtracking not in BACKTRACKING:
            raise LearnConfigError(
                f"Unknown backtracking mode `{self.backtracking}`; "
                f"expected one of {list(BACKTRACKING)}."
            )
        if self.workers < 1:
            raise LearnConfigError(
                f"At least one worker is needed, got {self.workers}."
            )
        if self.schedule not in SCHEDULES:
            raise LearnConfigError(f"Unknown schedule `{self.schedule}`.")
        if self.max_condition_size is not None and self.max_condition_size < 0:
            raise LearnConfigError("max_condition_size must be non-negative.")
        if self.backtracking != NONE and self.workers != 1:
            raise LearnConfigError(
                "Backtracking processes nodes one after the other "
                "and needs workers = 1."
            )

    @property
    def uses_blankets(self) -> bool:
        return self.algorithm in BLANKET_BACKENDS

    def executor(self) -> ParallelExecutor:
        return ParallelExecutor.from_settings(
            workers=self.workers, schedule=self.schedule
        )

    def check_executor(self, executor: ParallelExecutor) -> None:
        if self.backtracking != NONE and executor.workers != 1:
            raise LearnConfigError(
                f"Backtracking mode `{self.backtracking}` cannot run on "
                f"{executor.workers} workers."
            )

    def local_config(
        self,
        start: Iterable[str] = (),
        whitelist: Iterable[str] = (),
        blacklist: Iterable[str] = (),
    ) -> LocalLearnConfig:
        return LocalLearnConfig(
            backend=self.algorithm,
            alpha=self.alpha,
            start=frozenset(start),
            whitelist=frozenset(whitelist),
            blacklist=frozenset(blacklist),
            max_condition_size=self.max_condition_size,
        )
