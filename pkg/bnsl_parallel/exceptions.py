from typing import Hashable

from bn_learning.exceptions import BnslError


class ExecutorError(BnslError):
    pass


class PhaseError(ExecutorError):
    def __init__(self, phase: str, task: Hashable):
        super().__init__(f"Phase `{phase}` failed on task `{task}`.")
        self.phase = phase
        self.task = task


class TaskFailed(Exception):
    """Raised inside a worker lane; carries the failing task across processes."""

    def __init__(self, task: Hashable, message: str):
        super().__init__(task, message)
        self.task = task
        self.message = message
