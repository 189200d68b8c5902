"""Phase-parallel execution of per-node and per-triple tasks.

A phase maps a pure task function over an ordered list of items. Each worker
lane owns a private test engine (spawned from the coordinator's engine), so
test counts are collected without sharing mutable state. Results are always
returned in item order, whatever order the workers finish in.
"""

import logging
import multiprocessing
import os
import threading
import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor, wait
from dataclasses import dataclass
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    List,
    Mapping,
    NamedTuple,
    Sequence,
    Tuple,
)

from django.conf import settings

from bnsl_citest.engines import CiTest

from .exceptions import ExecutorError, PhaseError, TaskFailed

logger = logging.getLogger(__name__)

STATIC = "static"
DYNAMIC = "dynamic"
SCHEDULES = (STATIC, DYNAMIC)

PROCESS = "process"
THREAD = "thread"
BACKENDS = (PROCESS, THREAD)

TaskFn = Callable[[Hashable, CiTest], Any]


@dataclass(frozen=True)
class TaskBatch:
    items: Tuple[Hashable, ...]
    assignment: Tuple[range, ...]

    def worker_items(self, worker: int) -> Tuple[Hashable, ...]:
        span = self.assignment[worker]
        return self.items[span.start : span.stop]


def partition(items: Sequence[Hashable], k: int) -> TaskBatch:
    """Contiguous balanced ranges; the first len(items) % k get one extra item."""
    if k < 1:
        raise ExecutorError(f"At least one worker is needed, got {k}.")
    items = tuple(items)
    size, extra = divmod(len(items), k)
    assignment, start = [], 0
    for worker in range(k):
        stop = start + size + (1 if worker < extra else 0)
        assignment.append(range(start, stop))
        start = stop
    return TaskBatch(items, tuple(assignment))


@dataclass(frozen=True)
class WorkerReport:
    worker: int
    results: Tuple[Tuple[Hashable, Any], ...]
    test_count: int


@dataclass(frozen=True)
class PhaseOutcome:
    name: str
    items: Tuple[Hashable, ...]
    results: Tuple[Any, ...]
    reports: Tuple[WorkerReport, ...]
    seconds: float

    @property
    def total_tests(self) -> int:
        return sum(report.test_count for report in self.reports)

    @property
    def per_worker_tests(self) -> List[int]:
        return [report.test_count for report in self.reports]

    def as_mapping(self) -> Dict[Hashable, Any]:
        return dict(zip(self.items, self.results))


# One lane per worker thread or worker process, installed by the pool initializer.
_lane = threading.local()


def _install_lane(task_fn: TaskFn, test: CiTest) -> None:
    _lane.task_fn = task_fn
    _lane.test = test.spawn()


def _lane_id() -> Tuple[int, int]:
    return os.getpid(), threading.get_ident()


def _run_items(items: Sequence[Hashable]) -> Tuple[List[Tuple[Hashable, Any]], int]:
    before = _lane.test.counter.count
    results = []
    for item in items:
        try:
            results.append((item, _lane.task_fn(item, _lane.test)))
        except Exception as exc:
            raise TaskFailed(item, f"{type(exc).__name__}: {exc}") from exc
    return results, _lane.test.counter.count - before


def _run_range(worker: int, items: Sequence[Hashable]):
    results, count = _run_items(items)
    return worker, results, count


def _run_one(item: Hashable):
    results, count = _run_items((item,))
    return _lane_id(), results, count


def _fork_context():
    if "fork" in multiprocessing.get_all_start_methods():
        return multiprocessing.get_context("fork")
    return None


def run_phase(
    batch: TaskBatch,
    task_fn: TaskFn,
    k: int,
    test: CiTest,
    schedule: str = STATIC,
    backend: str = THREAD,
    name: str = "phase",
) -> List[WorkerReport]:
    """Runs task_fn over every item of batch and reports per worker.

    With k = 1 the items run inline on the calling thread. A failing task
    lets every other submitted task finish before the phase is aborted.
    """
    log_prefix = f"Phase_{name}: "
    if k < 1:
        raise ExecutorError(f"At least one worker is needed, got {k}.")
    if schedule not in SCHEDULES:
        raise ExecutorError(f"Unknown schedule `{schedule}`.")
    if backend not in BACKENDS:
        raise ExecutorError(f"Unknown executor backend `{backend}`.")

    if k == 1:
        _install_lane(task_fn, test)
        try:
            results, count = _run_items(batch.items)
        except TaskFailed as exc:
            raise PhaseError(name, exc.task) from exc
        return [WorkerReport(0, tuple(results), count)]

    context = _fork_context() if backend == PROCESS else None
    if backend == PROCESS and context is None:
        logger.warning(log_prefix + "fork is unavailable, running on threads instead.")

    if context is not None:
        pool = ProcessPoolExecutor(
            max_workers=k,
            mp_context=context,
            initializer=_install_lane,
            initargs=(task_fn, test),
        )
    else:
        pool = ThreadPoolExecutor(
            max_workers=k, initializer=_install_lane, initargs=(task_fn, test)
        )

    with pool:
        if schedule == STATIC:
            futures = {}
            for worker, span in enumerate(batch.assignment):
                if len(span):
                    job = pool.submit(_run_range, worker, batch.worker_items(worker))
                    futures[job] = batch.items[span.start]
        else:
            futures = {pool.submit(_run_one, item): item for item in batch.items}
        wait(futures)

    failures = []
    for future, item in futures.items():
        exc = future.exception()
        if exc is not None:
            task = exc.task if isinstance(exc, TaskFailed) else item
            failures.append((batch.items.index(task), task, exc))
    if failures:
        _, task, exc = min(failures, key=lambda failure: failure[0])
        logger.error(log_prefix + f"task `{task}` failed: {exc}")
        raise PhaseError(name, task) from exc

    outputs = [future.result() for future in futures]
    if schedule == STATIC:
        reports = {worker: WorkerReport(worker, (), 0) for worker in range(k)}
        for worker, results, count in outputs:
            reports[worker] = WorkerReport(worker, tuple(results), count)
        return [reports[worker] for worker in range(k)]

    lanes: Dict[Any, Tuple[list, int]] = {}
    for lane, results, count in outputs:
        collected, total = lanes.get(lane, ([], 0))
        lanes[lane] = (collected + results, total + count)
    order = {item: index for index, item in enumerate(batch.items)}
    reports = []
    for worker, lane in enumerate(sorted(lanes)):
        results, count = lanes[lane]
        results.sort(key=lambda pair: order[pair[0]])
        reports.append(WorkerReport(worker, tuple(results), count))
    reports.extend(WorkerReport(worker, (), 0) for worker in range(len(reports), k))
    return reports


class NormalizedTime(NamedTuple):
    ratio: float
    overhead: float


def normalized_running_time(times: Mapping[int, float]) -> Dict[int, NormalizedTime]:
    """ratio(k) = time(k) / time(1); overhead(k) = ratio(k) - 1/k."""
    if 1 not in times:
        raise ExecutorError("A single-worker baseline is needed to normalise times.")
    if times[1] <= 0:
        raise ExecutorError("The single-worker baseline must take a positive time.")
    normalized = {}
    for k in sorted(times):
        ratio = 1.0 if k == 1 else times[k] / times[1]
        normalized[k] = NormalizedTime(ratio, 0.0 if k == 1 else ratio - 1.0 / k)
    return normalized


class ParallelExecutor:
    """Runs learning phases on a fixed number of worker lanes."""

    def __init__(
        self, workers: int = 1, schedule: str = STATIC, backend: str = PROCESS
    ):
        if workers < 1:
            raise ExecutorError(f"At least one worker is needed, got {workers}.")
        if schedule not in SCHEDULES:
            raise ExecutorError(
                f"Unknown schedule `{schedule}`; expected one of {list(SCHEDULES)}."
            )
        if backend not in BACKENDS:
            raise ExecutorError(
                f"Unknown executor backend `{backend}`; "
                f"expected one of {list(BACKENDS)}."
            )
        self.workers = workers
        self.schedule = schedule
        self.backend = backend

    @classmethod
    def from_settings(cls, **overrides) -> "ParallelExecutor":
        options = {
            "workers": settings.BNSL_WORKERS,
            "schedule": settings.BNSL_SCHEDULE,
            "backend": settings.BNSL_EXECUTOR_BACKEND,
        }
        options.update(
            {key: value for key, value in overrides.items() if value is not None}
        )
        return cls(**options)

    def run_phase(
        self, name: str, items: Sequence[Hashable], task_fn: TaskFn, test: CiTest
    ) -> PhaseOutcome:
        """Maps task_fn over items (expected in canonical order)."""
        batch = partition(items, self.workers)
        started = time.perf_counter()
        reports = run_phase(
            batch, task_fn, self.workers, test, self.schedule, self.backend, name
        )
        seconds = time.perf_counter() - started

        merged = {}
        for report in reports:
            merged.update(report.results)
        outcome = PhaseOutcome(
            name,
            batch.items,
            tuple(merged[item] for item in batch.items),
            tuple(reports),
            seconds,
        )
        logger.info(
            f"Phase_{name}: {len(batch.items)} tasks on {self.workers} workers "
            f"({self.schedule}) in {seconds:.3f}s, {outcome.total_tests} tests."
        )
        return outcome

    def __repr__(self):
        return (
            f"ParallelExecutor(workers={self.workers}, schedule={self.schedule!r}, "
            f"backend={self.backend!r})"
        )
