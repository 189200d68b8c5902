"""Order-sensitivity and scaling experiments.

Both protocols are seeded end to end: sample seeds are derived from the
experiment seed with numpy's SeedSequence, so every algorithm and mode sees
the same data and reruns produce identical rows (timings aside).
"""

import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, TextIO, Tuple, Union

import numpy as np
import pandas as pd

from bnsl_citest.engines import ORACLE, CiTest, OracleTest
from bnsl_data.csv_io import DISCRETE, read_dataset
from bnsl_data.datasets import Dataset
from bnsl_data.networks import DiscreteBn, nparams, sample
from bnsl_data.serializers import load_network
from bnsl_graph.metrics import hamming_skeleton
from bnsl_parallel.executor import (
    PROCESS,
    STATIC,
    ParallelExecutor,
    normalized_running_time,
)
from bnsl_structure.config import ALGORITHMS, NONE, START_SET, GlobalLearnConfig
from bnsl_structure.skeleton import SkeletonResult, learn_skeleton

from .exceptions import ExperimentError

logger = logging.getLogger(__name__)

MODES = (NONE, START_SET)

ORDER_COLUMNS = (
    "network",
    "algorithm",
    "ratio",
    "n",
    "rep",
    "mode",
    "hamming",
    "tests_original",
    "tests_reversed",
)
SCALING_COLUMNS = (
    "algorithm",
    "mode",
    "workers",
    "schedule",
    "rep",
    "seconds",
    "total_tests",
    "per_worker_tests",
    "mean_seconds",
    "median_seconds",
    "ratio",
    "overhead",
)


@dataclass(frozen=True)
class OrderExperimentSpec:
    network: str
    algorithms: Tuple[str, ...] = ALGORITHMS
    ratios: Tuple[float, ...] = (0.1, 0.2, 0.5, 1.0, 2.0, 5.0)
    repetitions: int = 20
    alpha: float = 0.01
    seed: int = 42
    test: str = "mi"

    def __post_init__(self):
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        object.__setattr__(self, "ratios", tuple(self.ratios))
        if any(ratio <= 0 for ratio in self.ratios):
            raise ExperimentError("Sample-size ratios must be positive.")
        if self.repetitions < 1:
            raise ExperimentError("At least one repetition is needed.")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ExperimentError(f"Unknown algorithms {sorted(unknown)}.")


@dataclass(frozen=True)
class ScalingExperimentSpec:
    dataset: Optional[str] = None
    network: Optional[str] = None
    n: Optional[int] = None
    kind: str = DISCRETE
    algorithm: str = "si-hiton-pc"
    workers: Tuple[int, ...] = (1, 2, 3, 4, 6, 8)
    repetitions: int = 10
    alpha: float = 0.01
    seed: int = 42
    test: str = "mi"
    schedule: str = STATIC
    backend: str = PROCESS

    def __post_init__(self):
        object.__setattr__(self, "workers", tuple(self.workers))
        if 1 not in self.workers:
            raise ExperimentError("Worker counts must include the 1-worker baseline.")
        if len(set(self.workers)) != len(self.workers) or min(self.workers) < 1:
            raise ExperimentError("Worker counts must be distinct and positive.")
        if self.repetitions < 1:
            raise ExperimentError("At least one repetition is needed.")
        if self.dataset is None and (self.network is None or self.n is None):
            raise ExperimentError(
                "A data set, or a network and a sample size, is needed."
            )


def sample_seed(seed: int, *path: int) -> int:
    """Independent child seed for one cell of an experiment grid."""
    return int(np.random.SeedSequence([seed, *path]).generate_state(1)[0])


def _oracle_or_none(test: str, bn: Optional[DiscreteBn]) -> Optional[CiTest]:
    if test != ORACLE:
        return None
    if bn is None:
        raise ExperimentError("The oracle test needs the generating network.")
    return OracleTest(bn.dag)


def _skeleton_tests(result: SkeletonResult) -> int:
    return sum(phase.total_tests for phase in result.phases)


def run_order_experiment(spec: OrderExperimentSpec) -> List[dict]:
    """Hamming distance between skeletons learned from original and reversed columns."""
    bn = load_network(spec.network)
    p = nparams(bn)
    name = Path(spec.network).stem
    executor = ParallelExecutor(1)
    oracle = _oracle_or_none(spec.test, bn)
    log_prefix = f"Order_{name}: "

    rows = []
    for ratio_index, ratio in enumerate(spec.ratios):
        n = round(ratio * p)
        if n < 1:
            raise ExperimentError(
                f"Ratio {ratio} gives no observations for a network with p = {p}."
            )
        for rep in range(spec.repetitions):
            data = sample(bn, n, sample_seed(spec.seed, ratio_index, rep))
            reversed_data = data.reversed()
            for algorithm in spec.algorithms:
                for mode in MODES:
                    cfg = GlobalLearnConfig(
                        algorithm, test=spec.test, alpha=spec.alpha, backtracking=mode
                    )
                    original = learn_skeleton(data, cfg, executor, oracle)
                    reversed_ = learn_skeleton(reversed_data, cfg, executor, oracle)
                    rows.append(
                        {
                            "network": name,
                            "algorithm": algorithm,
                            "ratio": ratio,
                            "n": n,
                            "rep": rep,
                            "mode": mode,
                            "hamming": hamming_skeleton(
                                original.skeleton, reversed_.skeleton
                            ),
                            "tests_original": _skeleton_tests(original),
                            "tests_reversed": _skeleton_tests(reversed_),
                        }
                    )
            logger.info(log_prefix + f"ratio {ratio} (n = {n}) repetition {rep} done.")
    return rows


def _scaling_data(spec: ScalingExperimentSpec, bn: Optional[DiscreteBn]) -> Dataset:
    if spec.dataset is not None:
        return read_dataset(spec.dataset, spec.kind, network=bn)
    return sample(bn, spec.n, sample_seed(spec.seed))


def run_scaling_experiment(spec: ScalingExperimentSpec) -> List[dict]:
    """Skeleton learning wall time for every worker count, plus start-set on one worker.

    The 1-worker run without backtracking is the baseline for ratio and
    overhead; mean and median are taken over the repetitions.
    """
    bn = load_network(spec.network) if spec.network else None
    oracle = _oracle_or_none(spec.test, bn)
    data = _scaling_data(spec, bn)
    workers = sorted(spec.workers)
    configurations = [(NONE, k) for k in workers] + [(START_SET, 1)]

    rows = []
    for rep in range(spec.repetitions):
        for mode, k in configurations:
            cfg = GlobalLearnConfig(
                spec.algorithm,
                test=spec.test,
                alpha=spec.alpha,
                backtracking=mode,
                workers=k,
                schedule=spec.schedule,
            )
            executor = ParallelExecutor(k, spec.schedule, spec.backend)
            started = time.perf_counter()
            result = learn_skeleton(data, cfg, executor, oracle)
            seconds = time.perf_counter() - started

            per_worker = [0] * k
            for phase in result.phases:
                for report in phase.reports:
                    per_worker[report.worker] += report.test_count
            rows.append(
                {
                    "algorithm": spec.algorithm,
                    "mode": mode,
                    "workers": k,
                    "schedule": spec.schedule,
                    "rep": rep,
                    "seconds": seconds,
                    "total_tests": sum(per_worker),
                    "per_worker_tests": ";".join(str(count) for count in per_worker),
                }
            )
            logger.info(
                f"Scaling_{spec.algorithm}: mode {mode}, {k} worker(s), "
                f"repetition {rep}: {seconds:.3f}s."
            )

    return _with_normalized_times(rows)


def _with_normalized_times(rows: List[dict]) -> List[dict]:
    frame = pd.DataFrame(rows)
    grouped = frame.groupby(["mode", "workers"])["seconds"]
    frame["mean_seconds"] = grouped.transform("mean")
    frame["median_seconds"] = grouped.transform("median")

    baseline = frame[frame["mode"] == NONE]
    means = baseline.groupby("workers")["seconds"].mean().to_dict()
    normalized = normalized_running_time(means)
    start_set_ratio = (
        frame.loc[frame["mode"] == START_SET, "seconds"].mean() / means[1]
    )

    def ratio(row):
        if row["mode"] == NONE:
            return normalized[row["workers"]].ratio
        return start_set_ratio

    frame["ratio"] = frame.apply(ratio, axis=1)
    frame["overhead"] = frame["ratio"] - 1.0 / frame["workers"]
    frame.loc[(frame["mode"] == NONE) & (frame["workers"] == 1), "overhead"] = 0.0
    return frame[list(SCALING_COLUMNS)].to_dict("records")


def write_rows(rows: List[dict], columns, path: Union[str, Path, TextIO]) -> None:
    pd.DataFrame(rows, columns=list(columns)).to_csv(
        path, index=False, float_format="%.10g"
    )


def read_rows(path: Union[str, Path]) -> List[dict]:
    try:
        frame = pd.read_csv(path, dtype={"per_worker_tests": str})
    except (OSError, pd.errors.ParserError) as exc:
        raise ExperimentError(f"Cannot read results `{path}`: {exc}") from exc
    return frame.to_dict("records")
