import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

from bnsl_citest.engines import CiTest, build_test
from bnsl_data.datasets import Dataset
from bnsl_graph.equivalence import apply_meek_rules
from bnsl_graph.graphs import Pdag, Skeleton, VStructure
from bnsl_local.sepsets import SepsetTable
from bnsl_parallel.executor import ParallelExecutor, PhaseOutcome

from .config import GlobalLearnConfig
from .orientation import V_STRUCTURES, orient_v_structures
from .skeleton import learn_skeleton

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LearningRun:
    cfg: GlobalLearnConfig
    cpdag: Pdag
    skeleton: Skeleton
    sepsets: SepsetTable
    v_structures: Tuple[VStructure, ...]
    conflicts: int
    unresolved: Tuple[Tuple[str, str], ...]
    phases: Tuple[PhaseOutcome, ...]
    seconds: float

    @property
    def total_tests(self) -> int:
        return sum(phase.total_tests for phase in self.phases)

    @property
    def skeleton_tests(self) -> int:
        return sum(
            phase.total_tests for phase in self.phases if phase.name != V_STRUCTURES
        )

    @property
    def per_worker_tests(self) -> List[int]:
        """Tests per worker index, summed over the phases."""
        counts = [0] * max(len(phase.reports) for phase in self.phases)
        for phase in self.phases:
            for report in phase.reports:
                counts[report.worker] += report.test_count
        return counts

    def telemetry(self) -> List[dict]:
        lines = [
            {
                "event": "phase",
                "phase": phase.name,
                "tasks": len(phase.items),
                "seconds": phase.seconds,
                "tests": phase.total_tests,
                "per_worker_tests": phase.per_worker_tests,
            }
            for phase in self.phases
        ]
        lines.append(
            {
                "event": "run",
                "algorithm": self.cfg.algorithm,
                "test": self.cfg.test,
                "alpha": self.cfg.alpha,
                "backtracking": self.cfg.backtracking,
                "workers": len(self.per_worker_tests),
                "seconds": self.seconds,
                "tests": self.total_tests,
                "per_worker_tests": self.per_worker_tests,
                "edges": len(self.skeleton.edges),
                "v_structures": len(self.v_structures),
                "conflicts": self.conflicts,
                "unresolved": len(self.unresolved),
            }
        )
        return lines


def learn_structure(
    data: Optional[Dataset],
    cfg: GlobalLearnConfig,
    executor: Optional[ParallelExecutor] = None,
    test: Optional[CiTest] = None,
) -> LearningRun:
    """Skeleton, v-structures and Meek propagation, with phase telemetry.

    Orientation propagation runs on the calling thread once every parallel
    phase has been merged.
    """
    started = time.perf_counter()
    if test is None:
        test = build_test(cfg.test, data, cfg.alpha)
    executor = executor or cfg.executor()

    skeleton, sepsets, phases = learn_skeleton(data, cfg, executor, test)
    search = orient_v_structures(
        skeleton, sepsets, data, test, executor, cfg.max_condition_size
    )
    cpdag = apply_meek_rules(search.pdag)
    seconds = time.perf_counter() - started

    run = LearningRun(
        cfg=cfg,
        cpdag=cpdag,
        skeleton=skeleton,
        sepsets=sepsets,
        v_structures=search.v_structures,
        conflicts=search.conflicts,
        unresolved=search.unresolved,
        phases=phases + (search.phase,),
        seconds=seconds,
    )
    logger.info(
        f"Learned {cfg.algorithm} structure: {len(skeleton.edges)} edges, "
        f"{len(run.v_structures)} v-structures, {run.total_tests} tests "
        f"in {seconds:.3f}s."
    )
    return run


def learn_cpdag(
    data: Optional[Dataset],
    cfg: GlobalLearnConfig,
    executor: Optional[ParallelExecutor] = None,
    test: Optional[CiTest] = None,
) -> Pdag:
    return learn_structure(data, cfg, executor, test).cpdag
