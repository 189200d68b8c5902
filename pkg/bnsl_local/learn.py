from typing import Optional

from bnsl_citest.engines import CiTest
from bnsl_data.datasets import Dataset

from .blankets import learn_mb
from .config import BLANKET_BACKENDS, LocalLearnConfig
from .neighbours import learn_nbr
from .search import LocalResult


def learn_local(
    data: Optional[Dataset], target: str, cfg: LocalLearnConfig, test: CiTest
) -> LocalResult:
    if cfg.backend in BLANKET_BACKENDS:
        return learn_mb(data, target, cfg, test)
    return learn_nbr(data, target, cfg, test)


def local_result_to_json(
    target: str, cfg: LocalLearnConfig, result: LocalResult, tests: int
) -> dict:
    return {
        "target": target,
        "backend": cfg.backend,
        "nodes": sorted(result.nodes),
        "sepsets": result.sepsets.to_json(),
        "tests": tests,
    }
