"""Conditional independence tests.

Every test orders (x, y) and the conditioning set canonically before
computing anything, so swapping x and y returns the identical outcome.
"""

import logging
import math
from abc import ABC, abstractmethod
from math import prod
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from bnsl_data.datasets import ContinuousDataset, Dataset, DiscreteDataset
from bnsl_graph.exceptions import GraphError
from bnsl_graph.graphs import Dag
from bnsl_graph.separation import d_separated

from .exceptions import CiTestError
from .outcomes import PERFECT, RIDGE, TestCounter, TestOutcome

logger = logging.getLogger(__name__)

RIDGE_PENALTY = 1e-12
PERFECT_TOLERANCE = 1e-12

MI = "mi"
COR = "cor"
ORACLE = "oracle"
TEST_NAMES = (MI, COR, ORACLE)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise CiTestError(f"alpha must lie in (0, 1), got {alpha}.")


def _canonical_query(
    names: Sequence[str], x: str, y: str, z: Iterable[str]
) -> Tuple[str, str, Tuple[str, ...]]:
    z = tuple(sorted(set(z)))
    known = set(names)
    for name in (x, y, *z):
        if name not in known:
            raise CiTestError(f"Unknown variable `{name}`.")
    if x == y:
        raise CiTestError("A test needs two distinct variables.")
    if x in z or y in z:
        raise CiTestError("The conditioning set must not contain the tested variables.")
    x, y = sorted((x, y))
    return x, y, z


def contingency_table(
    data: DiscreteDataset, x: str, y: str, z: Sequence[str]
) -> np.ndarray:
    """Counts with shape (observed strata of z, levels of x, levels of y)."""
    cx, cy = data.cardinality(x), data.cardinality(y)
    if z:
        stratum = np.ravel_multi_index(
            tuple(data.column(name) for name in z),
            tuple(data.cardinality(name) for name in z),
        )
        # strata never observed contribute nothing, so only observed ones are kept
        _, stratum = np.unique(stratum, return_inverse=True)
        strata = int(stratum.max()) + 1
    else:
        stratum, strata = 0, 1

    cells = (stratum * cx + data.column(x)) * cy + data.column(y)
    counts = np.bincount(cells.ravel(), minlength=strata * cx * cy)
    return counts.reshape(strata, cx, cy).astype(np.float64)


def g2_statistic(counts: np.ndarray) -> float:
    """2 * sum O * ln(O / E), expected counts computed within each stratum."""
    totals = counts.sum(axis=(1, 2), keepdims=True)
    rows = counts.sum(axis=2, keepdims=True)
    columns = counts.sum(axis=1, keepdims=True)
    observed = counts > 0
    expected = (rows * columns / np.where(totals > 0, totals, 1.0))[observed]
    statistic = 2.0 * np.sum(counts[observed] * np.log(counts[observed] / expected))
    return max(float(statistic), 0.0)


def mi_test(
    data: DiscreteDataset,
    x: str,
    y: str,
    z: Iterable[str] = (),
    alpha: float = 0.01,
    counter: Optional[TestCounter] = None,
) -> TestOutcome:
    """Asymptotic chi-square mutual information (G^2) test."""
    _check_alpha(alpha)
    x, y, z = _canonical_query(data.names, x, y, z)

    dof = (
        (data.cardinality(x) - 1)
        * (data.cardinality(y) - 1)
        * prod(data.cardinality(name) for name in z)
    )
    if dof == 0:
        outcome = TestOutcome.vacuous(0)
    else:
        statistic = g2_statistic(contingency_table(data, x, y, z))
        outcome = TestOutcome.decide(
            statistic, dof, stats.chi2.sf(statistic, dof), alpha
        )

    if counter is not None:
        counter.increment()
    return outcome


def partial_correlation(correlation: np.ndarray) -> Tuple[float, bool]:
    """Partial correlation of the first two variables given the others.

    Returns the coefficient and whether a ridge had to be added to invert a
    singular matrix.
    """
    if len(correlation) == 2:
        return float(np.clip(correlation[0, 1], -1.0, 1.0)), False

    ridged = False
    if np.linalg.matrix_rank(correlation) < len(correlation):
        correlation = correlation + RIDGE_PENALTY * np.eye(len(correlation))
        ridged = True
    precision = np.linalg.inv(correlation)

    scale = precision[0, 0] * precision[1, 1]
    if not scale > 0:
        raise np.linalg.LinAlgError("Non-positive diagonal in the precision matrix.")
    return float(np.clip(-precision[0, 1] / math.sqrt(scale), -1.0, 1.0)), ridged


def cor_test(
    data: ContinuousDataset,
    x: str,
    y: str,
    z: Iterable[str] = (),
    alpha: float = 0.01,
    counter: Optional[TestCounter] = None,
) -> TestOutcome:
    """Exact Student's t test for (partial) correlation."""
    _check_alpha(alpha)
    x, y, z = _canonical_query(data.names, x, y, z)
    dof = data.n - len(z) - 2

    outcome = None
    if dof > 0:
        index = [data.index(name) for name in (x, y, *z)]
        correlation = data.correlation[np.ix_(index, index)]
        if np.all(np.isfinite(correlation)):
            try:
                r, ridged = partial_correlation(correlation)
            except np.linalg.LinAlgError:
                logger.warning(f"Test_{x}_{y}: correlation matrix cannot be inverted.")
            else:
                outcome = _t_outcome(r, dof, alpha, ridged)
                if ridged:
                    logger.warning(
                        f"Test_{x}_{y}: singular correlation matrix given {list(z)}, "
                        f"ridge of {RIDGE_PENALTY} applied."
                    )

    if outcome is None:
        outcome = TestOutcome.vacuous(dof)
    if counter is not None:
        counter.increment()
    return outcome


def _t_outcome(r: float, dof: int, alpha: float, ridged: bool) -> TestOutcome:
    flags = {RIDGE} if ridged else set()
    if abs(r) >= 1.0 - PERFECT_TOLERANCE:
        return TestOutcome(
            math.copysign(math.inf, r), dof, 0.0, False, frozenset(flags | {PERFECT})
        )
    statistic = r * math.sqrt(dof / (1.0 - r * r))
    p_value = 2.0 * stats.t.sf(abs(statistic), dof)
    return TestOutcome.decide(statistic, dof, p_value, alpha, flags)


def oracle_test(
    dag: Dag,
    x: str,
    y: str,
    z: Iterable[str] = (),
    counter: Optional[TestCounter] = None,
) -> TestOutcome:
    """Perfect test: independence holds exactly when z d-separates x and y."""
    x, y, z = _canonical_query(dag.nodes, x, y, z)
    try:
        separated = d_separated(dag, x, y, z)
    except GraphError as exc:
        raise CiTestError(str(exc)) from exc

    if counter is not None:
        counter.increment()
    return TestOutcome(0.0, 0, 1.0 if separated else 0.0, separated)


class CiTest(ABC):
    """A test engine bound to read-only data, owning a private counter."""

    name: str

    def __init__(self, alpha: float):
        _check_alpha(alpha)
        self.alpha = alpha
        self.counter = TestCounter()

    @property
    @abstractmethod
    def variables(self) -> Tuple[str, ...]:
        pass

    @abstractmethod
    def test(self, x: str, y: str, z: Iterable[str] = ()) -> TestOutcome:
        pass

    @abstractmethod
    def spawn(self) -> "CiTest":
        """A new engine over the same data with a fresh counter."""


class MutualInformationTest(CiTest):
    name = MI

    def __init__(self, data: DiscreteDataset, alpha: float = 0.01):
        super().__init__(alpha)
        self.data = data

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.data.names

    def test(self, x, y, z=()):
        return mi_test(self.data, x, y, z, self.alpha, self.counter)

    def spawn(self):
        return MutualInformationTest(self.data, self.alpha)


class CorrelationTest(CiTest):
    name = COR

    def __init__(self, data: ContinuousDataset, alpha: float = 0.01):
        super().__init__(alpha)
        self.data = data

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.data.names

    def test(self, x, y, z=()):
        return cor_test(self.data, x, y, z, self.alpha, self.counter)

    def spawn(self):
        return CorrelationTest(self.data, self.alpha)


class OracleTest(CiTest):
    name = ORACLE

    def __init__(self, dag: Dag, alpha: float = 0.01):
        super().__init__(alpha)
        self.dag = dag

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.dag.nodes

    def test(self, x, y, z=()):
        return oracle_test(self.dag, x, y, z, self.counter)

    def spawn(self):
        return OracleTest(self.dag, self.alpha)


def build_test(
    name: str,
    data: Optional[Dataset] = None,
    alpha: float = 0.01,
    dag: Optional[Dag] = None,
) -> CiTest:
    if name == MI:
        if not isinstance(data, DiscreteDataset):
            raise CiTestError("The mi test needs a discrete data set.")
        return MutualInformationTest(data, alpha)
    if name == COR:
        if not isinstance(data, ContinuousDataset):
            raise CiTestError("The cor test needs a continuous data set.")
        return CorrelationTest(data, alpha)
    if name == ORACLE:
        if dag is None:
            raise CiTestError("The oracle test needs the generating network.")
        return OracleTest(dag, alpha)
    raise CiTestError(f"Unknown test `{name}`; expected one of {list(TEST_NAMES)}.")
