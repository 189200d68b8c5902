"""Column-oriented observations.

Datasets are immutable: every column is a read-only numpy array, so workers
can share one instance without locking.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from .exceptions import DataModelError


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, copy=True)
    values.flags.writeable = False
    return values


def _check_names(names: Sequence[str]) -> None:
    if any(not name for name in names):
        raise DataModelError("Variable names must be non-empty.")
    if len(set(names)) != len(names):
        raise DataModelError("Variable names must be unique.")


@dataclass(frozen=True)
class DiscreteVariable:
    name: str
    levels: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if not self.levels:
            raise DataModelError(f"Variable `{self.name}` has no levels.")
        if len(set(self.levels)) != len(self.levels):
            raise DataModelError(f"Variable `{self.name}` has duplicate levels.")

    @property
    def cardinality(self) -> int:
        return len(self.levels)


class _Columns:
    columns: Tuple[np.ndarray, ...]

    @property
    def names(self) -> Tuple[str, ...]:
        raise NotImplementedError()

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {name: position for position, name in enumerate(self.names)}

    @property
    def n(self) -> int:
        return len(self.columns[0])

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise DataModelError(f"Unknown variable `{name}`.") from None

    def column(self, name: str) -> np.ndarray:
        return self.columns[self.index(name)]

    def _check_columns(self, dtype) -> None:
        if not self.columns:
            raise DataModelError("A dataset needs at least one variable.")
        lengths = {len(column) for column in self.columns}
        if len(lengths) != 1:
            raise DataModelError("All columns must have the same length.")
        if lengths.pop() < 1:
            raise DataModelError("A dataset needs at least one observation.")
        object.__setattr__(
            self,
            "columns",
            tuple(_frozen(np.asarray(column, dtype=dtype)) for column in self.columns),
        )


@dataclass(frozen=True, eq=False)
class DiscreteDataset(_Columns):
    variables: Tuple[DiscreteVariable, ...]
    columns: Tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        _check_names(self.names)
        if len(self.columns) != len(self.variables):
            raise DataModelError("One column is needed per variable.")
        self._check_columns(np.int64)
        for variable, column in zip(self.variables, self.columns):
            if column.min() < 0 or column.max() >= variable.cardinality:
                raise DataModelError(
                    f"Column `{variable.name}` holds a level index outside "
                    f"[0, {variable.cardinality})."
                )

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(variable.name for variable in self.variables)

    def variable(self, name: str) -> DiscreteVariable:
        return self.variables[self.index(name)]

    def cardinality(self, name: str) -> int:
        return self.variable(name).cardinality

    def labels(self, name: str) -> np.ndarray:
        levels = np.asarray(self.variable(name).levels, dtype=object)
        return levels[self.column(name)]

    def reversed(self) -> "DiscreteDataset":
        return DiscreteDataset(self.variables[::-1], self.columns[::-1])

    def __eq__(self, other):
        if not isinstance(other, DiscreteDataset):
            return NotImplemented
        return self.variables == other.variables and all(
            np.array_equal(a, b) for a, b in zip(self.columns, other.columns)
        )


@dataclass(frozen=True, eq=False)
class ContinuousDataset(_Columns):
    variable_names: Tuple[str, ...]
    columns: Tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "variable_names", tuple(self.variable_names))
        _check_names(self.names)
        if len(self.columns) != len(self.variable_names):
            raise DataModelError("One column is needed per variable.")
        self._check_columns(np.float64)
        for name, column in zip(self.variable_names, self.columns):
            if not np.all(np.isfinite(column)):
                raise DataModelError(
                    f"Column `{name}` holds missing or non-finite values."
                )

    @property
    def names(self) -> Tuple[str, ...]:
        return self.variable_names

    @cached_property
    def correlation(self) -> np.ndarray:
        """Pearson correlation matrix, computed once and shared by every test.

        Constant columns have no defined correlation and yield NaN entries.
        """
        with np.errstate(divide="ignore", invalid="ignore"):
            matrix = np.corrcoef(np.column_stack(self.columns), rowvar=False)
        matrix = np.atleast_2d(matrix)
        matrix.flags.writeable = False
        return matrix

    def reversed(self) -> "ContinuousDataset":
        return ContinuousDataset(self.variable_names[::-1], self.columns[::-1])

    def __eq__(self, other):
        if not isinstance(other, ContinuousDataset):
            return NotImplemented
        return self.variable_names == other.variable_names and all(
            np.array_equal(a, b) for a, b in zip(self.columns, other.columns)
        )


Dataset = Union[DiscreteDataset, ContinuousDataset]


def reverse_columns(data: Dataset) -> Dataset:
    return data.reversed()
