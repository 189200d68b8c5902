from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from .datasets import ContinuousDataset, Dataset, DiscreteDataset, DiscreteVariable
from .exceptions import DataModelError
from .networks import DiscreteBn

DISCRETE = "discrete"
CONTINUOUS = "continuous"


def _read_frame(path: Union[str, Path], **kwargs) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, encoding="utf-8", **kwargs)
    except (OSError, ValueError) as exc:
        raise DataModelError(f"Cannot read data file `{path}`: {exc}") from exc

    if frame.empty:
        raise DataModelError(f"Data file `{path}` holds no observations.")
    missing = [str(name) for name in frame.columns[frame.isna().any()]]
    if missing:
        raise DataModelError(f"Missing values in column(s) {missing}.")
    return frame


def read_dataset(
    path: Union[str, Path],
    kind: str = DISCRETE,
    network: Optional[DiscreteBn] = None,
) -> Dataset:
    """Load a CSV whose first row holds the variable names.

    Discrete level order follows the network when one is given, otherwise the
    sorted labels observed in each column.
    """
    if kind == CONTINUOUS:
        frame = _read_frame(path)
        try:
            frame = frame.astype(np.float64)
        except ValueError as exc:
            raise DataModelError(f"Non-numeric cell in `{path}`: {exc}") from exc
        return ContinuousDataset(
            tuple(str(name) for name in frame.columns),
            tuple(frame[name].to_numpy() for name in frame.columns),
        )

    if kind != DISCRETE:
        raise DataModelError(f"Unknown data kind `{kind}`.")

    # only empty cells are missing; labels such as "NA" are ordinary levels
    frame = _read_frame(path, dtype=str, keep_default_na=False, na_values=[""])
    variables, columns = [], []
    for name in frame.columns:
        labels = frame[name].to_numpy()
        if network is not None:
            levels = network.variable(str(name)).levels
        else:
            levels = tuple(sorted(set(labels)))
        lookup = {level: index for index, level in enumerate(levels)}
        unknown = sorted(set(labels) - set(lookup))
        if unknown:
            raise DataModelError(f"Unknown level(s) {unknown} in column `{name}`.")
        variables.append(DiscreteVariable(str(name), levels))
        columns.append(np.fromiter((lookup[label] for label in labels), np.int64))

    return DiscreteDataset(tuple(variables), tuple(columns))


def write_dataset(data: Dataset, path: Union[str, Path]) -> None:
    if isinstance(data, DiscreteDataset):
        frame = pd.DataFrame({name: data.labels(name) for name in data.names})
    else:
        frame = pd.DataFrame({name: data.column(name) for name in data.names})
    frame.to_csv(path, index=False, encoding="utf-8")
