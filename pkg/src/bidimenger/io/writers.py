"""Output file writing utilities."""

import json
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd


class NumpyEncoder(json.JSONEncoder):
    """JSON encoder that turns numpy scalars and arrays into plain Python values."""

    def default(self, obj):
        if isinstance(obj, (np.integer,)):
            return int(obj)
        if isinstance(obj, (np.floating,)):
            return float(obj)
        if isinstance(obj, (np.bool_,)):
            return bool(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        return super().default(obj)


def save_dataframe(df: pd.DataFrame, path: Path) -> None:
    """Save DataFrame to a CSV file, creating parent dirs as needed.

    Callers that accept user input are responsible for validating *path*
    before calling this function (the sweep runner passes names through
    :func:`bidimenger.sanitize.sanitize_filename`).
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)


def save_json(payload: Any, path: Path) -> None:
    """Write ``payload`` as indented JSON with sorted keys."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True, cls=NumpyEncoder)
        f.write("\n")
