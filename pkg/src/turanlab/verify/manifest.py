"""Versioned grid manifest for the verification suite.

The manifest is a JSON file.  Axis values are either explicit lists or
``{"range": [start, stop, step]}`` objects, inclusive of ``stop``.  Its
SHA-256 digest is recorded in every report so runs are comparable.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

DEFAULT_NAME = "manifest.json"


def _default_bytes() -> bytes:
    return resources.files(__package__).joinpath(DEFAULT_NAME).read_bytes()


def manifest_bytes(path: Optional[str | Path] = None) -> bytes:
    """Raw bytes of a manifest file, or of the bundled default."""
    return _default_bytes() if path is None else Path(path).read_bytes()


def load_manifest(path: Optional[str | Path] = None) -> dict:
    """Parsed manifest with its digest under ``"sha256"``."""
    raw = manifest_bytes(path)
    m = json.loads(raw)
    m["sha256"] = hashlib.sha256(raw).hexdigest()
    return m


def expand_axis(spec) -> list:
    """List of floats of one axis.

    Ranges are built as start + k * step and rounded to 12 decimals so the
    grid does not depend on accumulated rounding.

    Examples
    --------
    >>> expand_axis({"range": [0.25, 1, 0.25]})
    [0.25, 0.5, 0.75, 1.0]
    >>> expand_axis([2, 1])
    [2.0, 1.0]
    """
    if isinstance(spec, dict):
        start, stop, step = (float(v) for v in spec["range"])
        n = int(round((stop - start) / step)) + 1
        return [float(v) for v in np.round(start + step * np.arange(n), 12)]
    return [float(v) for v in spec]


def expand_grid(grid: dict) -> list:
    """Cartesian product of the axes as a list of dicts, in sorted key order."""
    keys = sorted(grid)
    axes = [expand_axis(grid[k]) for k in keys]
    return [dict(zip(keys, vals)) for vals in itertools.product(*axes)]
