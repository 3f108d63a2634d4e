"""Wire formats: matrix JSON, tolerance config, deterministic report dumps.

Matrix format, shared by every command and report:
``{"rows": n, "cols": m, "data": [[re, im], ...]}`` with ``data`` row-major.
Parsers reject non-finite entries.
"""

from __future__ import annotations

import json
import math
from typing import Optional

import numpy as np

from .linalg import Tolerance

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "tolerance_from_json",
    "tolerance_to_json",
    "dump_json",
]


def matrix_to_json(m) -> dict:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got ndim={a.ndim}")
    data = [[float(x.real), float(x.imag)] for x in a.reshape(-1)]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": data}


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != rows * cols:
        raise ValueError(f"data length {len(data)} != rows*cols = {rows * cols}")
    flat = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(data):
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError(f"non-finite entry at index {i}")
        flat[i] = complex(re, im)
    return flat.reshape(rows, cols)


def tolerance_to_json(tol: Tolerance) -> dict:
    return {"abs": tol.abs, "rel": tol.rel, "rank_cutoff": tol.rank_cutoff}


def tolerance_from_json(obj: Optional[dict], dim: int = 1) -> Tolerance:
    if obj is None:
        return Tolerance.for_dim(dim)
    base = Tolerance.for_dim(dim)
    return Tolerance(
        abs=float(obj.get("abs", base.abs)),
        rel=float(obj.get("rel", base.rel)),
        rank_cutoff=float(obj.get("rank_cutoff", base.rank_cutoff)),
    )


def dump_json(obj, path: str) -> None:
    """Write canonical JSON: sorted keys, fixed layout, trailing newline.

    Identical inputs produce byte-identical files, which the campaign
    determinism contract relies on.
    """
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")
