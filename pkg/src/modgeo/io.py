"""JSON/CSV serialization for matrices, paths and reports."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import ModgeoError


class ParseError(ModgeoError):
    pass


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"dim": M.shape[0],
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in M]}


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"dim": n, "entries": [[[re, im], ...], ...]}`` (row-major)."""
    try:
        n = int(obj["dim"])
        rows = obj["entries"]
        M = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix object: {exc}") from exc
    if M.shape != (n, n):
        raise ParseError(f"entries have shape {M.shape}, expected ({n}, {n})")
    return M


def read_matrix(path) -> np.ndarray:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return matrix_from_json(obj)


def write_matrix(path, M) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)))


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def dump_json(path, obj) -> None:
    # sort_keys and fixed separators keep the output byte-stable
    Path(path).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def write_path_csv(path, records: list[dict]) -> None:
    if not records:
        Path(path).write_text("")
        return
    n = len(records[0]["eigenvalues"])
    header = ["s", "zeta", "log_affinity_residual", "tangent_residual"] + [f"eig_{i}" for i in range(n)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in records:
            w.writerow([repr(r["s"]), repr(r["zeta"]), repr(r["log_affinity_residual"]),
                        repr(r["tangent_residual"])] + [repr(e) for e in r["eigenvalues"]])
