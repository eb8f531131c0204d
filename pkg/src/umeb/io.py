"""JSON files for candidates and density matrices.

Matrices are stored row-major as lists of ``[re, im]`` pairs::

    {"d": 2, "n": 3, "members": [[[1, 0], [0, 0], [0, 0], [1, 0]], ...]}

A density matrix file instead carries ``{"d": d, "rho": [...]}`` with ``d*d``
rows and columns, flattened the same way.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .constructions import UmebCandidate


class FormatError(ValueError):
    pass


def matrix_to_json(m: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(m, dtype=complex).ravel()]


def matrix_from_json(entries, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    try:
        flat = np.array([complex(float(re), float(im)) for re, im in entries])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"entries must be [re, im] pairs: {exc}") from None
    if flat.size != rows * cols:
        raise FormatError(f"expected {rows * cols} entries, got {flat.size}")
    if not np.all(np.isfinite(flat)):
        raise FormatError("non-finite entry")
    return flat.reshape(rows, cols)


def candidate_to_json(candidate: UmebCandidate) -> dict:
    return {
        "d": candidate.d,
        "n": candidate.n,
        "label": candidate.label,
        "members": [matrix_to_json(u) for u in candidate.members],
    }


def _load(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict) or "d" not in data:
        raise FormatError(f"{path}: expected an object with a 'd' field")
    return data


def parse_members(data: dict) -> tuple[int, list[np.ndarray]]:
    d = data["d"]
    if not isinstance(d, int) or d < 2:
        raise FormatError(f"'d' must be an integer >= 2, got {d!r}")
    members = data.get("members")
    if not isinstance(members, list) or not members:
        raise FormatError("'members' must be a non-empty list")
    if "n" in data and data["n"] != len(members):
        raise FormatError(f"'n' = {data['n']} but {len(members)} members given")
    return d, [matrix_from_json(m, d) for m in members]


def read_file(path) -> dict:
    """Parse a candidate or density-matrix file.

    Returns ``{"d": d, "members": [...]}`` or ``{"d": d, "rho": array}``.
    Shape problems raise :class:`FormatError`; whether the members form a
    valid candidate is left to the caller.
    """
    data = _load(path)
    if "rho" in data:
        d = data["d"]
        if not isinstance(d, int) or d < 2:
            raise FormatError(f"'d' must be an integer >= 2, got {d!r}")
        return {"d": d, "rho": matrix_from_json(data["rho"], d * d)}
    d, members = parse_members(data)
    return {"d": d, "members": members, "label": str(data.get("label", Path(path).stem))}


def write_candidate(candidate: UmebCandidate, path) -> None:
    Path(path).write_text(json.dumps(candidate_to_json(candidate), indent=2) + "\n")


def write_density(rho: np.ndarray, path) -> None:
    d = int(round(np.sqrt(rho.shape[0])))
    Path(path).write_text(json.dumps({"d": d, "rho": matrix_to_json(rho)}, indent=2) + "\n")
