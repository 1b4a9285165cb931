"""JSON encoding of matrices: ``{"dim": d, "entries": [[re, im], ...]}`` row-major."""

from __future__ import annotations

import numpy as np

from .errors import FixtureError


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    d = M.shape[0]
    return {"dim": d, "entries": [[float(z.real), float(z.imag)] for z in M.reshape(-1)]}


def matrix_from_json(obj, location: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict):
        raise FixtureError("expected a matrix object", location)
    try:
        d = obj["dim"]
        entries = obj["entries"]
    except KeyError as exc:
        raise FixtureError(f"missing field {exc}", location) from exc
    if not isinstance(d, int) or d < 1:
        raise FixtureError(f"bad dim {d!r}", location)
    if not isinstance(entries, list) or len(entries) != d * d:
        n = len(entries) if isinstance(entries, list) else "?"
        raise FixtureError(f"expected {d * d} entries, got {n}", f"{location}.entries")
    out = np.empty(d * d, dtype=complex)
    for i, e in enumerate(entries):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, (int, float)) for v in e)):
            raise FixtureError(f"entry must be [re, im], got {e!r}", f"{location}.entries[{i}]")
        out[i] = complex(e[0], e[1])
    if not np.all(np.isfinite(out)):
        raise FixtureError("non-finite entry", f"{location}.entries")
    return out.reshape(d, d)


def matrices_from_json(objs, location: str) -> list[np.ndarray]:
    if not isinstance(objs, list):
        raise FixtureError("expected a list of matrices", location)
    return [matrix_from_json(o, f"{location}[{i}]") for i, o in enumerate(objs)]
