"""JSON wire formats for rings, algebras, endomorphisms and flat lifts."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import Algebra
from .coeff import ring_from_json
from .errors import DimensionMismatch, DomainError
from .liftkit import FlatLift, make_flat_lift


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc})") from None


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def algebra_to_json(A: Algebra) -> dict:
    R = A.ring
    sc = []
    for i in range(A.dim):
        for j in range(A.dim):
            val = [[int(k), R.element_to_json(c)] for k, c in enumerate(A.table[i, j]) if c]
            if val:
                sc.append({"i": i, "j": j, "val": val})
    out = {"dim": A.dim, "coeffs": R.descriptor(), "sc": sc, "labels": list(A.labels)}
    out["unit"] = None if A.unit is None else [R.element_to_json(c) for c in A.unit]
    return out


def algebra_from_json(obj: dict) -> Algebra:
    R = ring_from_json(obj["coeffs"])
    d = int(obj["dim"])
    T = R.zeros((d, d, d))
    for entry in obj.get("sc", []):
        i, j = int(entry["i"]), int(entry["j"])
        for k, c in entry["val"]:
            if not (0 <= i < d and 0 <= j < d and 0 <= int(k) < d):
                raise DimensionMismatch(f"structure constant index out of range: {(i, j, k)}")
            T[i, j, int(k)] = R.element_from_json(c)
    unit = obj.get("unit")
    if unit is not None:
        if len(unit) != d:
            raise DimensionMismatch("unit has the wrong length")
        unit = [R.element_from_json(c) for c in unit]
    return Algebra(R, T, unit, obj.get("labels"))


def endo_to_json(A: Algebra, f) -> dict:
    R = A.ring
    return {"matrix": [[R.element_to_json(c) for c in row] for row in np.asarray(f)]}


def endo_from_json(obj: dict, A: Algebra) -> np.ndarray:
    R = A.ring
    rows = obj["matrix"]
    if len(rows) != A.dim or any(len(r) != A.dim for r in rows):
        raise DimensionMismatch(f"endomorphism matrix must be {A.dim}x{A.dim}")
    return R.asarray([[R.element_from_json(c) for c in row] for row in rows])


def flat_lift_to_json(L: FlatLift) -> dict:
    return {"base": algebra_to_json(L.base), "lift": algebra_to_json(L.lift)}


def flat_lift_from_json(obj: dict) -> FlatLift:
    if "base" not in obj or "lift" not in obj:
        raise DomainError("a flat lift needs 'base' and 'lift' algebras")
    return make_flat_lift(algebra_from_json(obj["base"]), algebra_from_json(obj["lift"]))


def vector_to_json(R, v) -> list:
    return [R.element_to_json(c) for c in v]


def matrix_to_json(R, M) -> list:
    return [vector_to_json(R, row) for row in M]
