"""JSON file format for modules and reports.

Matrices are ``{"rows": r, "cols": c, "entries": [...]}`` with entries
row-major in canonical field form (least nonnegative residue, or an
integer / ``"a/b"`` string over the rationals).  Output is written with
sorted keys and a trailing newline so that round trips are byte-exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .exactlin import FieldSpec
from .fimod import InvalidModule, TruncatedFIModule

FORMAT_VERSION = 1


def matrix_to_json(m: np.ndarray, field: FieldSpec) -> dict:
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]),
            "entries": [field.canonical(x) for x in m.reshape(-1)]}


def matrix_from_json(d: dict, field: FieldSpec) -> np.ndarray:
    r, c = int(d["rows"]), int(d["cols"])
    entries = d["entries"]
    if len(entries) != r * c:
        raise InvalidModule(f"matrix of shape {r}x{c} has {len(entries)} entries")
    vals = [field.parse(x) for x in entries]
    rows = [vals[i * c:(i + 1) * c] for i in range(r)]
    return field.matrix(rows, r, c)


def module_to_json(v: TruncatedFIModule) -> dict:
    F = v.field
    out = {
        "format": FORMAT_VERSION,
        "field": F.to_json(),
        "horizon": v.horizon,
        "dims": list(v.dims),
        "actions": [[matrix_to_json(a, F) for a in acts] for acts in v.actions],
        "inclusions": [matrix_to_json(m, F) for m in v.inclusions],
        "gen_bound": v.gen_bound,
        "rel_bound": v.rel_bound,
    }
    if v.name:
        out["name"] = v.name
    if v.provenance:
        out["provenance"] = v.provenance
    return out


def module_from_json(d: dict) -> TruncatedFIModule:
    F = FieldSpec.from_json(d["field"])
    dims = tuple(int(x) for x in d["dims"])
    if "horizon" in d and int(d["horizon"]) != len(dims) - 1:
        raise InvalidModule(f"horizon {d['horizon']} does not match {len(dims)} dims")
    actions = tuple(tuple(matrix_from_json(a, F) for a in acts) for acts in d["actions"])
    incl = tuple(matrix_from_json(m, F) for m in d["inclusions"])
    for n, acts in enumerate(actions):
        if len(acts) != max(n - 1, 0):
            raise InvalidModule(f"degree {n} needs {max(n - 1, 0)} transpositions, got {len(acts)}")
        for a in acts:
            if a.shape != (dims[n], dims[n]):
                raise InvalidModule(f"action at degree {n} has shape {a.shape}")
    for n, m in enumerate(incl):
        if m.shape != (dims[n + 1], dims[n]):
            raise InvalidModule(f"inclusion at degree {n} has shape {m.shape}")
    return TruncatedFIModule(F, dims, actions, incl, d.get("gen_bound"), d.get("rel_bound"),
                             d.get("name", ""), d.get("provenance", ""))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def save_module(v: TruncatedFIModule, path) -> None:
    Path(path).write_text(dumps(module_to_json(v)))


def load_module(path) -> TruncatedFIModule:
    return module_from_json(json.loads(Path(path).read_text()))
