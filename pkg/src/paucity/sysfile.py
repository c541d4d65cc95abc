"""System files: a small JSON document describing one system.

Linear::

    {"kind": "linear", "k": 3, "rows": [[0, 1, 0], [0, 0, 1]]}

Non-linear, already in triangular shape::

    {"kind": "nonlinear", "k": 3, "degrees": [2, 3], "leading": [1, 1],
     "upsilons": [[{"coeff": 1, "exponents": [2]}], []]}

Every number must be a JSON integer; floats and booleans are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path

from .normalize import NonlinearSystem, NormalizedSystem, SymmetricSystem


class SystemFileError(ValueError):
    pass


def _int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SystemFileError(f"{what} must be an integer, got {v!r}")
    return v


def _int_list(v, what: str) -> list[int]:
    if not isinstance(v, list):
        raise SystemFileError(f"{what} must be a list")
    return [_int(e, what) for e in v]


def from_dict(doc: dict) -> SymmetricSystem | NonlinearSystem:
    if not isinstance(doc, dict):
        raise SystemFileError("a system file must hold a JSON object")
    kind = doc.get("kind")
    k = _int(doc.get("k"), "k")
    try:
        if kind == "linear":
            rows = doc.get("rows")
            if not isinstance(rows, list):
                raise SystemFileError("rows must be a list of integer lists")
            return SymmetricSystem(k, [_int_list(row, "rows") for row in rows])
        if kind == "nonlinear":
            upsilons = doc.get("upsilons")
            if not isinstance(upsilons, list):
                raise SystemFileError("upsilons must be a list of term lists")
            ups = []
            for terms in upsilons:
                if not isinstance(terms, list):
                    raise SystemFileError("each upsilon must be a list of terms")
                ups.append(tuple(
                    (_int(t.get("coeff"), "coeff"), tuple(_int_list(t.get("exponents"), "exponents")))
                    for t in terms
                ))
            return NonlinearSystem(
                k,
                tuple(_int_list(doc.get("degrees"), "degrees")),
                tuple(_int_list(doc.get("leading"), "leading")),
                tuple(ups),
            )
    except (AttributeError, TypeError) as exc:
        raise SystemFileError(f"malformed system file: {exc}") from exc
    raise SystemFileError(f"kind must be 'linear' or 'nonlinear', got {kind!r}")


def to_dict(system: SymmetricSystem | NormalizedSystem | NonlinearSystem) -> dict:
    if isinstance(system, NormalizedSystem):
        system = system.to_symmetric()
    if isinstance(system, SymmetricSystem):
        return {"kind": "linear", "k": system.k, "rows": [list(row) for row in system.rows]}
    return {
        "kind": "nonlinear",
        "k": system.k,
        "degrees": list(system.degrees),
        "leading": list(system.leading),
        "upsilons": [
            [{"coeff": c, "exponents": list(e)} for c, e in terms] for terms in system.upsilons
        ],
    }


def loads(text: str) -> SymmetricSystem | NonlinearSystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemFileError(f"not valid JSON: {exc}") from exc
    return from_dict(doc)


def dumps(system) -> str:
    """One top-level field per line, values compact."""
    doc = to_dict(system)
    body = ",\n".join(f"  {json.dumps(key)}: {json.dumps(val)}" for key, val in doc.items())
    return "{\n" + body + "\n}\n"


def load(path: str | Path) -> SymmetricSystem | NonlinearSystem:
    return loads(Path(path).read_text())


def save(system, path: str | Path) -> None:
    Path(path).write_text(dumps(system))
