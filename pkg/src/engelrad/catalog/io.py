"""Reading and writing Lie algebra and group files (canonical JSON)."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from ..errors import AntisymmetryViolation, JacobiViolation, SchemaError, ValidationError
from ..exactfield import FieldSpec, make_field
from ..fingroup.core import DEFAULT_ORDER_CAP, FiniteGroup
from ..liealg import LieAlgebra
from .groups import group_descriptor, group_from_descriptor


def lie_to_dict(L: LieAlgebra) -> dict:
    f = L.field
    rows = []
    for (i, j), row in sorted(L.table().items()):
        rows.append({"i": i, "j": j, "c": [{"k": k, "v": f.format(v)} for k, v in sorted(row.items())]})
    return {"field": f.spec.to_dict(), "dim": L.dim, "basis": list(L.names), "table": rows, "name": L.label}


def lie_from_dict(data: dict, where: str = "$") -> LieAlgebra:
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected an object")
    for key in ("field", "dim", "basis", "table"):
        if key not in data:
            raise SchemaError(f"{where}.{key}: missing")
    try:
        field = make_field(FieldSpec.from_dict(data["field"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{where}.field: bad field description ({exc})") from None
    d, basis = data["dim"], data["basis"]
    if not isinstance(d, int) or d < 1:
        raise SchemaError(f"{where}.dim: expected a positive integer")
    if not isinstance(basis, list) or len(basis) != d or not all(isinstance(b, str) for b in basis):
        raise SchemaError(f"{where}.basis: expected {d} basis names")
    if not isinstance(data["table"], list):
        raise SchemaError(f"{where}.table: expected a list")
    table = {}
    for n, entry in enumerate(data["table"]):
        at = f"{where}.table[{n}]"
        if not isinstance(entry, dict) or not {"i", "j", "c"} <= set(entry):
            raise SchemaError(f"{at}: expected keys i, j, c")
        i, j = entry["i"], entry["j"]
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < d):
            raise ValidationError(f"{at}: need 0 <= i < j < {d}, got ({i}, {j})")
        if (i, j) in table:
            raise ValidationError(f"{at}: duplicate entry for ({i}, {j})")
        row = {}
        for m, c in enumerate(entry["c"]):
            cat = f"{at}.c[{m}]"
            if not isinstance(c, dict) or not {"k", "v"} <= set(c):
                raise SchemaError(f"{cat}: expected keys k, v")
            k = c["k"]
            if not isinstance(k, int) or not 0 <= k < d:
                raise ValidationError(f"{cat}: index {k} out of range")
            if k in row:
                raise ValidationError(f"{cat}: duplicate index {k}")
            try:
                row[k] = field.parse(str(c["v"]))
            except Exception as exc:
                raise ValidationError(f"{cat}: {exc}") from None
        table[(i, j)] = row
    try:
        return LieAlgebra(field, basis, table, label=data.get("name"))
    except JacobiViolation as exc:
        err = ValidationError(f"{where}.table: Jacobi identity fails at ({exc.i}, {exc.j}, {exc.k})")
        err.triple = (exc.i, exc.j, exc.k)
        raise err from None
    except AntisymmetryViolation as exc:
        raise ValidationError(f"{where}.table: antisymmetry fails at ({exc.i}, {exc.j})") from None


def to_dict(obj) -> dict:
    if isinstance(obj, LieAlgebra):
        return lie_to_dict(obj)
    if isinstance(obj, FiniteGroup):
        return group_descriptor(obj)
    raise TypeError(f"cannot export {type(obj).__name__}")


def export_text(obj) -> str:
    """Canonical file text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_dict(obj), sort_keys=True, indent=2) + "\n"


def export(obj, path: Union[str, Path]) -> None:
    Path(path).write_text(export_text(obj))


def from_dict(data, cap: int = DEFAULT_ORDER_CAP, where: str = "$"):
    if isinstance(data, dict) and "representation" in data:
        return group_from_descriptor(data, cap=cap, where=where)
    if isinstance(data, dict) and "table" in data:
        return lie_from_dict(data, where)
    raise SchemaError(f"{where}: neither a Lie algebra (table) nor a group (representation) file")


def ingest(path: Union[str, Path], cap: int = DEFAULT_ORDER_CAP):
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return from_dict(data, cap=cap)
    except (SchemaError, ValidationError) as exc:
        new = type(exc)(f"{path}: {exc}")
        if hasattr(exc, "triple"):
            new.triple = exc.triple
        raise new from None
