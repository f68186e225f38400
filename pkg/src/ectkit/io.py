"""File formats: complex JSON, OFF meshes, diagram JSON, CSV exports.

Loaders remap external vertex ids to dense 0-based ids (list position in the
file's ``vertices`` array) and keep the original ids in a side table, so
embeddings and fields written per-vertex in file order stay aligned.  Saving
and re-loading reproduces equal objects.  Infinities are serialized as the
string "inf".
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
import warnings
from pathlib import Path
from typing import NamedTuple

from .complexes import AbstractComplex, Embedding, build_complex
from .ecc import StepFunction
from .filtration import Direction, VertexFunction
from .persistence import PersistenceDiagram, PersistencePoint

__all__ = [
    "ComplexBundle",
    "load_complex_file",
    "load_complex_json",
    "load_off",
    "save_complex_file",
    "complex_to_jsonable",
    "diagram_to_jsonable",
    "diagram_from_jsonable",
    "save_diagram",
    "load_diagram",
    "step_function_csv",
    "parse_step_function_csv",
    "load_directions_csv",
]


class ComplexBundle(NamedTuple):
    """A loaded complex with its named embeddings and fields.

    ``vertex_names`` maps dense vertex id -> the id used in the source file.
    """

    complex: AbstractComplex
    embeddings: dict[str, Embedding]
    fields: dict[str, VertexFunction]
    vertex_names: tuple


def load_complex_file(path: str | Path) -> ComplexBundle:
    """Dispatch on extension: .off is a mesh, everything else is complex JSON."""
    path = Path(path)
    if path.suffix.lower() == ".off":
        return load_off(path)
    return load_complex_json(path)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def load_complex_json(path: str | Path) -> ComplexBundle:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    return _bundle_from_jsonable(data, label=str(path))


def _bundle_from_jsonable(data, label: str = "complex JSON") -> ComplexBundle:
    _require(isinstance(data, dict), f"{label}: top level must be an object")
    _require("vertices" in data, f"{label}: missing 'vertices' field")
    raw_vertices = data["vertices"]
    _require(isinstance(raw_vertices, list), f"{label}: 'vertices' must be a list")
    _require(len(raw_vertices) > 0, f"{label}: empty complex not permitted")
    dense: dict = {}
    for idx, name in enumerate(raw_vertices):
        _require(not isinstance(name, (list, dict)), f"{label}: vertex ids must be scalars")
        _require(name not in dense, f"{label}: duplicate vertex id {name!r}")
        dense[name] = idx

    simplices = [(i,) for i in range(len(raw_vertices))]
    listed: set[tuple[int, ...]] = set(simplices)
    for row, raw in enumerate(data.get("simplices", [])):
        _require(isinstance(raw, list) and len(raw) > 0, f"{label}: simplices[{row}] must be a non-empty list")
        mapped = []
        for name in raw:
            _require(name in dense, f"{label}: simplices[{row}] references unknown vertex {name!r}")
            mapped.append(dense[name])
        _require(len(set(mapped)) == len(mapped), f"{label}: simplices[{row}] repeats a vertex")
        simplices.append(tuple(sorted(mapped)))
        listed.add(tuple(sorted(mapped)))
    complex_ = build_complex(simplices)
    added = complex_.n_simplices - len(listed)
    if added:
        warnings.warn(
            f"{label}: simplices were not face-closed; {added} missing faces added",
            stacklevel=2,
        )

    embeddings: dict[str, Embedding] = {}
    for name, rows in (data.get("embeddings") or {}).items():
        _require(isinstance(rows, list), f"{label}: embedding {name!r} must be a list of points")
        _require(
            len(rows) == len(raw_vertices),
            f"{label}: embedding {name!r} has {len(rows)} points, expected {len(raw_vertices)}",
        )
        dims = {len(row) for row in rows}
        _require(len(dims) == 1, f"{label}: embedding {name!r} mixes coordinate lengths")
        (dim,) = dims
        _require(dim >= 1, f"{label}: embedding {name!r} has empty coordinate vectors")
        embeddings[name] = Embedding(dim, {i: tuple(row) for i, row in enumerate(rows)})

    fields: dict[str, VertexFunction] = {}
    for name, vals in (data.get("phi") or {}).items():
        _require(isinstance(vals, list), f"{label}: phi table {name!r} must be a list")
        _require(
            len(vals) == len(raw_vertices),
            f"{label}: phi table {name!r} has {len(vals)} values, expected {len(raw_vertices)}",
        )
        try:
            fields[name] = VertexFunction({i: v for i, v in enumerate(vals)})
        except ValueError as exc:
            raise ValueError(f"{label}: phi table {name!r}: {exc}") from None

    return ComplexBundle(complex_, embeddings, fields, tuple(raw_vertices))


def complex_to_jsonable(
    complex_: AbstractComplex,
    embeddings: dict[str, Embedding] | None = None,
    fields: dict[str, VertexFunction] | None = None,
    vertex_names: tuple | None = None,
) -> dict:
    """Schema used by :func:`load_complex_json`; simplices include the full closure."""
    order = sorted(complex_.vertices)
    names = list(vertex_names) if vertex_names is not None else list(order)
    if len(names) != len(order):
        raise ValueError(f"expected {len(order)} vertex names, got {len(names)}")
    data: dict = {
        "vertices": names,
        "simplices": [list(s) for s in sorted(complex_.simplices, key=lambda s: (len(s), s)) if len(s) > 1],
    }
    if embeddings:
        data["embeddings"] = {
            name: [list(emb.vector(v)) for v in order] for name, emb in embeddings.items()
        }
    if fields:
        data["phi"] = {name: [fn[v] for v in order] for name, fn in fields.items()}
    return data


def save_complex_file(
    path: str | Path,
    complex_: AbstractComplex,
    embeddings: dict[str, Embedding] | None = None,
    fields: dict[str, VertexFunction] | None = None,
    vertex_names: tuple | None = None,
) -> None:
    payload = complex_to_jsonable(complex_, embeddings, fields, vertex_names)
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def load_off(path: str | Path) -> ComplexBundle:
    """Triangle-mesh OFF file: the embedding is registered under the name 'off'."""
    path = Path(path)
    tokens: list[str] = []
    for line_no, line in enumerate(path.read_text().splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            tokens.extend(body.split())
    _require(bool(tokens), f"{path}: empty OFF file")
    _require(tokens[0] == "OFF", f"{path}: missing OFF header, found {tokens[0]!r}")
    values = tokens[1:]
    _require(len(values) >= 3, f"{path}: missing vertex/face counts")
    try:
        n_vertices, n_faces = int(values[0]), int(values[1])
    except ValueError:
        raise ValueError(f"{path}: malformed count line {values[:3]}") from None
    _require(n_vertices > 0, f"{path}: empty complex not permitted")
    cursor = 3  # skip the (unused) edge count
    coords = {}
    for v in range(n_vertices):
        row = values[cursor : cursor + 3]
        _require(len(row) == 3, f"{path}: vertex {v}: expected 3 coordinates")
        try:
            coords[v] = tuple(float(x) for x in row)
        except ValueError:
            raise ValueError(f"{path}: vertex {v}: non-numeric coordinate in {row}") from None
        cursor += 3
    simplices: list[tuple[int, ...]] = [(v,) for v in range(n_vertices)]
    for f in range(n_faces):
        _require(cursor < len(values), f"{path}: face {f}: unexpected end of file")
        try:
            k = int(values[cursor])
        except ValueError:
            raise ValueError(f"{path}: face {f}: malformed vertex count {values[cursor]!r}") from None
        _require(1 <= k <= 3, f"{path}: face {f}: only triangular faces are supported, got {k} vertices")
        row = values[cursor + 1 : cursor + 1 + k]
        _require(len(row) == k, f"{path}: face {f}: unexpected end of file")
        try:
            ids = [int(x) for x in row]
        except ValueError:
            raise ValueError(f"{path}: face {f}: non-integer vertex reference in {row}") from None
        for i in ids:
            _require(0 <= i < n_vertices, f"{path}: face {f}: vertex reference {i} out of range")
        simplices.append(tuple(sorted(ids)))
        cursor += 1 + k
    complex_ = build_complex(simplices)
    embedding = Embedding(3, coords)
    return ComplexBundle(complex_, {"off": embedding}, {}, tuple(range(n_vertices)))


def diagram_to_jsonable(diagram: PersistenceDiagram) -> dict:
    dims: dict[str, list] = {}
    for point in diagram.points:
        death = "inf" if math.isinf(point.death) else point.death
        dims.setdefault(str(point.dim), []).append([point.birth, death])
    return {"dims": dims}


def diagram_from_jsonable(data, label: str = "diagram JSON") -> PersistenceDiagram:
    _require(isinstance(data, dict) and isinstance(data.get("dims"), dict), f"{label}: expected an object with a 'dims' table")
    points = []
    for dim_key, rows in data["dims"].items():
        try:
            dim = int(dim_key)
        except ValueError:
            raise ValueError(f"{label}: dimension key {dim_key!r} is not an integer") from None
        _require(isinstance(rows, list), f"{label}: dims[{dim_key!r}] must be a list")
        for row in rows:
            _require(isinstance(row, list) and len(row) == 2, f"{label}: points must be [birth, death] pairs")
            birth, death = row
            death = math.inf if death == "inf" else float(death)
            points.append(PersistencePoint(float(birth), death, dim))
    return PersistenceDiagram(tuple(points))


def save_diagram(path: str | Path, diagram: PersistenceDiagram) -> None:
    Path(path).write_text(json.dumps(diagram_to_jsonable(diagram), indent=2, sort_keys=True) + "\n")


def load_diagram(path: str | Path) -> PersistenceDiagram:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    return diagram_from_jsonable(data, label=str(path))


def step_function_csv(step: StepFunction) -> str:
    """Header row carries the terminal value; one row per breakpoint after it."""
    out = _io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["terminal_value", step.terminal_value])
    writer.writerow(["breakpoint", "value_after"])
    for breakpoint_, value in step.steps():
        writer.writerow([repr(breakpoint_), value])
    return out.getvalue()


def parse_step_function_csv(text: str) -> StepFunction:
    rows = list(csv.reader(_io.StringIO(text)))
    _require(len(rows) >= 2 and rows[0][0] == "terminal_value", "step CSV: missing terminal_value header")
    _require(rows[1] == ["breakpoint", "value_after"], "step CSV: missing column header")
    terminal = int(rows[0][1])
    breakpoints: list[float] = []
    jumps: list[int] = []
    previous = 0
    for row in rows[2:]:
        if not row:
            continue
        value = int(row[1])
        breakpoints.append(float(row[0]))
        jumps.append(value - previous)
        previous = value
    _require(previous == terminal, "step CSV: terminal value does not match rows")
    return StepFunction(tuple(breakpoints), tuple(jumps))


def load_directions_csv(path: str | Path) -> list[Direction]:
    """One unit vector per row; rows are renormalized to absorb rounding."""
    path = Path(path)
    directions = []
    for row_no, row in enumerate(csv.reader(_io.StringIO(path.read_text()))):
        if not row or all(not cell.strip() for cell in row):
            continue
        try:
            vec = [float(cell) for cell in row]
        except ValueError:
            raise ValueError(f"{path}: row {row_no}: non-numeric component in {row}") from None
        norm = math.sqrt(sum(x * x for x in vec))
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"{path}: row {row_no}: vector is not unit length (|v| = {norm!r})")
        directions.append(Direction.normalized(vec))
    _require(bool(directions), f"{path}: no directions found")
    return directions
