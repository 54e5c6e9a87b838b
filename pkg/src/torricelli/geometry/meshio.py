"""Mesh files: a minimal OBJ subset and a JSON document."""
from __future__ import annotations

import json
from pathlib import Path

from ..errors import MeshError
from .polyhedron import ConvexPolyhedron, validate_mesh


def parse_obj(text: str) -> tuple[list[list[float]], list[list[int]]]:
    """Read ``v`` and ``f`` records; face indices are 1-based, ``i/t/n`` forms allowed."""
    vertices, faces = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        try:
            if tag == "v":
                if len(rest) < 3:
                    raise MeshError(f"line {lineno}: vertex needs three coordinates")
                vertices.append([float(x) for x in rest[:3]])
            elif tag == "f":
                idx = []
                for tok in rest:
                    i = int(tok.split("/")[0])
                    if i == 0:
                        raise MeshError(f"line {lineno}: face indices are 1-based")
                    idx.append(i - 1 if i > 0 else len(vertices) + i)
                faces.append(idx)
        except ValueError as exc:
            raise MeshError(f"line {lineno}: {exc}") from None
    return vertices, faces


def parse_json(text: str) -> tuple[list[list[float]], list[list[int]]]:
    doc = json.loads(text)
    try:
        return doc["vertices"], doc["faces"]
    except (KeyError, TypeError):
        raise MeshError('mesh JSON needs "vertices" and "faces"') from None


def load_mesh(path) -> ConvexPolyhedron:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".obj":
        v, f = parse_obj(text)
    elif path.suffix.lower() == ".json":
        v, f = parse_json(text)
    else:
        raise MeshError(f"unsupported mesh format {path.suffix!r} (use .obj or .json)")
    return validate_mesh(v, f)


def mesh_to_json(poly: ConvexPolyhedron) -> str:
    doc = {
        "vertices": [[float(x) for x in v] for v in poly.vertices],
        "faces": [list(map(int, f)) for f in poly.faces],
    }
    return json.dumps(doc)


def save_mesh_json(poly: ConvexPolyhedron, path) -> None:
    Path(path).write_text(mesh_to_json(poly) + "\n")
