"""Constructors for the catalog solids."""
from __future__ import annotations

import math

import numpy as np
from scipy.spatial import ConvexHull

from ..errors import UnknownSolid
from .polyhedron import ConvexPolyhedron, validate_mesh
from .profiles import PHI

PLATONIC = ("tetrahedron", "cube", "octahedron", "icosahedron")


def convex_hull(points) -> ConvexPolyhedron:
    """Convex hull of ``points`` with coplanar hull triangles merged into polygons."""
    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    scale = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
    groups: list[tuple[np.ndarray, float, set]] = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        n, off = eq[:3], eq[3]
        for gn, goff, members in groups:
            if np.linalg.norm(gn - n) < 1e-9 and abs(goff - off) < 1e-9 * scale:
                members.update(int(i) for i in simplex)
                break
        else:
            groups.append((n, off, {int(i) for i in simplex}))
    verts_used = sorted({i for _, _, m in groups for i in m})
    remap = {old: new for new, old in enumerate(verts_used)}
    faces = []
    for n, _, members in groups:
        idx = np.array(sorted(members))
        p = pts[idx]
        c = p.mean(axis=0)
        e1 = p[0] - c
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(n, e1)
        ang = np.arctan2((p - c) @ e2, (p - c) @ e1)
        faces.append([remap[int(i)] for i in idx[np.argsort(ang)]])
    return validate_mesh(pts[verts_used], faces)


def box(a: float, b: float, c: float) -> ConvexPolyhedron:
    """The box ``[0, a] x [0, b] x [0, c]``."""
    corners = [(x, y, z) for x in (0.0, a) for y in (0.0, b) for z in (0.0, c)]
    return convex_hull(corners)


def _tetrahedron(edge: float) -> np.ndarray:
    rho = edge / math.sqrt(3.0)
    base = [(rho * math.cos(t), rho * math.sin(t), 0.0) for t in (0.0, 2 * math.pi / 3, 4 * math.pi / 3)]
    return np.array(base + [(0.0, 0.0, edge * math.sqrt(2.0 / 3.0))])


def _cube(edge: float) -> np.ndarray:
    return np.array([(x, y, z) for x in (0.0, edge) for y in (0.0, edge) for z in (0.0, edge)])


def _octahedron(edge: float) -> np.ndarray:
    r = edge / math.sqrt(2.0)
    return np.vstack([np.eye(3) * r, -np.eye(3) * r])


def paccioli_vertices() -> np.ndarray:
    """``(0, +-1, +-phi)`` and its cyclic permutations: an icosahedron of edge 2."""
    out = []
    for s1 in (1.0, -1.0):
        for s2 in (PHI, -PHI):
            out += [(0.0, s1, s2), (s1, s2, 0.0), (s2, 0.0, s1)]
    return np.array(out)


def _icosahedron(edge: float) -> np.ndarray:
    return paccioli_vertices() * (edge / 2.0)


_BUILDERS = {
    "tetrahedron": _tetrahedron,
    "cube": _cube,
    "octahedron": _octahedron,
    "icosahedron": _icosahedron,
}


def platonic(name: str, edge: float = 1.0) -> ConvexPolyhedron:
    """Regular solid with the given edge length.

    Poses: the tetrahedron stands on a face in ``z = 0`` with its apex on
    ``+z``; the cube is ``[0, edge]^3``; the octahedron has vertices on the
    axes; the icosahedron uses Paccioli coordinates scaled by ``edge / 2``.
    """
    if not edge > 0:
        raise ValueError("edge must be positive")
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise UnknownSolid(f"unknown solid {name!r}; choose from {', '.join(PLATONIC)}") from None
    return convex_hull(build(float(edge)))


def circumradius(poly: ConvexPolyhedron) -> float:
    return float(np.linalg.norm(poly.vertices - poly.centroid, axis=1).max())


def inradius(poly: ConvexPolyhedron) -> float:
    c = poly.centroid
    return float(min(np.dot(n, poly.vertices[f[0]] - c) for n, f in zip(poly.face_normals, poly.faces)))


def solid(name: str, edge: float = 1.0) -> ConvexPolyhedron:
    """Platonic solids by name, plus ``box:AxBxC`` (e.g. ``box:1x1x100``)."""
    if name.startswith("box:"):
        try:
            a, b, c = (float(t) for t in name[4:].split("x"))
        except ValueError:
            raise UnknownSolid(f"malformed box name {name!r}; expected box:AxBxC") from None
        return box(a * edge, b * edge, c * edge)
    return platonic(name, edge)
