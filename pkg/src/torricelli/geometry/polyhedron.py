"""Convex polyhedral meshes, directions, and mesh validation."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from ..errors import MeshError, NonConvex, NonPlanarFace, OpenSurface

EPS_GEOM = 1e-9


def as_unit(direction) -> np.ndarray:
    """Return ``direction`` (a :class:`Direction` or 3-vector) as a unit ndarray."""
    v = np.asarray(direction, dtype=float).reshape(3)
    norm = np.linalg.norm(v)
    if not np.isfinite(norm) or norm == 0.0:
        raise ValueError(f"direction must be a non-zero finite 3-vector, got {v}")
    return v / norm


@dataclass(frozen=True)
class Direction:
    """Unit vector pointing *up*; the orifice sits at the lowest point along it.

    ``Direction.of(v)`` normalises; the plain constructor insists on a unit
    vector. ``d`` and ``-d`` describe different drainage experiments.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        n = float(np.sqrt(self.x**2 + self.y**2 + self.z**2))
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"Direction must have unit norm (got {n!r}); use Direction.of")

    @classmethod
    def of(cls, v) -> "Direction":
        u = as_unit(v)
        return cls(float(u[0]), float(u[1]), float(u[2]))

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y, self.z], dtype=dtype or float)

    def __neg__(self) -> "Direction":
        return Direction(-self.x, -self.y, -self.z)

    def flipped(self) -> "Direction":
        return -self

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True, eq=False)
class ConvexPolyhedron:
    """Validated convex mesh. Build it through :func:`validate_mesh`.

    ``faces`` are vertex-index cycles ordered counter-clockwise when seen
    from outside, so Newell normals point outward.
    """

    vertices: np.ndarray
    faces: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @cached_property
    def edges(self) -> np.ndarray:
        seen = set()
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                seen.add((min(a, b), max(a, b)))
        out = np.array(sorted(seen), dtype=int)
        out.setflags(write=False)
        return out

    @cached_property
    def face_normals(self) -> np.ndarray:
        """Outward unit normals, one row per face."""
        out = np.array([_newell(self.vertices[list(f)]) for f in self.faces])
        out /= np.linalg.norm(out, axis=1)[:, None]
        out.setflags(write=False)
        return out

    @cached_property
    def face_areas(self) -> np.ndarray:
        return np.array([0.5 * np.linalg.norm(_newell(self.vertices[list(f)])) for f in self.faces])

    @cached_property
    def volume(self) -> float:
        """Volume by signed tetrahedra from the origin over fan-triangulated faces."""
        vol = 0.0
        for f in self.faces:
            p = self.vertices[list(f)]
            for i in range(1, len(f) - 1):
                vol += np.dot(p[0], np.cross(p[i], p[i + 1]))
        return vol / 6.0

    @cached_property
    def centroid(self) -> np.ndarray:
        """Centre of mass of the solid (uniform density)."""
        acc = np.zeros(3)
        vol = 0.0
        for f in self.faces:
            p = self.vertices[list(f)]
            for i in range(1, len(f) - 1):
                w = np.dot(p[0], np.cross(p[i], p[i + 1]))
                acc += w * (p[0] + p[i] + p[i + 1]) / 4.0
                vol += w
        return acc / vol

    @property
    def scale(self) -> float:
        """Bounding-box diagonal; geometric tolerances are relative to it."""
        return float(np.linalg.norm(self.vertices.max(axis=0) - self.vertices.min(axis=0)))

    def heights(self, direction) -> np.ndarray:
        return self.vertices @ as_unit(direction)

    def scaled(self, factor: float) -> "ConvexPolyhedron":
        return ConvexPolyhedron(self.vertices * factor, self.faces)

    def rotated(self, rotation: np.ndarray) -> "ConvexPolyhedron":
        return ConvexPolyhedron(self.vertices @ np.asarray(rotation).T, self.faces)

    @property
    def diameter(self) -> float:
        v = self.vertices
        d = v[:, None, :] - v[None, :, :]
        return float(np.sqrt((d**2).sum(-1)).max())

    def is_centrally_symmetric(self, eps: float = EPS_GEOM) -> bool:
        c = self.vertices.mean(axis=0)
        reflected = 2 * c - self.vertices
        d = np.linalg.norm(reflected[:, None, :] - self.vertices[None, :, :], axis=2)
        return bool((d.min(axis=1) <= eps * self.scale).all())

    def __repr__(self):
        return f"ConvexPolyhedron({len(self.vertices)} vertices, {len(self.faces)} faces)"


def _newell(p: np.ndarray) -> np.ndarray:
    # twice the vector area of the polygon
    q = np.roll(p, -1, axis=0)
    return np.array([
        np.sum((p[:, 1] - q[:, 1]) * (p[:, 2] + q[:, 2])),
        np.sum((p[:, 2] - q[:, 2]) * (p[:, 0] + q[:, 0])),
        np.sum((p[:, 0] - q[:, 0]) * (p[:, 1] + q[:, 1])),
    ])


def support_extents(poly: ConvexPolyhedron, direction) -> tuple[float, float]:
    """Lowest and highest value of ``direction . x`` over the solid."""
    z = poly.heights(direction)
    return float(z.min()), float(z.max())


def validate_mesh(
    vertices: Sequence[Sequence[float]],
    faces: Sequence[Sequence[int]],
    eps: float = EPS_GEOM,
) -> ConvexPolyhedron:
    """Check a raw mesh and return it as a :class:`ConvexPolyhedron`.

    Checks run on a copy rescaled to unit bounding-box diagonal, so ``eps``
    is relative to the size of the solid. Faces whose normal points toward
    the interior are reversed.

    Raises
    ------
    OpenSurface
        An edge is not shared by exactly two faces.
    NonPlanarFace
        A face deviates from its best plane by more than ``eps``.
    NonConvex
        A face polygon is reflex, or some vertex lies outside a face plane.
    """
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[0] == 0 or v.shape[1] != 3:
        raise MeshError("vertices must be a non-empty list of 3D points")
    if not np.isfinite(v).all():
        raise MeshError("vertices contain non-finite coordinates")
    if len(faces) == 0:
        raise MeshError("face list is empty")
    cycles = []
    for f in faces:
        f = tuple(int(i) for i in f)
        if len(f) < 3 or len(set(f)) != len(f):
            raise MeshError(f"face {f} needs at least three distinct vertices")
        if min(f) < 0 or max(f) >= len(v):
            raise MeshError(f"face {f} references a missing vertex")
        cycles.append(f)

    count: dict[tuple[int, int], int] = {}
    for f in cycles:
        for a, b in zip(f, f[1:] + f[:1]):
            key = (min(a, b), max(a, b))
            count[key] = count.get(key, 0) + 1
    bad = [e for e, n in count.items() if n != 2]
    if bad:
        raise OpenSurface(f"edge {bad[0]} is shared by {count[bad[0]]} face(s), expected 2")

    lo, hi = v.min(axis=0), v.max(axis=0)
    diag = float(np.linalg.norm(hi - lo))
    if diag == 0.0:
        raise MeshError("all vertices coincide")
    x = (v - 0.5 * (lo + hi)) / diag
    interior = x.mean(axis=0)

    oriented = []
    normals = []
    for f in cycles:
        p = x[list(f)]
        n = _newell(p)
        norm = np.linalg.norm(n)
        if norm <= eps:
            raise NonPlanarFace(f"face {f} is degenerate (zero area)")
        n /= norm
        c = p.mean(axis=0)
        dev = np.abs((p - c) @ n).max()
        if dev > eps:
            raise NonPlanarFace(f"face {f} deviates {dev:.3g} from its plane")
        if np.dot(n, c - interior) < 0:
            f = f[::-1]
            p = p[::-1]
            n = -n
        e = np.roll(p, -1, axis=0) - p
        turn = np.cross(e, np.roll(e, -1, axis=0)) @ n
        if turn.min() < -eps:
            raise NonConvex(f"face {f} is not a convex polygon")
        oriented.append(f)
        normals.append((n, c))

    for f, (n, c) in zip(oriented, normals):
        out = (x - c) @ n
        if out.max() > eps:
            k = int(out.argmax())
            raise NonConvex(f"vertex {k} lies {out.max() * diag:.3g} outside the plane of face {f}")

    directed = set()
    for f in oriented:
        for a, b in zip(f, f[1:] + f[:1]):
            if (a, b) in directed:
                raise MeshError("face orientations are inconsistent")
            directed.add((a, b))

    return ConvexPolyhedron(v, tuple(oriented))
