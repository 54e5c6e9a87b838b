"""Plane sections of convex polyhedra.

Two routes to the same area, kept deliberately separate:

* :func:`cross_section_area` slices at one height: edge/plane intersection,
  de-duplication, angular ordering about the centroid, shoelace.
* :class:`SectionProfile` slices once per panel between consecutive vertex
  heights. Inside a panel the set of crossed edges and their cyclic order
  are fixed and every section vertex moves linearly with height, so the
  shoelace sum collapses to an exact quadratic in ``h``.
"""
from __future__ import annotations

import numpy as np

from ..errors import OutOfRange
from .polyhedron import EPS_GEOM, ConvexPolyhedron, as_unit


def _plane_basis(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.eye(3)[int(np.argmin(np.abs(u)))]
    e1 = np.cross(u, helper)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(u, e1)


def _angular_order(points: np.ndarray, u: np.ndarray) -> np.ndarray:
    e1, e2 = _plane_basis(u)
    c = points.mean(axis=0)
    q = points - c
    return np.argsort(np.arctan2(q @ e2, q @ e1), kind="stable")


def section_polygon(poly: ConvexPolyhedron, direction, h: float) -> np.ndarray:
    """Vertices of the section ``{x : u.x = h_min + h}`` in angular order."""
    u = as_unit(direction)
    z = poly.vertices @ u
    zmin, zmax = float(z.min()), float(z.max())
    H = zmax - zmin
    slack = 1e-12 * max(1.0, H)
    if not (-slack <= h <= H + slack):
        raise OutOfRange(f"height {h!r} outside [0, {H!r}]")
    c = zmin + min(max(h, 0.0), H)
    tol = EPS_GEOM * poly.scale

    d = z - c
    pts = [poly.vertices[i] for i in np.flatnonzero(np.abs(d) <= tol)]
    for a, b in poly.edges:
        da, db = d[a], d[b]
        if abs(da) > tol and abs(db) > tol and da * db < 0:
            w = da / (da - db)
            pts.append(poly.vertices[a] + w * (poly.vertices[b] - poly.vertices[a]))
    unique: list[np.ndarray] = []
    for p in pts:
        if all(np.linalg.norm(p - q) >= tol for q in unique):
            unique.append(p)
    if len(unique) < 3:
        return np.asarray(unique, dtype=float).reshape(-1, 3)
    arr = np.asarray(unique)
    return arr[_angular_order(arr, u)]


def polygon_area(points: np.ndarray, normal: np.ndarray) -> float:
    """Shoelace area of an ordered planar polygon with the given unit normal."""
    if len(points) < 3:
        return 0.0
    q = points - points.mean(axis=0)
    s = np.cross(q, np.roll(q, -1, axis=0)).sum(axis=0)
    return 0.5 * abs(float(s @ normal))


def cross_section_area(poly: ConvexPolyhedron, direction, h: float) -> float:
    """Area of the slice at height ``h`` above the lowest supporting plane.

    Raises
    ------
    OutOfRange
        ``h`` outside ``[0, H]``.
    """
    u = as_unit(direction)
    return polygon_area(section_polygon(poly, u, h), u)


def merged_levels(z: np.ndarray, scale: float) -> np.ndarray:
    """Sorted distinct heights above ``z.min()``; near-coincident values merge."""
    rel = np.sort(z - z.min())
    tol = 1e-12 * max(scale, 1.0)
    keep = [rel[0]]
    for v in rel[1:]:
        if v - keep[-1] > tol:
            keep.append(v)
    H = rel[-1]
    keep[-1] = H
    return np.asarray(keep)


class SectionProfile:
    """Vectorised ``h -> A(h)`` for a polyhedron seen along a direction.

    ``levels`` are the merged vertex heights (``levels[0] == 0``,
    ``levels[-1] == H``) and ``coefficients[k] = (a0, a1, a2)`` gives
    ``A = a0 + a1 s + a2 s**2`` with ``s = h - levels[k]`` on panel ``k``.
    """

    def __init__(self, poly: ConvexPolyhedron, direction):
        u = as_unit(direction)
        self.direction = u
        z = poly.vertices @ u
        self.zmin = float(z.min())
        self.levels = merged_levels(z, poly.scale)
        self.H = float(self.levels[-1])
        edges = poly.edges
        za, zb = z[edges[:, 0]], z[edges[:, 1]]
        lo_z, hi_z = np.minimum(za, zb), np.maximum(za, zb)
        # in-plane coordinates; e1 x e2 = u, so (p x q) . u is the 2-D cross product
        e1, e2 = _plane_basis(u)
        xy = poly.vertices @ np.column_stack([e1, e2])
        coeffs = np.zeros((len(self.levels) - 1, 3))
        for k in range(len(self.levels) - 1):
            start = self.zmin + self.levels[k]
            mid = self.zmin + 0.5 * (self.levels[k] + self.levels[k + 1])
            crossed = np.flatnonzero((lo_z < mid) & (hi_z > mid))
            if len(crossed) < 3:
                continue
            a = xy[edges[crossed, 0]]
            b = xy[edges[crossed, 1]]
            rate = (b - a) / (zb[crossed] - za[crossed])[:, None]
            base = a + (start - za[crossed])[:, None] * rate
            q = base + (mid - start) * rate
            q = q - q.mean(axis=0)
            order = np.argsort(np.arctan2(q[:, 1], q[:, 0]), kind="stable")
            base, rate = base[order], rate[order]
            base = base - base.mean(axis=0)
            nb, nr = np.roll(base, -1, axis=0), np.roll(rate, -1, axis=0)
            c0 = np.sum(base[:, 0] * nb[:, 1] - base[:, 1] * nb[:, 0])
            c1 = np.sum(base[:, 0] * nr[:, 1] - base[:, 1] * nr[:, 0] + rate[:, 0] * nb[:, 1] - rate[:, 1] * nb[:, 0])
            c2 = np.sum(rate[:, 0] * nr[:, 1] - rate[:, 1] * nr[:, 0])
            s_mid = mid - start
            sign = 1.0 if c0 + c1 * s_mid + c2 * s_mid**2 >= 0 else -1.0
            coeffs[k] = 0.5 * sign * np.array([c0, c1, c2])
        self.coefficients = coeffs

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.levels[1:-1])

    def __call__(self, h):
        h = np.asarray(h, dtype=float)
        k = np.clip(np.searchsorted(self.levels, h, side="right") - 1, 0, len(self.coefficients) - 1)
        s = h - self.levels[k]
        c = self.coefficients[k]
        return np.maximum(c[..., 0] + s * (c[..., 1] + s * c[..., 2]), 0.0)
