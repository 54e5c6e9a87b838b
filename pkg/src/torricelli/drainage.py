"""Drainage times, partial times, trajectories and energy for an area profile.

Every time integral uses the substitution ``h = s**2``:

    T = (1/K) int_0^H A(h) / sqrt(h) dh = (2/K) int_0^sqrt(H) A(s**2) ds

which removes the endpoint singularity. Panels are split at the images
``sqrt(b)`` of the profile breakpoints so the integrand is smooth on each.
All times are in units of ``1/K``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import DegenerateProfile, OutOfRange
from .geometry import AreaProfile, ConvexPolyhedron, as_unit, support_extents
from .quadrature import DEFAULT_TOL, gauss_legendre, integrate


@dataclass(frozen=True)
class DrainageReport:
    T: float
    H: float
    K: float
    quadrature_error_estimate: float
    profile_id: str = ""

    def to_dict(self) -> dict:
        return {"T": self.T, "H": self.H, "K": self.K, "err": self.quadrature_error_estimate}


def _check_K(K: float) -> float:
    K = float(K)
    if not K > 0:
        raise ValueError(f"K must be positive, got {K!r}")
    return K


def _sqrt_panels(profile: AreaProfile, upper: Optional[float] = None) -> list[float]:
    top = profile.H if upper is None else upper
    return [math.sqrt(b) for b in profile.panels if b < top] + [math.sqrt(top)]


def _s_integrand(profile: AreaProfile):
    ev = profile.evaluator
    return lambda s: ev(s * s)


def drainage_time(profile: AreaProfile, K: float = 1.0, tol: float = DEFAULT_TOL) -> DrainageReport:
    """Total time to empty the profile through an orifice at ``h = 0``.

    Raises
    ------
    QuadratureFailure
        Tolerance not reached at maximum subdivision depth.
    """
    K = _check_K(K)
    val, err = integrate(_s_integrand(profile), _sqrt_panels(profile), tol=tol * K / 2.0)
    return DrainageReport(2.0 * val / K, profile.H, K, 2.0 * err / K, profile.label)


def partial_time(profile: AreaProfile, K: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """``F(x) / K`` with ``F(x) = int_0^x A(h)/sqrt(h) dh``: time to drain a column of height ``x``."""
    K = _check_K(K)
    H = profile.H
    if not (-1e-12 * H <= x <= H * (1 + 1e-12)):
        raise OutOfRange(f"height {x!r} outside [0, {H!r}]")
    x = min(max(float(x), 0.0), H)
    if x == 0.0:
        return 0.0
    val, _ = integrate(_s_integrand(profile), _sqrt_panels(profile, x), tol=tol * K / 2.0)
    return 2.0 * val / K


def volume(profile: AreaProfile, tol: float = DEFAULT_TOL) -> float:
    return integrate(profile.evaluator, profile.panels, tol=tol)[0]


def potential_energy(profile: AreaProfile, tol: float = DEFAULT_TOL) -> float:
    """``int_0^H A(h) h dh``; multiply by ``g * density`` for physical units."""
    ev = profile.evaluator
    return integrate(lambda h: ev(h) * h, profile.panels, tol=tol)[0]


def fill_fraction(profile: AreaProfile, h1: float, h2: float, tol: float = DEFAULT_TOL) -> float:
    """Fraction of the volume lying between heights ``h1`` and ``h2``."""
    H = profile.H
    slack = 1e-12 * H
    if not (-slack <= h1 <= h2 + slack and h2 <= H + slack):
        raise OutOfRange(f"need 0 <= h1 <= h2 <= {H!r}, got ({h1!r}, {h2!r})")
    h1, h2 = max(h1, 0.0), min(h2, H)
    pts = [h1] + [b for b in profile.breakpoints if h1 < b < h2] + [h2]
    part = integrate(profile.evaluator, pts, tol=tol)[0] if h2 > h1 else 0.0
    return part / volume(profile, tol)


def symmetric_bounds(V: float, h_C: float, K: float = 1.0) -> tuple[float, float]:
    """Drain-time bracket for a centrally symmetric convex solid whose centre sits at ``h_C``."""
    if not (V > 0 and h_C > 0 and K > 0):
        raise ValueError("V, h_C and K must be positive")
    low = V / (K * math.sqrt(h_C))
    return low, math.sqrt(2.0) * low


def center_height(poly: ConvexPolyhedron, direction) -> float:
    """Height of the centroid above the lowest supporting plane."""
    u = as_unit(direction)
    zmin, _ = support_extents(poly, u)
    return float(poly.centroid @ u - zmin)


# Gauss form -------------------------------------------------------------------

_GL_SMOOTH = gauss_legendre(16)
_GL_SMOOTH_LO = gauss_legendre(8)
_GL_GRADED = gauss_legendre(4)


def _apex_integral(zp: np.ndarray, zb: np.ndarray):
    """``J = int_0^1 tau sqrt(zp + tau (zb - zp)) dtau`` with an error estimate.

    Far from ``z = 0`` the integrand is analytic on [0, 1] and plain
    Gauss-Legendre in ``tau`` converges geometrically. Near ``z = 0`` the
    radial coordinate is graded as ``w = sqrt(z)``, which turns the
    integrand into the polynomial ``2 w**2 (w**2 - zp) / delta**2``.
    """
    delta = zb - zp
    smooth = np.abs(delta) <= 0.25 * np.maximum(zp, zb)
    out = np.empty_like(zp)
    err = np.zeros_like(zp)

    if smooth.any():
        p, d = zp[smooth], delta[smooth]
        vals = []
        for x, w in (_GL_SMOOTH, _GL_SMOOTH_LO):
            tau = 0.5 * (x + 1.0)
            f = tau[None, :] * np.sqrt(p[:, None] + tau[None, :] * d[:, None])
            vals.append(0.5 * f @ w)
        out[smooth] = vals[0]
        err[smooth] = np.abs(vals[0] - vals[1])

    graded = ~smooth
    if graded.any():
        p, d = zp[graded], delta[graded]
        wp, wb = np.sqrt(p), np.sqrt(zb[graded])
        x, w = _GL_GRADED
        half = 0.5 * (wb - wp)
        ww = 0.5 * (wb + wp)[:, None] + half[:, None] * x[None, :]
        f = 2.0 * ww**2 * (ww**2 - p[:, None]) / (d**2)[:, None]
        out[graded] = half * (f @ w)
    return out, err


def drainage_time_surface(poly: ConvexPolyhedron, direction, K: float = 1.0) -> DrainageReport:
    """Drain time from the boundary flux of ``F = (0, 0, 2 sqrt(z))``.

    ``T = (2/K) sum_faces n_z iint_face sqrt(z) dS``. Faces are fanned into
    triangles from their centroid; each triangle is split along the level
    line through its middle vertex into two triangles with one level edge,
    which are integrated in collapsed (apex, level-edge) coordinates.
    """
    K = _check_K(K)
    u = as_unit(direction)
    zmin, zmax = support_extents(poly, u)
    tris, nzs = [], []
    for f, n in zip(poly.faces, poly.face_normals):
        nz = float(n @ u)
        if abs(nz) < 1e-15:
            continue
        p = poly.vertices[list(f)]
        c = p.mean(axis=0)
        for i in range(len(f)):
            tris.append((c, p[i], p[(i + 1) % len(f)]))
            nzs.append(nz)
    if not tris:
        return DrainageReport(0.0, zmax - zmin, K, 0.0, "surface")
    P = np.asarray(tris)
    nz = np.asarray(nzs)
    z = np.clip(P @ u - zmin, 0.0, None)
    order = np.argsort(z, axis=1, kind="stable")
    rows = np.arange(len(P))[:, None]
    P = P[rows, order]
    z = z[rows, order]
    a, b, c = P[:, 0], P[:, 1], P[:, 2]
    za, zb, zc = z[:, 0], z[:, 1], z[:, 2]
    span = zc - za
    frac = np.divide(zb - za, span, out=np.zeros_like(span), where=span > 0)
    m = a + frac[:, None] * (c - a)
    area_lo = 0.5 * np.linalg.norm(np.cross(b - a, m - a), axis=1)
    area_hi = 0.5 * np.linalg.norm(np.cross(b - c, m - c), axis=1)
    j_lo, e_lo = _apex_integral(za, zb)
    j_hi, e_hi = _apex_integral(zc, zb)
    flux = 2.0 * (area_lo * j_lo + area_hi * j_hi)
    err = 2.0 * (area_lo * e_lo + area_hi * e_hi)
    T = 2.0 * float(nz @ flux) / K
    return DrainageReport(T, zmax - zmin, K, 2.0 * float(np.abs(nz) @ err) / K, "surface")


# Trajectory -------------------------------------------------------------------

_GL_LOCAL = gauss_legendre(24)


class TimeMap:
    """Exact time/height relation ``t(h) = (F(H) - F(h)) / K`` and its inverse."""

    def __init__(self, profile: AreaProfile, K: float = 1.0, tol: float = DEFAULT_TOL):
        self.profile = profile
        self.K = _check_K(K)
        self.U = np.asarray(_sqrt_panels(profile))
        f = _s_integrand(profile)
        cum = [0.0]
        for lo, hi in zip(self.U[:-1], self.U[1:]):
            cum.append(cum[-1] + integrate(f, [lo, hi], tol=tol)[0])
        self.cum = np.asarray(cum)
        self.total = float(self.cum[-1])
        self.T = 2.0 * self.total / self.K

    def _F(self, u: np.ndarray, k: np.ndarray) -> np.ndarray:
        x, w = _GL_LOCAL
        lo = self.U[k]
        half = 0.5 * (u - lo)
        s = (lo + half)[:, None] + half[:, None] * x[None, :]
        vals = np.asarray(self.profile.evaluator((s * s).ravel()), dtype=float).reshape(s.shape)
        return self.cum[k] + half * (vals @ w)

    def _panel(self, u: np.ndarray) -> np.ndarray:
        return np.clip(np.searchsorted(self.U, u, side="right") - 1, 0, len(self.U) - 2)

    def time_at(self, h) -> np.ndarray:
        h = np.atleast_1d(np.asarray(h, dtype=float))
        u = np.sqrt(np.clip(h, 0.0, self.profile.H))
        return 2.0 * (self.total - self._F(u, self._panel(u))) / self.K

    def height_at(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        target = np.clip(self.total - 0.5 * self.K * t, 0.0, self.total)
        k = np.clip(np.searchsorted(self.cum, target, side="right") - 1, 0, len(self.U) - 2)
        lo, hi = self.U[k].copy(), self.U[k + 1].copy()
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            below = self._F(mid, k) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        u = 0.5 * (lo + hi)
        h = np.where(target <= 0.0, 0.0, np.where(target >= self.total, self.profile.H, u * u))
        return h


@dataclass(frozen=True)
class Trajectory:
    """Samples ``(t, h)`` of the draining level, ``h`` strictly decreasing."""

    t: np.ndarray
    h: np.ndarray
    T: float
    H: float
    rk_discrepancy: Optional[float] = None

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.t.tolist(), self.h.tolist()))

    def to_csv(self) -> str:
        lines = ["t,h"] + [f"{t:.17g},{h:.17g}" for t, h in zip(self.t, self.h)]
        return "\n".join(lines) + "\n"


def _check_not_degenerate(profile: AreaProfile, n: int = 4001) -> None:
    h = np.linspace(0.0, profile.H, n)[1:-1]
    zero = np.asarray(profile(h)) <= 0.0
    if (zero[1:] & zero[:-1]).any():
        k = int(np.flatnonzero(zero[1:] & zero[:-1])[0])
        raise DegenerateProfile(f"A(h) vanishes near h = {h[k]:.6g} inside (0, H)")


def simulate(profile: AreaProfile, K: float = 1.0, n_samples: int = 101, cross_check: bool = False) -> Trajectory:
    """Sample the emptying curve from the exact time/height relation.

    Heights are spaced uniformly in ``sqrt(h)`` from ``H`` down to ``0``.
    With ``cross_check`` an explicit Runge-Kutta integration in
    ``u = sqrt(h)`` is run as well and its worst disagreement recorded.

    Raises
    ------
    DegenerateProfile
        ``A`` vanishes on an interval inside ``(0, H)``.
    """
    if n_samples < 2:
        raise ValueError("need at least two samples")
    _check_not_degenerate(profile)
    tm = TimeMap(profile, K)
    u = math.sqrt(profile.H) * (1.0 - np.arange(n_samples) / (n_samples - 1))
    h = u * u
    t = tm.time_at(h)
    t[0], t[-1] = 0.0, tm.T
    t = np.maximum.accumulate(t)
    rk = rk_cross_check(profile, K, h, tm) if cross_check else None
    return Trajectory(t, h, tm.T, profile.H, rk)


def rk_cross_check(profile: AreaProfile, K: float, heights, timemap: Optional[TimeMap] = None,
                   floor: float = 1e-3) -> float:
    """Largest ``|t_rk(h) - t_exact(h)|`` over ``heights`` above ``floor * H``.

    Integrates ``du/dt = -K / (2 A(u**2))`` from ``u = sqrt(H) (1 - 1e-9)``
    with an adaptive explicit Runge-Kutta (DOP853) scheme.
    """
    K = _check_K(K)
    tm = timemap or TimeMap(profile, K)
    H = profile.H
    u0 = math.sqrt(H) * (1.0 - 1e-9)
    u_floor = math.sqrt(floor * H)
    ev = profile.evaluator

    def rhs(_t, y):
        return [-K / (2.0 * max(float(ev(np.array([y[0] ** 2]))[0]), 1e-300))]

    def hit_floor(_t, y):
        return y[0] - u_floor

    hit_floor.terminal = True
    hit_floor.direction = -1
    sol = solve_ivp(rhs, (0.0, 2.0 * tm.T + 1.0), [u0], method="DOP853", rtol=1e-12, atol=1e-14,
                    dense_output=True, events=hit_floor)
    t_end = float(sol.t[-1])
    worst = 0.0
    for hk in np.asarray(heights, dtype=float):
        uk = math.sqrt(hk)
        if uk <= u_floor or uk >= u0:
            continue
        tk = brentq(lambda s: sol.sol(s)[0] - uk, 0.0, t_end, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        worst = max(worst, abs(tk - float(tm.time_at(hk)[0])))
    return worst


def height_at(profile: AreaProfile, K: float, t) -> np.ndarray:
    """Liquid level at time(s) ``t``; zero once the solid is empty."""
    h = TimeMap(profile, K).height_at(t)
    return float(h[0]) if np.ndim(t) == 0 else h


def verify_energy_identity(profile: AreaProfile, K: float = 1.0, tol: float = 1e-10) -> float:
    """``|int A(y) y dy - K int_0^T h(t)**1.5 dt|`` with ``h(t)`` from the trajectory."""
    tm = TimeMap(profile, K)
    kinks = sorted(float(v) for v in tm.time_at(np.asarray(profile.breakpoints))) if profile.breakpoints else []
    pts = [0.0] + [t for t in kinks if 0.0 < t < tm.T] + [tm.T]
    flux, _ = integrate(lambda t: tm.height_at(t) ** 1.5, pts, tol=tol / tm.K)
    return abs(potential_energy(profile) - tm.K * flux)
