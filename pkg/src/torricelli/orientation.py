"""Orientation optimisation: Torricelli numbers, turn-up numbers, rotation lemmas."""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq, minimize

from .drainage import drainage_time
from .errors import CoincidentPoints, EmptyDomain, NotCentrallySymmetric, UnknownSolid, ZeroVolume
from .geometry import ConvexPolyhedron, RevolutionProfile, area_profile, as_unit
from .quadrature import as_vectorized, golden_section, integrate

DEFAULT_GRID = 4096
N_STARTS = 16


def fibonacci_lattice(n: int) -> np.ndarray:
    """``n`` near-uniform unit vectors (golden-angle spiral, deterministic)."""
    i = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = i * math.pi * (3.0 - math.sqrt(5.0))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def thread_count() -> int:
    env = os.environ.get("TORRICELLI_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def drain_time_along(poly: ConvexPolyhedron, direction, K: float = 1.0) -> float:
    return drainage_time(area_profile(poly, direction), K).T


def _evaluate_all(fn: Callable[[np.ndarray], float], dirs: np.ndarray) -> np.ndarray:
    workers = min(thread_count(), len(dirs))
    if workers <= 1:
        return np.array([fn(d) for d in dirs])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.fromiter(pool.map(fn, dirs), dtype=float, count=len(dirs))


def _chart(d0: np.ndarray):
    e1 = np.cross(d0, np.eye(3)[int(np.argmin(np.abs(d0)))])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(d0, e1)
    return lambda x: as_unit(d0 + x[0] * e1 + x[1] * e2)


def refine_direction(
    fn: Callable[[np.ndarray], float],
    d0: np.ndarray,
    step: float,
    sense: float = 1.0,
    fatol: float = 1e-13,
    max_restarts: int = 6,
) -> tuple[np.ndarray, float]:
    """Nelder-Mead on ``sense * fn`` in a tangent chart centred on the current best.

    The chart is re-centred after every run, so the simplex never meets a
    coordinate pole. Restarts stop once a run improves the value by less
    than ``1e-10``.
    """
    best_d = as_unit(d0)
    best_f = sense * fn(best_d)
    h = step
    for _ in range(max_restarts):
        to_dir = _chart(best_d)
        res = minimize(
            lambda x: sense * fn(to_dir(x)),
            np.zeros(2),
            method="Nelder-Mead",
            options={
                "initial_simplex": np.array([[0.0, 0.0], [h, 0.0], [0.0, h]]),
                "xatol": 1e-11,
                "fatol": fatol,
                "maxiter": 4000,
                "maxfev": 8000,
            },
        )
        gain = best_f - res.fun
        if res.fun < best_f:
            best_d, best_f = to_dir(res.x), float(res.fun)
        h = max(min(h, 10.0 * float(np.linalg.norm(res.x)) + 1e-6), 1e-5)
        if gain < 1e-10:
            break
    return best_d, sense * best_f


def _pick(cands: list[tuple[float, np.ndarray]], sense: float) -> tuple[float, np.ndarray]:
    """Best value; among round-off ties the lexicographically smallest direction."""
    best = min(sense * v for v, _ in cands)
    tie = 16.0 * np.finfo(float).eps * max(1.0, abs(best))
    pool = [(tuple(np.round(d, 9)), v, d) for v, d in cands if sense * v <= best + tie]
    _, v, d = min(pool, key=lambda item: item[0])
    return v, d


def special_directions(poly: ConvexPolyhedron) -> np.ndarray:
    """Both orientations of every face normal and every centroid-to-vertex ray."""
    rays = poly.vertices - poly.centroid
    rays = rays / np.linalg.norm(rays, axis=1)[:, None]
    d = np.vstack([poly.face_normals, rays])
    return np.vstack([d, -d])


@dataclass(frozen=True)
class TorricelliReport:
    T_min: float
    T_max: float
    dir_min: tuple[float, float, float]
    dir_max: tuple[float, float, float]
    rho: float
    grid_size: int
    refined: bool

    def to_dict(self) -> dict:
        return {
            "T_min": self.T_min,
            "T_max": self.T_max,
            "rho": self.rho,
            "dir_min": list(self.dir_min),
            "dir_max": list(self.dir_max),
            "grid": self.grid_size,
        }


def torricelli_number(
    poly: ConvexPolyhedron, grid: int = DEFAULT_GRID, refine: bool = True, K: float = 1.0
) -> TorricelliReport:
    """Extremal drainage times over all orientations and their ratio.

    A Fibonacci lattice of ``grid`` directions is scanned; with ``refine``
    the best and worst :data:`N_STARTS` lattice points seed Nelder-Mead
    searches, and face normals and vertex rays join the candidates. Lattice order fixes the reduction, so reports are
    reproducible bit for bit.
    """
    if grid < 64:
        raise ValueError("grid must be at least 64")
    fn = lambda d: drain_time_along(poly, d, K)
    dirs = fibonacci_lattice(grid)
    T = _evaluate_all(fn, dirs)
    cands_min = [(float(T[i]), dirs[i]) for i in np.argsort(T, kind="stable")[:N_STARTS]]
    cands_max = [(float(T[i]), dirs[i]) for i in np.argsort(-T, kind="stable")[:N_STARTS]]
    if refine:
        step = math.sqrt(4.0 * math.pi / grid)
        cands_min += [refine_direction(fn, d, step, 1.0)[::-1] for _, d in cands_min]
        cands_max += [refine_direction(fn, d, step, -1.0)[::-1] for _, d in cands_max]
        # extrema of symmetric solids sit exactly on these; evaluating them
        # removes the last few ulps the simplex leaves behind
        special = special_directions(poly)
        Ts = _evaluate_all(fn, special)
        cands_min += [(float(t), d) for t, d in zip(Ts, special)]
        cands_max += [(float(t), d) for t, d in zip(Ts, special)]
    t_min, d_min = _pick(cands_min, 1.0)
    t_max, d_max = _pick(cands_max, -1.0)
    return TorricelliReport(
        float(t_min), float(t_max), tuple(map(float, d_min)), tuple(map(float, d_max)),
        float(t_max / t_min), grid, refine,
    )


@dataclass(frozen=True)
class ClosedForm:
    T_min: float
    T_max: Optional[float]
    rho: Optional[float]


def torricelli_closed_forms(name: str) -> ClosedForm:
    """Exact extremal times (unit edge; edge 2 for the icosahedron).

    The icosahedron's maximum is not known in closed form, so its
    ``T_max`` and ``rho`` are ``None``.
    """
    r2, r3, r5 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(5.0)
    if name == "cube":
        t_min = 8.0 * 3.0**0.25 / 5.0 * (1.0 + 3.0 * r3 - 4.0 * r2)
        return ClosedForm(t_min, 2.0, 5.0 / (4.0 * 3.0**0.25 * (1.0 + 3.0 * r3 - 4.0 * r2)))
    if name == "octahedron":
        t_max = 19.0 / (5.0 * 6.0**0.75)
        t_min = 8.0 / 15.0 * (8.0 * 2.0**0.25 - 5.0 * 2.0**0.75)
        return ClosedForm(t_min, t_max, 19.0 * 3.0**0.25 * (8.0 + 5.0 * r2) / 224.0)
    if name == "tetrahedron":
        t_max = 4.0 * 2.0**0.25 / (5.0 * 3.0**0.75)
        t_min = 3.0**0.25 / (5.0 * 2.0**0.75)
        return ClosedForm(t_min, t_max, 8.0 / 3.0)
    if name == "icosahedron":
        t_min = (
            2.0 * r5 * (2.0 * (33112325.0 - 14587199.0 * r5)) ** 0.25
            + 3.0 * 2.0**0.25 * (5.0 + r5) ** 1.25
            + 2.0 * math.sqrt(10.0 * math.sqrt(34403829358.0 * r5 + 76929359725.0) - 1960000.0 - 877600.0 * r5)
        ) / 15.0
        return ClosedForm(t_min, None, None)
    raise UnknownSolid(f"no closed forms for {name!r}")


# Turn-up number ---------------------------------------------------------------


@dataclass(frozen=True)
class TurnUpReport:
    """Drain times (units ``1/K``) upright and upside down.

    ``rho_ell`` is slower over faster, so it is never below 1.
    ``exact_moments`` holds ``(int g(s^2), int g(1 - s^2))`` over [0, 1]
    when ``g`` is polynomial.
    """

    T_up: float
    T_down: float
    rho_ell: float
    exact_moments: Optional[tuple[Fraction, Fraction]] = None

    def to_dict(self) -> dict:
        out = {"T_up": self.T_up, "T_down": self.T_down, "rho_ell": self.rho_ell}
        if self.exact_moments:
            out["moment_up"] = str(self.exact_moments[0])
            out["moment_down"] = str(self.exact_moments[1])
        return out


def turn_up_number(g, K: float = 1.0) -> TurnUpReport:
    """Turn-up number of the solid of revolution ``x**2 + z**2 = g(y)`` about its axis.

    ``g`` is a :class:`RevolutionProfile` (moments exact) or any callable
    on [0, 1]. Upright means the orifice at ``y = 0``.
    """
    exact = None
    if isinstance(g, RevolutionProfile):
        from .clepsydra import moment

        up, down = moment(g, flipped=False), moment(g, flipped=True)
        exact = (up, down)
        if up == 0 or down == 0:
            raise ZeroVolume("profile has zero volume")
        m_up, m_down = float(up), float(down)
        ratio = max(up, down) / min(up, down)
        rho = float(ratio)
    else:
        f = as_vectorized(g)
        m_up = integrate(lambda s: f(s * s), [0.0, 1.0], tol=1e-14)[0]
        m_down = integrate(lambda s: f(1.0 - s * s), [0.0, 1.0], tol=1e-14)[0]
        if m_up <= 0 or m_down <= 0:
            raise ZeroVolume("profile has zero volume")
        rho = max(m_up, m_down) / min(m_up, m_down)
    scale = 2.0 * math.pi / K
    return TurnUpReport(scale * m_up, scale * m_down, rho, exact)


def monotone_theorem_check(g, n_samples: int = 1000, tol: float = 1e-10) -> float:
    """``int_0^1 g(1 - t^2) dt - int_0^1 g(t^2) dt``; positive for non-decreasing non-constant ``g``."""
    f = as_vectorized(g)
    y = np.linspace(0.0, 1.0, n_samples)
    vals = f(y)
    if (np.diff(vals) < -1e-12 * max(1.0, float(np.abs(vals).max()))).any():
        warnings.warn("g is not non-decreasing on the sample grid", stacklevel=2)
    return integrate(lambda t: f(1.0 - t * t) - f(t * t), [0.0, 1.0 / math.sqrt(2.0), 1.0], tol=tol)[0]


# Central-symmetry bound -------------------------------------------------------


def width(poly: ConvexPolyhedron, direction) -> float:
    z = poly.vertices @ as_unit(direction)
    return float(z.max() - z.min())


def min_width(poly: ConvexPolyhedron, grid: int = DEFAULT_GRID) -> tuple[float, np.ndarray]:
    """Smallest distance between parallel supporting planes, and its direction."""
    dirs = np.vstack([fibonacci_lattice(grid), poly.face_normals])
    z = poly.vertices @ dirs.T
    w = z.max(axis=0) - z.min(axis=0)
    fn = lambda d: width(poly, d)
    step = math.sqrt(4.0 * math.pi / grid)
    cands = [(float(w[i]), dirs[i]) for i in np.argsort(w, kind="stable")[:N_STARTS]]
    cands += [refine_direction(fn, d, step, 1.0)[::-1] for _, d in cands]
    v, d = _pick(cands, 1.0)
    return v, d


def symmetric_rho_bound(poly: ConvexPolyhedron, grid: int = DEFAULT_GRID) -> float:
    """Upper bound ``sqrt(2 D / d)`` on the Torricelli number of a centrally symmetric solid.

    ``D`` is the diameter (the largest width) and ``d`` the smallest width.

    Raises
    ------
    NotCentrallySymmetric
    """
    if not poly.is_centrally_symmetric():
        raise NotCentrallySymmetric("vertex set is not closed under reflection through its centre")
    d, _ = min_width(poly, grid)
    return math.sqrt(2.0 * poly.diameter / d)


# Rotation lemmas --------------------------------------------------------------


def _lemma1_f(t: float, s: float) -> Callable[[float], float]:
    return lambda u: 1.0 / math.sqrt(math.sin(t + u)) + 1.0 / math.sqrt(math.sin(s + u))


def _lemma1_domain(t: float, s: float) -> tuple[float, float]:
    if not (0.0 <= s <= math.pi and 0.0 <= t <= math.pi):
        raise ValueError("angles must lie in [0, pi]")
    if abs(s - t) < 1e-15:
        raise CoincidentPoints("P and Q coincide")
    return -min(s, t), math.pi - max(s, t)


def lemma_minimizer(t: float, s: float) -> float:
    """Rotation angle that levels the chord ``PQ``: ``pi/2 - (s + t)/2``."""
    _lemma1_domain(t, s)
    return math.pi / 2.0 - (s + t) / 2.0


def lemma1_numeric_argmin(t: float, s: float) -> float:
    """Golden-section argmin of ``1/sqrt(sin(t+u)) + 1/sqrt(sin(s+u))``."""
    lo, hi = _lemma1_domain(t, s)
    pad = 1e-9 * (hi - lo)
    return golden_section(_lemma1_f(t, s), lo + pad, hi - pad, xtol=1e-13)


def lemma1_derivative_sign_changes(t: float, s: float, n: int = 10_000) -> int:
    """Number of sign changes of ``f'`` sampled on the open domain."""
    lo, hi = _lemma1_domain(t, s)
    u = np.linspace(lo, hi, n + 2)[1:-1]
    fp = -np.cos(s + u) / (2 * np.sin(s + u) ** 1.5) - np.cos(t + u) / (2 * np.sin(t + u) ** 1.5)
    sg = np.sign(fp)
    sg = sg[sg != 0]
    return int((sg[1:] != sg[:-1]).sum())


@dataclass(frozen=True)
class Lemma2Result:
    u_min: float
    first: float
    second: float

    @property
    def equal_terms(self) -> bool:
        return abs(self.first - self.second) <= 1e-8 * max(1.0, abs(self.first), abs(self.second))


def lemma2_argmin(a: float, b: float, c: float, t: float, s: float, samples: int = 20_000) -> Lemma2Result:
    """Global minimiser over one period of
    ``1/sqrt(a cos(t+u) + b sin(t+u) + c) + 1/sqrt(a cos(s+u) + b sin(s+u) + c)``.

    Raises
    ------
    EmptyDomain
        No ``u`` makes both radicands positive.
    """

    def rad(x):
        return a * np.cos(x) + b * np.sin(x) + c

    def terms(u):
        return rad(t + u) ** -0.5, rad(s + u) ** -0.5

    def f(u):
        r1, r2 = rad(t + u), rad(s + u)
        if r1 <= 0 or r2 <= 0:
            return math.inf
        return r1**-0.5 + r2**-0.5

    def fprime(u):
        d1 = -a * math.sin(t + u) + b * math.cos(t + u)
        d2 = -a * math.sin(s + u) + b * math.cos(s + u)
        return -0.5 * d1 * rad(t + u) ** -1.5 - 0.5 * d2 * rad(s + u) ** -1.5

    u = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    r1, r2 = rad(t + u), rad(s + u)
    ok = (r1 > 0) & (r2 > 0)
    if not ok.any():
        raise EmptyDomain("no rotation keeps both radicands positive")
    vals = np.full(samples, np.inf)
    vals[ok] = r1[ok] ** -0.5 + r2[ok] ** -0.5
    k = int(np.argmin(vals))
    du = 2.0 * math.pi / samples
    lo, hi = u[k] - du, u[k] + du
    while not math.isfinite(f(lo)):
        lo = 0.5 * (lo + u[k])
    while not math.isfinite(f(hi)):
        hi = 0.5 * (hi + u[k])
    um = golden_section(f, lo, hi, xtol=1e-14)
    # polish on f' = 0 when the bracket straddles the critical point
    flo, fhi = fprime(lo), fprime(hi)
    if flo < 0 < fhi:
        um = brentq(fprime, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    first, second = terms(um)
    return Lemma2Result(float(um), float(first), float(second))


def lemma2_check(a: float, b: float, c: float, t: float, s: float) -> bool:
    """Whether the two terms agree (relative ``1e-8``) at the global minimiser."""
    return lemma2_argmin(a, b, c, t, s).equal_terms
