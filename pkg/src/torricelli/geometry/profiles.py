"""Area profiles ``A(h)`` and polynomial profiles of solids of revolution."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Union

import numpy as np

from ..errors import NegativeProfile, UnknownProfile
from .polyhedron import ConvexPolyhedron
from .slicing import SectionProfile

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT5 = math.sqrt(5.0)
SQRT6 = math.sqrt(6.0)
PHI = (1.0 + SQRT5) / 2.0


@dataclass(frozen=True)
class AreaProfile:
    """Cross-sectional area ``A(h)`` on ``[0, H]``.

    ``evaluator`` must accept numpy arrays. ``breakpoints`` mark interior
    heights where the analytic form changes; integrators split there.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    H: float
    breakpoints: tuple[float, ...] = ()
    label: str = ""

    def __post_init__(self):
        if not self.H > 0:
            raise ValueError(f"profile height must be positive, got {self.H!r}")
        bp = tuple(float(b) for b in self.breakpoints)
        if any(not (0.0 < b < self.H) for b in bp):
            raise ValueError("breakpoints must lie strictly inside (0, H)")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be sorted and distinct")
        object.__setattr__(self, "breakpoints", bp)

    def __call__(self, h):
        out = np.asarray(self.evaluator(np.asarray(h, dtype=float)), dtype=float)
        return float(out) if out.ndim == 0 else out

    @property
    def panels(self) -> tuple[float, ...]:
        return (0.0, *self.breakpoints, float(self.H))

    def flipped(self) -> "AreaProfile":
        """The same solid turned upside down: ``h -> A(H - h)``."""
        H = self.H
        return AreaProfile(
            lambda h: self.evaluator(H - np.asarray(h, dtype=float)),
            H,
            tuple(sorted(H - b for b in self.breakpoints)),
            f"{self.label} (flipped)" if self.label else "flipped",
        )

    def scaled(self, factor: float) -> "AreaProfile":
        """Profile of the solid scaled uniformly by ``factor``."""
        lam = float(factor)
        return AreaProfile(
            lambda h: lam**2 * self.evaluator(np.asarray(h, dtype=float) / lam),
            lam * self.H,
            tuple(lam * b for b in self.breakpoints),
            self.label,
        )


def area_profile(poly: ConvexPolyhedron, direction) -> AreaProfile:
    """Exact piecewise-quadratic ``A(h)`` of ``poly`` with ``direction`` pointing up."""
    sec = SectionProfile(poly, direction)
    d = sec.direction
    return AreaProfile(sec, sec.H, sec.breakpoints, f"mesh along ({d[0]:.6g}, {d[1]:.6g}, {d[2]:.6g})")


Term = tuple[Fraction, int, int]


@dataclass(frozen=True)
class RevolutionProfile:
    """``g(y) = sum c * y**m * (1 - y)**n`` on ``[0, 1]``; the solid is ``x**2 + z**2 = g(y)``."""

    terms: tuple[Term, ...]

    def __post_init__(self):
        clean = []
        for c, m, n in self.terms:
            m, n = int(m), int(n)
            if m < 0 or n < 0:
                raise ValueError("exponents must be non-negative")
            clean.append((Fraction(c), m, n))
        object.__setattr__(self, "terms", tuple(clean))

    @classmethod
    def of(cls, terms: Iterable[tuple]) -> "RevolutionProfile":
        return cls(tuple(terms))

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        for c, m, n in self.terms:
            out = out + float(c) * y**m * (1.0 - y) ** n
        return float(out) if out.ndim == 0 else out

    def flipped(self) -> "RevolutionProfile":
        """``y -> g(1 - y)``, the solid turned upside down."""
        return RevolutionProfile(tuple((c, n, m) for c, m, n in self.terms))

    def scaled(self, factor) -> "RevolutionProfile":
        f = Fraction(factor)
        return RevolutionProfile(tuple((f * c, m, n) for c, m, n in self.terms))

    def __add__(self, other: "RevolutionProfile") -> "RevolutionProfile":
        return RevolutionProfile(self.terms + other.terms)

    def power_coefficients(self) -> tuple[Fraction, ...]:
        """Exact coefficients ``a_k`` of ``g(y) = sum a_k y**k``."""
        deg = max((m + n for _, m, n in self.terms), default=0)
        a = [Fraction(0)] * (deg + 1)
        for c, m, n in self.terms:
            for j in range(n + 1):
                a[m + j] += c * comb(n, j) * (-1) ** j
        return tuple(a)

    def is_symmetric(self) -> bool:
        return self.power_coefficients() == self.flipped().power_coefficients()

    def __str__(self):
        parts = []
        for c, m, n in self.terms:
            factors = []
            if m:
                factors.append("y" + (f"^{m}" if m != 1 else ""))
            if n:
                factors.append("(1-y)" + (f"^{n}" if n != 1 else ""))
            if abs(c) != 1 or not factors:
                factors.insert(0, str(abs(c)))
            parts.append(("-" if c < 0 else "+") + "*".join(factors))
        return "".join(parts).lstrip("+") or "0"


ProfileFunction = Union[RevolutionProfile, Callable[[np.ndarray], np.ndarray]]


def check_nonnegative(g: ProfileFunction, samples: int = 10_000, tol: float = 1e-12) -> None:
    y = np.linspace(0.0, 1.0, samples + 1)
    vals = np.asarray(g(y), dtype=float)
    if vals.min() < -tol:
        k = int(vals.argmin())
        raise NegativeProfile(f"g({y[k]:.6g}) = {vals[k]:.6g} < 0")


def revolution_area_profile(profile: ProfileFunction, flipped: bool = False) -> AreaProfile:
    """``A(h) = pi g(h)`` (or ``pi g(1 - h)`` when flipped) on ``[0, 1]``."""
    check_nonnegative(profile)
    if flipped:
        ev = lambda h: math.pi * np.asarray(profile(1.0 - np.asarray(h, dtype=float)), dtype=float)
    else:
        ev = lambda h: math.pi * np.asarray(profile(np.asarray(h, dtype=float)), dtype=float)
    return AreaProfile(ev, 1.0, (), f"revolution {profile}{' flipped' if flipped else ''}")


@dataclass(frozen=True)
class PhysicalConstants:
    """Orifice and fluid constants; only ``K = k a sqrt(2 g)`` enters drain times."""

    k: float = 1.0
    a: float = 1.0
    g: float = 0.5
    density: float = 1.0

    def __post_init__(self):
        for name in ("k", "a", "g", "density"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def K(self) -> float:
        return self.k * self.a * math.sqrt(2.0 * self.g)

    @property
    def C(self) -> float:
        """``a sqrt(2 g)``, the energy-balance constant (``K / k``)."""
        return self.a * math.sqrt(2.0 * self.g)


# Closed-form catalog -----------------------------------------------------------

ICOSA_EDGE = 2.0
ICOSA_R = math.sqrt((5.0 + SQRT5) / 2.0)
ICOSA_r = (PHI + 1.0) / SQRT3
PENTAGON_AREA_2 = math.sqrt(5.0 * (5.0 + 2.0 * SQRT5))
ICOSA_C = 5.0 / 8.0 * math.sqrt(50.0 + 22.0 * SQRT5)
ICOSA_C_PRIME = 5.0 / 4.0 * (7.0 - 3.0 * SQRT5) * math.sqrt(5.0 + 2.0 * SQRT5)


def _piecewise(breaks, pieces):
    def ev(h):
        h = np.asarray(h, dtype=float)
        conds = [h < b for b in breaks] + [np.ones_like(h, dtype=bool)]
        out = np.select(conds, [p(h) for p in pieces])
        return np.maximum(out, 0.0)
    return ev


def _cube_diagonal() -> AreaProfile:
    H = SQRT3
    b1, b2 = SQRT3 / 3.0, 2.0 * SQRT3 / 3.0
    pieces = [
        lambda h: 1.5 * SQRT3 * h**2,
        lambda h: 1.5 * SQRT3 * (2.0 * SQRT3 * h - 1.0 - 2.0 * h**2),
        lambda h: 1.5 * SQRT3 * (SQRT3 - h) ** 2,
    ]
    return AreaProfile(_piecewise([b1, b2], pieces), H, (b1, b2), "cube-diagonal")


def _cube_face() -> AreaProfile:
    return AreaProfile(lambda h: np.ones_like(np.asarray(h, dtype=float)), 1.0, (), "cube-face")


def _octahedron_max() -> AreaProfile:
    H = SQRT6 / 3.0
    return AreaProfile(lambda h: SQRT3 / 4.0 * (1.0 + SQRT6 * h - 3.0 * h**2), H, (), "octahedron-max")


def _octahedron_min() -> AreaProfile:
    H = SQRT2
    pieces = [lambda h: 2.0 * h**2, lambda h: 2.0 * (H - h) ** 2]
    return AreaProfile(_piecewise([H / 2.0], pieces), H, (H / 2.0,), "octahedron-min")


def _tetrahedron_max() -> AreaProfile:
    H = math.sqrt(2.0 / 3.0)
    return AreaProfile(lambda h: 3.0 * SQRT3 / 8.0 * (H - h) ** 2, H, (), "tetrahedron-max")


def _tetrahedron_min() -> AreaProfile:
    H = math.sqrt(2.0 / 3.0)
    return AreaProfile(lambda h: 3.0 * SQRT3 / 8.0 * h**2, H, (), "tetrahedron-min")


def icosahedron_min_heights() -> tuple[float, float, float]:
    """``(h_s, h_s', H_min)`` for the vertex-down icosahedron of edge 2."""
    H = 2.0 * ICOSA_R
    hs = 2.0 * math.sqrt((5.0 - SQRT5) / 10.0)
    return hs, H - hs, H


def _icosahedron_min() -> AreaProfile:
    hs, hs2, H = icosahedron_min_heights()
    c, cp, P = ICOSA_C, ICOSA_C_PRIME, PENTAGON_AREA_2
    pieces = [
        lambda h: c * h**2,
        lambda h: P + cp * (h - hs) * (hs2 - h),
        lambda h: c * (H - h) ** 2,
    ]
    return AreaProfile(_piecewise([hs, hs2], pieces), H, (hs, hs2), "icosahedron-min")


_CATALOG = {
    "cube-diagonal": _cube_diagonal,
    "cube-face": _cube_face,
    "octahedron-max": _octahedron_max,
    "octahedron-min": _octahedron_min,
    "tetrahedron-max": _tetrahedron_max,
    "tetrahedron-min": _tetrahedron_min,
    "icosahedron-min": _icosahedron_min,
}

ANALYTIC_PROFILES = tuple(_CATALOG)


def analytic_profile(name: str) -> AreaProfile:
    """Closed-form ``A(h)`` for a Platonic solid in an extremal orientation.

    Edge length is 1 for the cube, octahedron and tetrahedron and 2 for the
    icosahedron. ``-max``/``-min`` name the orientation attaining the
    largest/smallest drainage time.
    """
    try:
        return _CATALOG[name]()
    except KeyError:
        raise UnknownProfile(f"unknown profile {name!r}; choose from {', '.join(_CATALOG)}") from None
