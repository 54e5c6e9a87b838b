"""Balanced clepsydrae: solids of revolution that drain equally fast either way up.

Everything polynomial is exact (``fractions.Fraction``); only the
trigonometric characterisation and the extension recipe use quadrature.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Callable, Optional

import numpy as np

from .errors import (
    DiscontinuousJoin,
    NegativeProfile,
    NonPositiveResult,
    ProfileSyntaxError,
    UnbalancedPerturbation,
)
from .geometry import RevolutionProfile
from .quadrature import as_vectorized, integrate

QUARTER_PI = math.pi / 4.0


# Exact moments ------------------------------------------------------------------


def _term_moment(m: int, n: int) -> Fraction:
    """``int_0^1 s**(2m) (1 - s**2)**n ds``."""
    return sum((Fraction(comb(n, j) * (-1) ** j, 2 * (m + j) + 1) for j in range(n + 1)), Fraction(0))


def _beta(a: int, b: int) -> Fraction:
    """``int_0^1 y**a (1 - y)**b dy``."""
    return Fraction(factorial(a) * factorial(b), factorial(a + b + 1))


def moment(profile: RevolutionProfile, flipped: bool = False) -> Fraction:
    """``int_0^1 g(s^2) ds`` (``g(1 - s^2)`` when flipped), exactly.

    Proportional to the drain time of the solid of revolution with the
    orifice at ``y = 0`` (at ``y = 1`` when flipped).
    """
    total = Fraction(0)
    for c, m, n in profile.terms:
        total += c * (_term_moment(n, m) if flipped else _term_moment(m, n))
    return total


def potential_energy(profile: RevolutionProfile, flipped: bool = False) -> Fraction:
    """``int_0^1 g(y) y dy`` (``g(1 - y)`` when flipped); potential energy over ``pi * density``."""
    return sum(
        (c * (_beta(n + 1, m) if flipped else _beta(m + 1, n)) for c, m, n in profile.terms),
        Fraction(0),
    )


def volume(profile: RevolutionProfile) -> Fraction:
    """``int_0^1 g``; the solid's volume over ``pi``."""
    return sum((c * _beta(m, n) for c, m, n in profile.terms), Fraction(0))


def imbalance(profile: RevolutionProfile) -> Fraction:
    """Upright moment minus flipped moment; zero iff the turn-up number is 1."""
    return moment(profile, False) - moment(profile, True)


# Balancing two terms ------------------------------------------------------------


@dataclass(frozen=True)
class BalanceSolution:
    C: Fraction
    symmetric: bool = False


def _delta(term: tuple[int, int]) -> Fraction:
    m, n = term
    return _term_moment(m, n) - _term_moment(n, m)


def solve_balanced(u1: tuple[int, int], u2: tuple[int, int]) -> Optional[BalanceSolution]:
    """``C`` making ``C * y**m (1-y)**n + y**p (1-y)**q`` balanced.

    ``u1 = (m, n)`` and ``u2 = (p, q)``. Returns ``None`` when no ``C``
    works; when both terms are already balanced any ``C`` does, and the
    solution is ``C = 1`` flagged ``symmetric``.
    """
    d1, d2 = _delta(u1), _delta(u2)
    if d1 == 0:
        return BalanceSolution(Fraction(1), True) if d2 == 0 else None
    return BalanceSolution(-d2 / d1)


def _polyder(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    return tuple(k * a for k, a in enumerate(coeffs))[1:] or (Fraction(0),)


def _polyval(coeffs, y):
    return sum(a * y**k for k, a in enumerate(coeffs))


@dataclass(frozen=True)
class ConvexityCertificate:
    """Sampled concavity plus exact endpoint slopes.

    ``smooth_of_revolution`` holds when the surface has a tangent plane at
    both poles, which needs ``g'(0) > 0`` and ``g'(1) < 0``.
    """

    concave: bool
    slope_0: Fraction
    slope_1: Fraction
    smooth_of_revolution: bool

    def to_dict(self) -> dict:
        return {
            "concave": self.concave,
            "slope_0": str(self.slope_0),
            "slope_1": str(self.slope_1),
            "smooth_of_revolution": self.smooth_of_revolution,
        }


def convexity_certificate(profile: RevolutionProfile, samples: int = 10_000) -> ConvexityCertificate:
    a = profile.power_coefficients()
    d1 = _polyder(a)
    d2 = _polyder(d1)
    y = np.linspace(0.0, 1.0, samples)
    gpp = np.polynomial.polynomial.polyval(y, [float(c) for c in d2])
    scale = max(1.0, max(abs(float(c)) for c in a))
    concave = bool((gpp <= 1e-12 * scale).all())
    s0, s1 = _polyval(d1, Fraction(0)), _polyval(d1, Fraction(1))
    return ConvexityCertificate(concave, s0, s1, s0 > 0 and s1 < 0)


def check_positive_interior(profile: RevolutionProfile, samples: int = 10_000) -> None:
    """``g(0) = g(1) = 0`` exactly and ``g > 0`` at ``samples`` interior points.

    A sampling heuristic; no root isolation is attempted.
    """
    a = profile.power_coefficients()
    if a[0] != 0 or sum(a) != 0:
        raise NegativeProfile("a clepsydra profile must vanish at both poles")
    y = np.linspace(0.0, 1.0, samples + 2)[1:-1]
    vals = np.asarray(profile(y))
    if vals.min() <= 0:
        k = int(vals.argmin())
        raise NegativeProfile(f"g({y[k]:.6g}) = {vals[k]:.6g} is not positive")


@dataclass(frozen=True)
class BalancedProfile:
    profile: RevolutionProfile
    residual: Fraction
    certificate: ConvexityCertificate

    def to_dict(self) -> dict:
        return {
            "profile": str(self.profile),
            "terms": profile_to_json(self.profile)["terms"],
            "residual": str(self.residual),
            "moment": str(moment(self.profile)),
            "certificate": self.certificate.to_dict(),
        }


def balanced_profile(u1: tuple[int, int], u2: tuple[int, int]) -> Optional[BalancedProfile]:
    """Integer-coefficient balanced combination of two terms, or ``None``.

    With ``C = P/Q`` in lowest terms the profile is ``P u1 + Q u2``.

    Raises
    ------
    NegativeProfile
        The balanced combination is not positive on (0, 1).
    """
    sol = solve_balanced(u1, u2)
    if sol is None:
        return None
    C = sol.C
    g = RevolutionProfile(((Fraction(C.numerator), *u1), (Fraction(C.denominator), *u2)))
    check_positive_interior(g)
    return BalancedProfile(g, imbalance(g), convexity_certificate(g))


def enumerate_balanced(bound: int, positive_only: bool = True) -> list[BalancedProfile]:
    """All balanced two-term integer profiles with exponents in ``1..bound``.

    Sorted by largest coefficient, then coefficient sum, then exponents.
    Terms balanced on their own and symmetric sums (such as mirror pairs) are
    skipped. The order is a convenience and says nothing about minimality.
    """
    terms = [(m, n) for m, n in product(range(1, bound + 1), repeat=2) if m != n]
    found = []
    for i, u1 in enumerate(terms):
        for u2 in terms[i + 1 :]:
            sol = solve_balanced(u1, u2)
            if sol is None or (positive_only and sol.C <= 0):
                continue
            try:
                bp = balanced_profile(u1, u2)
            except NegativeProfile:
                continue
            if bp is not None and not bp.profile.is_symmetric():
                found.append(bp)

    def key(bp: BalancedProfile):
        cs = [abs(c) for c, _, _ in bp.profile.terms]
        return (max(cs), sum(cs), [t[1:] for t in bp.profile.terms])

    return sorted(found, key=key)


# Characterisation and extension ------------------------------------------------


def characterization_residual(g, tol: float = 1e-13) -> float:
    """``int_0^{pi/4} [g(cos^2 t) - g(sin^2 t)] cos(pi/4 + t) dt``.

    Equals ``(flipped moment - upright moment) / sqrt(2)``, so it vanishes
    exactly for balanced profiles.
    """
    f = as_vectorized(g)
    integrand = lambda t: (f(np.cos(t) ** 2) - f(np.sin(t) ** 2)) * np.cos(QUARTER_PI + t)
    return integrate(integrand, [0.0, QUARTER_PI], tol=tol)[0]


def _weight_inner(h, tol: float = 1e-14) -> float:
    hv = as_vectorized(h)
    return integrate(lambda t: hv(t) * np.cos(QUARTER_PI + t), [0.0, QUARTER_PI], tol=tol)[0]


def project_perturbation(bump: Callable) -> Callable:
    """``bump`` minus its L2 projection onto ``cos(pi/4 + t)`` on [0, pi/4].

    The result satisfies the balance condition of :func:`extend_profile`;
    it keeps the value at ``pi/4`` since the weight vanishes there.
    """
    b = as_vectorized(bump)
    w = lambda t: np.cos(QUARTER_PI + t)
    ww = integrate(lambda t: w(t) ** 2, [0.0, QUARTER_PI], tol=1e-15)[0]
    alpha = _weight_inner(b) / ww
    return lambda t: b(np.asarray(t, dtype=float)) - alpha * w(np.asarray(t, dtype=float))


@dataclass(frozen=True)
class ExtendedProfile:
    """``g`` on [0, 1] built from its lower half and a balanced perturbation."""

    g_half: Callable
    h: Callable

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        lower = np.minimum(y, 0.5)
        upper = np.clip(y, 0.5, 1.0)
        gl = self.g_half(lower)
        gu = self.g_half(1.0 - upper) + self.h(np.arccos(np.sqrt(upper)))
        out = np.where(y <= 0.5, gl, gu)
        return float(out) if out.ndim == 0 else out


def extend_profile(g_half, h, samples: int = 10_000, tol: float = 1e-12) -> ExtendedProfile:
    """Balanced profile equal to ``g_half`` on [0, 1/2].

    For ``y = cos^2 t > 1/2`` the profile is ``g_half(sin^2 t) + h(t)``.

    Raises
    ------
    DiscontinuousJoin
        ``h(pi/4) != 0``.
    UnbalancedPerturbation
        ``h`` is not orthogonal to ``cos(pi/4 + t)`` on [0, pi/4].
    NonPositiveResult
        ``g_half`` or the extended upper half is not positive.
    """
    gh = as_vectorized(g_half)
    hv = as_vectorized(h)
    if abs(float(hv(np.array([QUARTER_PI]))[0])) > tol:
        raise DiscontinuousJoin("h(pi/4) must vanish")
    bal = _weight_inner(hv)
    if abs(bal) > tol:
        raise UnbalancedPerturbation(f"weighted integral of h is {bal:.3g}, not 0")
    y = np.linspace(0.0, 0.5, samples + 1)[1:]
    if (gh(y) <= 0).any():
        raise NonPositiveResult("g_half must be positive on (0, 1/2]")
    t = np.linspace(0.0, QUARTER_PI, samples + 1)[1:]
    if (gh(np.sin(t) ** 2) + hv(t) <= 0).any():
        raise NonPositiveResult("extension is not positive on (1/2, 1)")
    return ExtendedProfile(gh, hv)


# Profile DSL ------------------------------------------------------------------


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split on top-level '+', ',' and '-'; returns (sign, body) pairs."""
    out, buf, sign, depth = [], "", 1, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ProfileSyntaxError(f"unbalanced ')' at position {i}")
        if depth == 0 and ch in "+,-":
            if buf:
                out.append((sign, buf))
            elif out or ch == ",":
                raise ProfileSyntaxError(f"empty term before position {i}")
            buf, sign = "", (-1 if ch == "-" else 1)
            continue
        buf += ch
    if depth:
        raise ProfileSyntaxError("unbalanced '('")
    if not buf:
        raise ProfileSyntaxError("profile ends without a term")
    out.append((sign, buf))
    return out


def _exponent(piece: str, base: str) -> int:
    if piece == base:
        return 1
    if piece.startswith(base + "^"):
        e = piece[len(base) + 1 :]
        if e.isdigit():
            return int(e)
    raise ProfileSyntaxError(f"bad factor {piece!r}")


def parse_profile(text: str) -> RevolutionProfile:
    """Parse ``c*y^m*(1-y)^n`` terms joined by '+', '-' or ','.

    ``c`` is an integer or ``p/q``; it and either factor may be omitted.
    """
    src = "".join(text.split())
    if not src:
        raise ProfileSyntaxError("empty profile")
    terms = []
    for sign, body in _split_terms(src):
        pieces = body.split("*")
        c = Fraction(1)
        if pieces and pieces[0] and (pieces[0][0].isdigit()):
            lit = pieces.pop(0)
            num, _, den = lit.partition("/")
            if not num.isdigit() or (den and not den.isdigit()) or lit.endswith("/"):
                raise ProfileSyntaxError(f"bad coefficient {lit!r}")
            if den and int(den) == 0:
                raise ProfileSyntaxError("zero denominator")
            c = Fraction(int(num), int(den) if den else 1)
        m = n = None
        for piece in pieces:
            if piece.startswith("(1-y)"):
                if n is not None:
                    raise ProfileSyntaxError("repeated (1-y) factor")
                n = _exponent(piece, "(1-y)")
            elif piece.startswith("y"):
                if m is not None:
                    raise ProfileSyntaxError("repeated y factor")
                m = _exponent(piece, "y")
            else:
                raise ProfileSyntaxError(f"bad factor {piece!r}")
        terms.append((sign * c, m or 0, n or 0))
    return RevolutionProfile(tuple(terms))


def profile_to_json(profile: RevolutionProfile) -> dict:
    return {"terms": [[c.numerator, c.denominator, m, n] for c, m, n in profile.terms]}


def profile_from_json(data) -> RevolutionProfile:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return RevolutionProfile(tuple((Fraction(int(a), int(b)), int(m), int(n)) for a, b, m, n in data["terms"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ProfileSyntaxError(f"bad profile JSON: {exc}") from None


SMOOTH_BALANCED = "29*y^2*(1-y)+33*y*(1-y)^4"
POINTED_BALANCED = "13*y^2*(1-y)^6+9*y^3*(1-y)^2"
