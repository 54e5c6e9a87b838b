import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tests import oracles
from torricelli.drainage import (
    TimeMap,
    center_height,
    drainage_time,
    drainage_time_surface,
    fill_fraction,
    height_at,
    partial_time,
    potential_energy,
    rk_cross_check,
    simulate,
    symmetric_bounds,
    verify_energy_identity,
    volume,
)
from torricelli.errors import DegenerateProfile, OutOfRange
from torricelli.geometry import (
    PLATONIC,
    AreaProfile,
    PhysicalConstants,
    RevolutionProfile,
    analytic_profile,
    area_profile,
    box,
    platonic,
    revolution_area_profile,
)

SQRT2, SQRT3 = math.sqrt(2), math.sqrt(3)
unit_vectors = st.tuples(*[st.floats(-1, 1)] * 3).filter(lambda v: np.linalg.norm(v) > 0.1)
ONE = AreaProfile(lambda h: np.ones_like(h), 1.0, (), "constant")
CONE = revolution_area_profile(RevolutionProfile.of([(1, 2, 0)]))


def test_constant_profile():
    rep = drainage_time(ONE)
    assert rep.T == pytest.approx(2.0, abs=1e-14)
    assert rep.to_dict()["T"] == rep.T
    assert drainage_time(ONE, K=4.0).T == pytest.approx(0.5, abs=1e-14)


def test_cone_times():
    # pi int_0^1 s^4 ds and pi int_0^1 (1 - s^2)^2 ds, doubled
    assert drainage_time(CONE).T == pytest.approx(2 * math.pi / 5, abs=1e-13)
    assert drainage_time(CONE.flipped()).T == pytest.approx(16 * math.pi / 15, abs=1e-13)


@pytest.mark.parametrize(
    "name,expected",
    [
        ("cube-diagonal", 8 * 3**0.25 / 5 * (1 + 3 * SQRT3 - 4 * SQRT2)),
        ("cube-face", 2.0),
        ("octahedron-max", 19 / (5 * 6**0.75)),
        ("octahedron-min", 8 / 15 * (8 * 2**0.25 - 5 * 2**0.75)),
        ("tetrahedron-max", 4 * 2**0.25 / (5 * 3**0.75)),
        ("tetrahedron-min", 3**0.25 / (5 * 2**0.75)),
    ],
)
def test_catalog_times(name, expected):
    prof = analytic_profile(name)
    assert drainage_time(prof).T == pytest.approx(expected, abs=1e-12)
    assert drainage_time(prof).T == pytest.approx(oracles.drain_time_quad(prof, prof.H, prof.breakpoints), abs=1e-12)


@pytest.mark.parametrize("name", PLATONIC)
@given(d=unit_vectors)
def test_mesh_time_matches_quadpack(name, d):
    prof = area_profile(platonic(name, 1.0), d)
    ref = oracles.drain_time_quad(prof, prof.H, prof.breakpoints)
    assert drainage_time(prof).T == pytest.approx(ref, abs=1e-11)


@pytest.mark.parametrize("name", PLATONIC)
def test_surface_form_matches(name):
    poly = platonic(name, 1.0)
    for d in oracles.random_directions(10, seed=7):
        a = drainage_time(area_profile(poly, d)).T
        b = drainage_time_surface(poly, d).T
        assert b == pytest.approx(a, abs=1e-10)


def test_surface_form_axis_aligned():
    # faces exactly horizontal and vertical
    assert drainage_time_surface(platonic("cube"), (0, 0, 1)).T == pytest.approx(2.0, abs=1e-13)
    assert drainage_time_surface(box(1, 2, 3), (0, 1, 0), K=2.0).T == pytest.approx(3 * math.sqrt(2), abs=1e-12)


def test_partial_time():
    assert partial_time(ONE, 1.0, 0.25) == pytest.approx(1.0, abs=1e-14)
    assert partial_time(ONE, 1.0, 0.0) == 0.0
    assert partial_time(ONE, 1.0, 1.0) == pytest.approx(drainage_time(ONE).T)
    with pytest.raises(OutOfRange):
        partial_time(ONE, 1.0, 1.5)
    with pytest.raises(ValueError):
        partial_time(ONE, 0.0, 0.5)


@given(x=st.floats(0, 1), y=st.floats(0, 1))
def test_partial_time_monotone(x, y):
    prof = analytic_profile("cube-diagonal")
    a, b = sorted((x, y))
    assert partial_time(prof, 1.0, a * prof.H) <= partial_time(prof, 1.0, b * prof.H) + 1e-14


def test_fill_fractions():
    diag = analytic_profile("cube-diagonal")
    assert fill_fraction(diag, 0.0, 5 * SQRT3 / 9) == pytest.approx(101 / 162, abs=1e-12)
    face = analytic_profile("octahedron-max")
    assert fill_fraction(face, 0.0, face.H / 2) == pytest.approx(0.5, abs=1e-13)
    with pytest.raises(OutOfRange):
        fill_fraction(face, 0.5, 0.1)


def test_potential_energy_is_volume_times_centroid_height():
    diag = analytic_profile("cube-diagonal")
    assert potential_energy(diag) == pytest.approx(SQRT3 / 2, abs=1e-13)
    cube = platonic("cube")
    d = np.array([0.2, 0.5, 0.8])
    assert potential_energy(area_profile(cube, d)) == pytest.approx(cube.volume * center_height(cube, d), abs=1e-12)


def test_physical_constants():
    c = PhysicalConstants()
    assert c.K == 1.0 and c.C == 1.0
    c = PhysicalConstants(k=0.6, a=0.01, g=9.81)
    assert c.K == pytest.approx(0.6 * 0.01 * math.sqrt(19.62))
    with pytest.raises(ValueError):
        PhysicalConstants(k=0)


@pytest.mark.parametrize("name", ["cube", "octahedron", "icosahedron"])
def test_symmetric_bounds(name):
    poly = platonic(name, 1.0)
    for d in oracles.random_directions(20, seed=11):
        lo, hi = symmetric_bounds(poly.volume, center_height(poly, d))
        T = drainage_time(area_profile(poly, d)).T
        assert lo - 1e-12 <= T <= hi + 1e-12


def test_scaling_law():
    cube = platonic("cube")
    for d in [(0, 0, 1), (1, 1, 1), (0.3, -0.1, 0.7)]:
        T = drainage_time(area_profile(cube, d)).T
        for lam in (0.5, 2.0, 3.0):
            assert drainage_time(area_profile(cube.scaled(lam), d)).T == pytest.approx(lam**2.5 * T, abs=1e-10)


def test_constant_trajectory():
    t = np.linspace(0, 2, 100)
    assert np.max(np.abs(height_at(ONE, 1.0, t) - (1 - t / 2) ** 2)) < 1e-12
    assert height_at(ONE, 1.0, 5.0) == 0.0
    traj = simulate(ONE, n_samples=5, cross_check=True)
    assert traj.T == pytest.approx(2.0)
    assert traj.rk_discrepancy < 1e-7
    assert np.all(np.diff(traj.h) < 0) and np.all(np.diff(traj.t) > 0)
    lines = traj.to_csv().splitlines()
    assert lines[0] == "t,h" and len(lines) == 6


def test_timemap_inverts():
    tm = TimeMap(analytic_profile("icosahedron-min"))
    h = np.linspace(0, tm.profile.H, 40)
    assert np.allclose(tm.height_at(tm.time_at(h)), h, atol=1e-10)


@pytest.mark.parametrize("prof", [ONE, CONE, CONE.flipped(), analytic_profile("cube-diagonal")], ids=str)
def test_energy_identity(prof):
    assert verify_energy_identity(prof) < 1e-8


def test_rk_cross_check():
    prof = analytic_profile("tetrahedron-max")
    h = np.linspace(prof.H, 0, 20)
    assert rk_cross_check(prof, 1.0, h) < 1e-7


def test_degenerate_profile_rejected():
    gap = AreaProfile(lambda h: np.where(np.abs(h - 0.5) < 0.1, 0.0, 1.0), 1.0)
    with pytest.raises(DegenerateProfile):
        simulate(gap)


def test_volume_of_mesh_profile():
    poly = platonic("icosahedron", 2.0)
    assert volume(area_profile(poly, (0.1, 0.2, 0.3))) == pytest.approx(poly.volume, abs=1e-11)
