from .meshio import load_mesh, mesh_to_json, parse_json, parse_obj, save_mesh_json
from .polyhedron import EPS_GEOM, ConvexPolyhedron, Direction, as_unit, support_extents, validate_mesh
from .profiles import (
    ANALYTIC_PROFILES,
    ICOSA_C,
    ICOSA_C_PRIME,
    ICOSA_R,
    ICOSA_r,
    AreaProfile,
    PhysicalConstants,
    RevolutionProfile,
    analytic_profile,
    area_profile,
    icosahedron_min_heights,
    revolution_area_profile,
)
from .slicing import SectionProfile, cross_section_area, section_polygon
from .solids import PLATONIC, box, circumradius, convex_hull, inradius, paccioli_vertices, platonic, solid

__all__ = [
    "ANALYTIC_PROFILES", "EPS_GEOM", "ICOSA_C", "ICOSA_C_PRIME", "ICOSA_R", "ICOSA_r", "PLATONIC", "AreaProfile", "ConvexPolyhedron", "Direction",
    "PhysicalConstants", "RevolutionProfile", "SectionProfile", "analytic_profile", "area_profile",
    "as_unit", "box", "circumradius", "convex_hull", "cross_section_area", "icosahedron_min_heights",
    "inradius", "load_mesh", "mesh_to_json", "paccioli_vertices", "parse_json", "parse_obj",
    "platonic", "revolution_area_profile", "save_mesh_json", "section_polygon", "solid",
    "support_extents", "validate_mesh",
]
