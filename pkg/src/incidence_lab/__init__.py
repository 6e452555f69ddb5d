"""Exact point-plane incidence tools over prime fields.

Points and planes of F_p^3 are mapped to lines so that incidences become
line-line intersections; the package also fits quadrics and interpolation
surfaces through lines and counts both sides of the incidence bound.
"""

__version__ = "0.1.0"

from .ff import FieldElement, PrimeField, nullspace
from .geom import AffineMap, Line3, Plane3, Point3
from .counting import Instance, IncidenceReport, report
from .rng import Pcg32

__all__ = [
    "AffineMap",
    "FieldElement",
    "IncidenceReport",
    "Instance",
    "Line3",
    "Pcg32",
    "Plane3",
    "Point3",
    "PrimeField",
    "nullspace",
    "report",
]
