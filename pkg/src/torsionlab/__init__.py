"""Numerical laboratory for perimeter-torsion shape functionals on planar domains."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .functionals import ShapeMeasures, alpha_q, f_half_bounds, f_q
from .geometry import ConvexPolygon2D, Cuboid, Ellipsoid
from .torsion import torsion_ball, torsion_ellipsoid, torsion_rectangle_series

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "ShapeMeasures",
    "alpha_q",
    "f_half_bounds",
    "f_q",
    "ConvexPolygon2D",
    "Cuboid",
    "Ellipsoid",
    "torsion_ball",
    "torsion_ellipsoid",
    "torsion_rectangle_series",
    "__version__",
]
