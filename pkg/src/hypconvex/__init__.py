"""Hyperbolic and Euclidean convex-geometry kernels.

Submodules:

- minkowski, isometry: the hyperboloid model and its isometries
- pogorelov: the map pairing hyperbolic with Euclidean point pairs
- delaunay, dome: planar Delaunay triangulations, ideal hulls and shears
- gauge: gauge functions and their convex extension
- surface_metric: intrinsic distances on convex surfaces and doubles
"""
from . import config, errors
from .config import Tolerances, get_tolerances, set_tolerances

__version__ = "0.1.0"

__all__ = ["config", "errors", "Tolerances", "get_tolerances", "set_tolerances"]
