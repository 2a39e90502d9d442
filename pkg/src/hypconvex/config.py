"""Numerical tolerances used across the package.

Every module reads its thresholds from :data:`TOL`; the command line can
override individual entries with ``--tol NAME=VALUE``.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    hyperboloid: float = 1e-9        # |<x,x> + 1| for hyperboloid points
    lorentz: float = 1e-9            # ||A J A^T - J||_inf
    orthogonal: float = 1e-9         # ||T^T T - I||_inf
    null_vector: float = 1e-12       # |<u,u>| below this is null
    zero_direction: float = 1e-12    # spatial norm below this is the apex
    radial_angle: float = 1e-12      # two directions closer than this share a ray
    pogorelov_inverse: float = 1e-9
    length_defect: float = 1e-9
    coplanar: float = 1e-9           # hull face merging
    unit_norm: float = 1e-12
    shear_equal: float = 1e-8        # max |log shear| defect for ShearEqual
    mobius_det: float = 1e-12
    gauge_offset: float = 1e-12      # facet offsets must exceed this
    facet_incidence: float = 1e-9
    direction_separation: float = 1e-9
    origin_in_hull: float = 1e-10
    min_norm_residual: float = 1e-10
    antipodal: float = 1e-9
    surface_convexity: float = 1e-9
    puncture_radius: float = 1e-6    # relative to the surface diameter

    def override(self, **changes: float) -> "Tolerances":
        known = {f.name for f in fields(self)}
        unknown = set(changes) - known
        if unknown:
            raise KeyError(f"unknown tolerance(s): {', '.join(sorted(unknown))}")
        return replace(self, **{k: float(v) for k, v in changes.items()})


TOL = Tolerances()


def set_tolerances(tol: Tolerances) -> None:
    """Replace the process-wide tolerance table."""
    global TOL
    TOL = tol


def get_tolerances() -> Tolerances:
    return TOL
