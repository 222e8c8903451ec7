"""Homogeneous quasi-norms on H^n: the gauge norm and the CC norm.

Both norms are symmetric (N(xi) = N(xi^-1)) and 1-homogeneous under the
anisotropic dilations; the induced left-invariant distances are
d(a, b) = N(b^-1 a).
"""

from __future__ import annotations

import numpy as np

from .group import HeisenbergPoint, inverse, multiply
from .solvers import mu_angle, _sinc

__all__ = [
    "gauge_norm",
    "gauge_norm_rt",
    "cc_norm",
    "cc_norm_rt",
    "gauge_distance",
    "cc_distance",
]

# Below this horizontal radius (relative to sqrt|t|) the closed axis formulas
# are used; the angle equation degenerates as t/r^2 -> infinity.
_AXIS_SWITCH = 1e-12


def gauge_norm_rt(r, t):
    """Gauge norm ((r^2)^2 + t^2)^(1/4) in cylindrical coordinates."""
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    out = np.hypot(r * r, t) ** 0.5
    return out if out.ndim else float(out)


def gauge_norm(xi: HeisenbergPoint) -> float:
    """Gauge norm N(xi) = ((|x|^2 + |y|^2)^2 + t^2)^(1/4)."""
    return gauge_norm_rt(xi.r, xi.t)


def cc_norm_rt(r, t):
    """CC norm of a point with horizontal radius r and height t.

    Off the center: (phi/sin phi) r with mu(phi) = |t|/r^2; on the center
    (r below the axis switch): sqrt(pi |t|); at t = 0 exactly r.
    """
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    r_b, t_b = np.broadcast_arrays(r, t)
    at = np.abs(t_b)
    on_axis = r_b < _AXIS_SWITCH * np.maximum(1.0, np.sqrt(at))
    r_safe = np.where(on_axis, 1.0, r_b)
    c = at / (r_safe * r_safe)
    phi = mu_angle(np.where(on_axis, 0.0, c))
    general = r_b * (1.0 / _sinc(phi))  # phi/sin(phi) * r, exact at phi = 0
    out = np.where(on_axis, np.sqrt(np.pi * at), general)
    return out if out.ndim else float(out)


def cc_norm(xi: HeisenbergPoint) -> float:
    """Carnot-Caratheodory norm (distance to the group identity)."""
    return cc_norm_rt(xi.r, xi.t)


def gauge_distance(a: HeisenbergPoint, b: HeisenbergPoint) -> float:
    """Left-invariant gauge pseudodistance N(b^-1 a)."""
    return gauge_norm(multiply(inverse(b), a))


def cc_distance(a: HeisenbergPoint, b: HeisenbergPoint) -> float:
    """Left-invariant CC distance rho(b^-1 a)."""
    return cc_norm(multiply(inverse(b), a))
