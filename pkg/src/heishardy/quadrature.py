"""Midpoint tensor-product quadrature with power grading and Richardson levels.

The Hardy integrands carry an integrable d^(-1+p*eps) singularity along the
boundary edge of the integration window.  A power map t = T * tau^k (chosen
so that the transformed integrand behaves like tau^0.6 near 0) restores
enough regularity for the midpoint rule; error estimates come from two grid
doublings.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "smoothstep",
    "smoothstep_slope",
    "ramp_up",
    "midpoints",
    "power_graded",
    "grading_exponent",
]


def smoothstep(z):
    """Quintic smoothstep: 0 for z <= 0, 1 for z >= 1, C^2 at both ends."""
    z = np.clip(np.asarray(z, dtype=float), 0.0, 1.0)
    return z * z * z * (10.0 + z * (6.0 * z - 15.0))


def smoothstep_slope(z):
    """Derivative of `smoothstep`; 30 z^2 (1-z)^2 on [0, 1], else 0."""
    z = np.asarray(z, dtype=float)
    inside = (z > 0.0) & (z < 1.0)
    zc = np.where(inside, z, 0.0)
    return np.where(inside, 30.0 * zc * zc * (1.0 - zc) ** 2, 0.0)


def ramp_up(z, q1: float, q2: float):
    """(value, slope) of the ramp that is 0 for z <= q1 and 1 for z >= q2."""
    if not q2 > q1 >= 0.0:
        raise ValueError("need 0 <= q1 < q2")
    w = q2 - q1
    u = (np.asarray(z, dtype=float) - q1) / w
    return smoothstep(u), smoothstep_slope(u) / w


def midpoints(a: float, b: float, m: int):
    """Midpoint nodes and uniform weights on [a, b]."""
    m = int(m)
    h = (b - a) / m
    x = a + h * (np.arange(m) + 0.5)
    return x, np.full(m, h)


def power_graded(T: float, k: int, m: int):
    """Midpoint nodes/weights for (0, T] under the map t = T tau^k.

    Nodes cluster at 0; weights carry the Jacobian T k tau^(k-1).
    """
    tau, w = midpoints(0.0, 1.0, m)
    t = T * tau**k
    return t, w * T * k * tau ** (k - 1)


def grading_exponent(p: float, eps: float, cap: int = 16) -> int:
    """Grading power k so the mapped edge integrand behaves like tau^0.6."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    return int(min(cap, max(3, np.ceil(1.6 / (p * eps)))))
