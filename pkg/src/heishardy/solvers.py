"""Scalar equation solvers behind the quasi-norms and boundary distances.

Three strictly monotone scalar equations recur throughout the toolkit:

    s^3 + 2s = c                                on R        (gauge distance)
    mu(phi)  = (2 phi - sin 2phi)/(2 sin^2 phi) on (0, pi)  (point CC norm)
    Q(phi)   = (2 phi + sin 2phi)/(2 cos^2 phi) on (0, pi/2) (half-space CC)

All are solved by a safeguarded Newton iteration that maintains a bisection
bracket, so convergence never depends on the quality of the seed.  The
functions accept scalars or numpy arrays and solve elementwise.

Near the interval endpoints the target functions become extremely steep, so
the best representable phi can still leave a residual of a few ulps times the
local derivative; residual contracts should therefore be read relative to
max(1, c) and checked away from degenerate magnitudes of c.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CCAngle",
    "mu",
    "mu_prime",
    "q_func",
    "q_prime",
    "solve_cubic_s",
    "mu_angle",
    "q_angle",
    "solve_mu",
    "solve_q_phi",
    "newton_bisect",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class CCAngle:
    """An angle solving one of the CC equations, with its residual."""

    phi: float
    residual: float


def _sinc(x):
    """sin(x)/x, exact to machine precision at x = 0."""
    return np.sinc(np.asarray(x) / np.pi)


def mu(phi):
    """mu(phi) = (2 phi - sin 2phi) / (2 sin^2 phi), stable for small phi.

    The numerator is evaluated through its power series below phi = 0.1 to
    avoid the catastrophic cancellation of 2 phi - sin 2phi.
    """
    phi = np.asarray(phi, dtype=float)
    small = np.abs(phi) < 0.1
    ps = np.where(small, phi, 0.1)
    p2 = ps * ps
    # (2p - sin 2p)/p^3 = 4/3 - 4 p^2/15 + 8 p^4/315 - 8 p^6/2835 + ...
    series = 4.0 / 3.0 + p2 * (-4.0 / 15.0 + p2 * (8.0 / 315.0 - p2 * 8.0 / 2835.0))
    pl = np.where(small, 1.0, phi)
    direct = (2.0 * pl - np.sin(2.0 * pl)) / (pl * pl * pl)
    ratio = np.where(small, series, direct)  # (2phi - sin 2phi)/phi^3
    s = _sinc(phi)
    out = phi * ratio / (2.0 * s * s)
    return out if out.ndim else float(out)


def mu_prime(phi):
    """mu'(phi) = 2 (sin phi - phi cos phi) / sin^3 phi."""
    phi = np.asarray(phi, dtype=float)
    small = np.abs(phi) < 0.1
    ps = np.where(small, phi, 0.1)
    p2 = ps * ps
    # (sin p - p cos p)/p^3 = 1/3 - p^2/30 + p^4/840 - ...
    series = 1.0 / 3.0 + p2 * (-1.0 / 30.0 + p2 / 840.0)
    pl = np.where(small, 1.0, phi)
    direct = (np.sin(pl) - pl * np.cos(pl)) / (pl * pl * pl)
    ratio = np.where(small, series, direct)
    s = _sinc(phi)
    out = 2.0 * ratio / (s * s * s)
    return out if out.ndim else float(out)


def q_func(phi):
    """Q(phi) = (2 phi + sin 2phi) / (2 cos^2 phi); no cancellation anywhere."""
    phi = np.asarray(phi, dtype=float)
    c = np.cos(phi)
    out = (2.0 * phi + np.sin(2.0 * phi)) / (2.0 * c * c)
    return out if out.ndim else float(out)


def q_prime(phi):
    """Q'(phi) = 2 (cos phi + phi sin phi) / cos^3 phi."""
    phi = np.asarray(phi, dtype=float)
    c = np.cos(phi)
    out = 2.0 * (c + phi * np.sin(phi)) / (c * c * c)
    return out if out.ndim else float(out)


def newton_bisect(f, fprime, target, lo, hi, max_iter=110):
    """Elementwise root of f(x) = target for strictly increasing f on [lo, hi].

    Requires f(lo) <= target <= f(hi).  Newton steps are taken whenever they
    land strictly inside the current bracket; otherwise the step falls back
    to bisection.  Terminates when the bracket is a few ulps wide.
    """
    target = np.asarray(target, dtype=float)
    shape = target.shape
    lo = np.broadcast_to(np.asarray(lo, dtype=float), shape).astype(float).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), shape).astype(float).copy()
    x = 0.5 * (lo + hi)
    done = np.zeros(shape, dtype=bool)
    for _ in range(max_iter):
        fx = f(x) - target
        zero = fx == 0.0
        neg = fx < 0.0
        lo = np.where(~done & neg, x, lo)
        hi = np.where(~done & ~neg, x, hi)
        width_ok = (hi - lo) <= 4.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            raw = x - fx / fprime(x)
        finite = np.isfinite(raw)
        # a sub-ulp Newton step means x is the root to roundoff
        step_small = finite & (np.abs(raw - x) <= 4.0 * _EPS * np.maximum(np.abs(x), 1e-300))
        converged = zero | width_ok | step_small
        inside = finite & (raw > lo) & (raw < hi)
        # keep x where it is already a root (or at a bracket edge within
        # roundoff); otherwise take the Newton step when it stays strictly
        # inside the bracket, and bisect when it does not
        xn = np.where(inside, raw, 0.5 * (lo + hi))
        xn = np.where(zero | (step_small & ~inside), x, xn)
        x = np.where(done, x, xn)
        done |= converged
        if np.all(done):
            break
    return x


def solve_cubic_s(c):
    """The unique real root of s^3 + 2s = c.

    The map s -> s^3 + 2s is strictly increasing, so the root is unique and
    odd in c.  Seeded at cbrt(|c|) (which overshoots), Newton converges
    monotonically and quadratically; a bracketed fallback is unnecessary but
    the iteration is clamped to [0, cbrt(|c|)] for safety.
    """
    c = np.asarray(c, dtype=float)
    if not np.all(np.isfinite(c)):
        raise ValueError("c must be finite")
    a = np.abs(c)
    s = np.cbrt(a)
    hi = s.copy() if s.ndim else np.asarray(s).copy()
    for _ in range(60):
        f = s * (s * s + 2.0) - a
        step = f / (3.0 * s * s + 2.0)
        s_new = np.clip(s - step, 0.0, hi)
        if np.all(s_new == s):
            break
        s = s_new
    out = np.where(np.signbit(c), -s, s) if np.ndim(c) else (-s if c < 0 else s)
    return out if np.ndim(out) else float(out)


def mu_angle(c):
    """Elementwise root phi in (0, pi) of mu(phi) = c, for c >= 0.

    Returns 0.0 where c == 0 (the limiting angle).
    """
    c = np.asarray(c, dtype=float)
    if not np.all(np.isfinite(c) & (c >= 0.0)):
        raise ValueError("c must be finite and nonnegative")
    cpos = np.where(c > 0.0, c, 1.0)
    # mu(phi) ~ 2 phi/3 near 0 and ~ pi/(pi - phi)^2 near pi, so these
    # endpoints always bracket the root.
    lo = np.minimum(1e-3, 0.7 * cpos)
    hi = np.pi - np.minimum(1e-3, 0.5 * np.sqrt(np.pi / cpos))
    phi = newton_bisect(mu, mu_prime, cpos, lo, hi)
    out = np.where(c > 0.0, phi, 0.0)
    return out if out.ndim else float(out)


def q_angle(c):
    """Elementwise root phi in (0, pi/2) of Q(phi) = c, for c > 0."""
    c = np.asarray(c, dtype=float)
    if not np.all(np.isfinite(c) & (c > 0.0)):
        raise ValueError("c must be finite and positive")
    # Q(phi) ~ 2 phi near 0 and ~ pi/2 / (pi/2 - phi)^2 near pi/2.
    lo = np.minimum(1e-3, 0.3 * c)
    hi = 0.5 * np.pi - np.minimum(1e-3, 0.5 * np.sqrt(0.5 * np.pi / c))
    out = newton_bisect(q_func, q_prime, c, lo, hi)
    return out if out.ndim else float(out)


def solve_mu(c: float) -> CCAngle:
    """Solve mu(phi) = c on (0, pi) for a scalar c >= 0."""
    phi = mu_angle(float(c))
    return CCAngle(phi=phi, residual=float(mu(phi) - c) if c > 0 else 0.0)


def solve_q_phi(c: float) -> CCAngle:
    """Solve Q(phi) = c on (0, pi/2) for a scalar c > 0."""
    c = float(c)
    if not (c > 0.0 and np.isfinite(c)):
        raise ValueError("c must be a finite positive real")
    phi = q_angle(c)
    return CCAngle(phi=phi, residual=float(q_func(phi) - c))
