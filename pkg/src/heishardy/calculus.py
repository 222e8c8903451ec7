"""Horizontal differential operators on H^n and superharmonicity certificates.

For a cylindrically symmetric field u(r, t),

    |grad_H u|^2 = u_r^2 + 4 r^2 u_t^2
    lap_H u      = u_rr + (2n-1)/r u_r + 4 r^2 u_tt
    lap_{p,H} u  = A^((p-4)/2) ( A lap_H u + (p-2)/2 (u_r A_r + 4 r^2 u_t A_t) )

with A = |grad_H u|^2.  This module provides closed-form derivative bundles
for the three distance fields of interest (torus Euclidean, gauge half-space,
CC half-space), finite-difference oracles for cross-checking them, the sign
certificates lap_{p,H} d <= 0, and the sharp radii constants of the torus
criterion.

All closed forms accept scalars or numpy arrays and broadcast elementwise.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .distance import Torus, d_cc_halfspace, d_gauge_halfspace
from .group import HeisenbergPoint
from .solvers import q_angle, q_func, q_prime, solve_cubic_s

__all__ = [
    "HorizontalDerivs",
    "PLapReport",
    "GaugeDerivs",
    "CCLapReport",
    "TorusCertificate",
    "horizontal_gradient_sq_cyl",
    "horizontal_laplacian_cyl",
    "p_laplacian_cyl",
    "fd_horizontal_gradient",
    "fd_cyl_derivs",
    "torus_derivs",
    "gauge_derivs",
    "closed_form_plap_gauge",
    "cc_halfspace_laplacian",
    "torus_W",
    "beta_constant",
    "beta_details",
    "p0_threshold",
    "torus_certificate",
]


@dataclass(frozen=True)
class HorizontalDerivs:
    """Partials (d_r, d_t, d_rr, d_tt, d_rt) of a cylindrically symmetric field."""

    d_r: float | np.ndarray
    d_t: float | np.ndarray
    d_rr: float | np.ndarray
    d_tt: float | np.ndarray
    d_rt: float | np.ndarray


@dataclass(frozen=True)
class PLapReport:
    """Assembled horizontal p-Laplacian of a cylindrically symmetric field."""

    value: float | np.ndarray
    A: float | np.ndarray
    laplacian: float | np.ndarray
    correction: float | np.ndarray


def horizontal_gradient_sq_cyl(D: HorizontalDerivs, r):
    """A = d_r^2 + 4 r^2 d_t^2."""
    r = np.asarray(r, dtype=float)
    out = D.d_r**2 + 4.0 * r * r * D.d_t**2
    return out if np.ndim(out) else float(out)


def horizontal_laplacian_cyl(D: HorizontalDerivs, r, n: int):
    """lap_H = d_rr + (2n-1)/r d_r + 4 r^2 d_tt, for r > 0."""
    r = np.asarray(r, dtype=float)
    if not np.all(r > 0):
        raise ValueError("r must be positive")
    out = D.d_rr + (2.0 * n - 1.0) / r * D.d_r + 4.0 * r * r * D.d_tt
    return out if np.ndim(out) else float(out)


def p_laplacian_cyl(D: HorizontalDerivs, A_r, A_t, r, n: int, p: float) -> PLapReport:
    """lap_{p,H} from the derivative bundle and the gradient-square partials.

    At p = 2 the correction carries an exact factor 0 and the value reduces
    to lap_H.  Raises where A vanishes (the field's singular set).
    """
    if not p > 1:
        raise ValueError("p must exceed 1")
    r = np.asarray(r, dtype=float)
    A = horizontal_gradient_sq_cyl(D, r)
    if not np.all(np.asarray(A) > 0):
        raise ValueError("|grad_H d|^2 vanishes at an evaluation point")
    lap = horizontal_laplacian_cyl(D, r, n)
    corr = 0.5 * (p - 2.0) * (D.d_r * np.asarray(A_r) + 4.0 * r * r * D.d_t * np.asarray(A_t))
    value = np.asarray(A) ** (0.5 * (p - 4.0)) * (A * lap + corr)
    if np.ndim(value):
        return PLapReport(value=value, A=A, laplacian=lap, correction=corr)
    return PLapReport(value=float(value), A=float(A), laplacian=float(lap), correction=float(corr))


# ---------------------------------------------------------------------------
# Finite-difference oracles
# ---------------------------------------------------------------------------


def fd_horizontal_gradient(f, xi: HeisenbergPoint, h: float) -> np.ndarray:
    """Central-difference horizontal gradient (X_1 f .. X_n f, Y_1 f .. Y_n f).

    X_i = d/dx_i + 2 y_i d/dt and Y_i = d/dy_i - 2 x_i d/dt; the Cartesian
    partials are estimated with symmetric differences of step h, O(h^2).
    """
    h = float(h)
    c = xi.coords()
    n = xi.n

    def partial(idx):
        cp, cm = c.copy(), c.copy()
        cp[idx] += h
        cm[idx] -= h
        return (
            f(HeisenbergPoint.from_coords(cp)) - f(HeisenbergPoint.from_coords(cm))
        ) / (2.0 * h)

    ft = partial(2 * n)
    out = np.empty(2 * n)
    for i in range(n):
        out[i] = partial(i) + 2.0 * xi.y[i] * ft
        out[n + i] = partial(n + i) - 2.0 * xi.x[i] * ft
    return out


def fd_cyl_derivs(f, r, t, h: float = 1e-5) -> HorizontalDerivs:
    """Central-difference bundle for a field given in cylindrical coordinates.

    f must accept (r, t) arrays.  Steps are scaled per axis as
    h * max(1, |coordinate|).
    """
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    hr = h * np.maximum(1.0, np.abs(r))
    ht = h * np.maximum(1.0, np.abs(t))
    f0 = f(r, t)
    fpr, fmr = f(r + hr, t), f(r - hr, t)
    fpt, fmt = f(r, t + ht), f(r, t - ht)
    fpp, fpm = f(r + hr, t + ht), f(r + hr, t - ht)
    fmp, fmm = f(r - hr, t + ht), f(r - hr, t - ht)
    return HorizontalDerivs(
        d_r=(fpr - fmr) / (2.0 * hr),
        d_t=(fpt - fmt) / (2.0 * ht),
        d_rr=(fpr - 2.0 * f0 + fmr) / (hr * hr),
        d_tt=(fpt - 2.0 * f0 + fmt) / (ht * ht),
        d_rt=(fpp - fpm - fmp + fmm) / (4.0 * hr * ht),
    )


# ---------------------------------------------------------------------------
# Torus Euclidean distance
# ---------------------------------------------------------------------------


def torus_derivs(T: Torus, r, t):
    """Closed-form bundle for d = rho - sqrt((r-R)^2 + t^2), off the core circle.

    Returns (HorizontalDerivs, A, A_r, A_t).
    """
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    u = r - T.R
    sig = u * u + t * t
    if not np.all(sig > 0):
        raise ValueError("derivatives are singular on the core circle r = R, t = 0")
    q = np.sqrt(sig)
    D = HorizontalDerivs(
        d_r=-u / q,
        d_t=-t / q,
        d_rr=-(t * t) / (q * sig),
        d_tt=-(u * u) / (q * sig),
        d_rt=u * t / (q * sig),
    )
    A = (u * u + 4.0 * r * r * t * t) / sig
    A_r = (2.0 * u * (1.0 - 4.0 * r * T.R) * t * t + 8.0 * r * t**4) / (sig * sig)
    A_t = 2.0 * t * u * u * (4.0 * r * r - 1.0) / (sig * sig)
    return D, A, A_r, A_t


# ---------------------------------------------------------------------------
# Gauge half-space distance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaugeDerivs:
    """Derivative bundle of the gauge half-space distance d = G^(1/4).

    Carries the auxiliary quantities of the chain rule: the cubic root s of
    s^3 + 2s = t/r^2, G = d^4 = r^4 s^4 (1 + s^2) and its partials
    (G_r = -4 r^3 s^4, G_t = 2 r^2 s^3, ...), the distance derivatives, and
    the gradient square A with its partials.
    """

    s: float | np.ndarray
    G: float | np.ndarray
    G_r: float | np.ndarray
    G_t: float | np.ndarray
    G_rr: float | np.ndarray
    G_tt: float | np.ndarray
    G_rt: float | np.ndarray
    d: float | np.ndarray
    derivs: HorizontalDerivs
    A: float | np.ndarray
    A_r: float | np.ndarray
    A_t: float | np.ndarray


def gauge_derivs(r, t) -> GaugeDerivs:
    """All first and second partials of the gauge half-space distance.

    The raw chain rule stacks powers of G that overflow for small t; the
    expressions below are the same chain rule with the powers of r and s
    cancelled symbolically, e.g.

        d_tt = -3 s / (4 r^3 (3 s^2 + 2) (1 + s^2)^(7/4)),

    which stays finite and fully accurate down to the t -> 0 edge.
    """
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    if not (np.all(r > 0) and np.all(t > 0)):
        raise ValueError("gauge derivative bundle needs r > 0 and t > 0")
    s = solve_cubic_s(t / (r * r))
    s = np.asarray(s, dtype=float)
    u = s * s
    m = 3.0 * u + 2.0
    op = 1.0 + u
    q14 = op**0.25
    q34 = op**0.75
    q74 = q34 * op
    q32 = op * np.sqrt(op)
    d = r * s * q14
    D = HorizontalDerivs(
        d_r=-s / q34,
        d_t=1.0 / (2.0 * r * q34),
        d_rr=s * (4.0 - u * u) / (r * m * q74),
        d_tt=-3.0 * s / (4.0 * r**3 * m * q74),
        d_rt=(u - 2.0) / (2.0 * r * r * m * q74),
    )
    A = 1.0 / np.sqrt(op)
    A_r = 2.0 * u * (u + 2.0) / (r * m * q32)
    A_t = -s / (r * r * m * q32)
    out = GaugeDerivs(
        s=s,
        G=r**4 * u * u * op,
        G_r=-4.0 * r**3 * u * u,
        G_t=2.0 * r * r * s * u,
        G_rr=-4.0 * r * r * u * u * (u - 10.0) / m,
        G_tt=6.0 * u / m,
        G_rt=-16.0 * r * s * u / m,
        d=d,
        derivs=D,
        A=A,
        A_r=A_r,
        A_t=A_t,
    )
    return out


def closed_form_plap_gauge(r, t, n: int, p: float):
    """lap_{p,H} of the gauge half-space distance, always <= 0.

    The closed form
        -(1/r) s (1+s^2)^(-(p+1)/4) ((6n+p-4) s^2 + 4n+p-5) / (3 s^2 + 2)
    is the G-power expression with the powers of r, s collected; the bracket
    is positive for every n >= 1, p > 1.
    """
    if not p > 1:
        raise ValueError("p must exceed 1")
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    if not (np.all(r > 0) and np.all(t > 0)):
        raise ValueError("need r > 0 and t > 0")
    s = np.asarray(solve_cubic_s(t / (r * r)), dtype=float)
    u = s * s
    bracket = (6.0 * n + p - 4.0) * u + 4.0 * n + p - 5.0
    out = -s * (1.0 + u) ** (-0.25 * (p + 1.0)) * bracket / (r * (3.0 * u + 2.0))
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# CC half-space distance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CCLapReport:
    """Horizontal Laplacian data for the CC half-space distance.

    exact   -- lap_H d assembled from the angle chain rule
    bound   -- the (2n-1)/r -> 1/r relaxation, an upper bound since d_r <= 0
    grad_sq -- |grad_H d|^2, identically 1 (sin^2 + cos^2)
    """

    exact: float | np.ndarray
    bound: float | np.ndarray
    grad_sq: float | np.ndarray
    phi: float | np.ndarray
    derivs: HorizontalDerivs


def cc_halfspace_laplacian(r, t, n: int) -> CCLapReport:
    """lap_H of the CC half-space distance d = (phi/cos phi) r.

    Uses d_r = -sin phi, d_t = cos phi / (2 r) and the phi-partials obtained
    by differentiating Q(phi) = t/r^2.  Both `exact` and `bound` are <= 0 on
    {r > 0, t > 0}.
    """
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    if not (np.all(r > 0) and np.all(t > 0)):
        raise ValueError("need r > 0 and t > 0")
    phi = np.asarray(q_angle(t / (r * r)), dtype=float)
    sin, cos = np.sin(phi), np.cos(phi)
    Q = q_func(phi)
    Qp = q_prime(phi)
    # Q'' from Q' = 2 sec^2 + 2 phi tan sec^2; the sin(2phi) term carries
    # coefficient 3, confirmed against central differences of Q'
    Qpp = (2.0 * phi + 4.0 * phi * sin * sin + 3.0 * np.sin(2.0 * phi)) / cos**4
    B = phi / cos
    Bp = (cos + phi * sin) / (cos * cos)
    Bpp = (phi + phi * sin * sin + np.sin(2.0 * phi)) / cos**3
    phi_t = 1.0 / (r * r * Qp)
    phi_tt = -Qpp / (r**4 * Qp**3)
    phi_r = -2.0 * Q / (r * Qp)
    D = HorizontalDerivs(
        d_r=-sin,
        d_t=cos / (2.0 * r),
        d_rr=-cos * phi_r,
        d_tt=r * (Bpp * phi_t * phi_t + Bp * phi_tt),
        d_rt=-cos / (r * r * Qp),
    )
    exact = horizontal_laplacian_cyl(D, r, n)
    bound = (4.0 * (Q * Q + 1.0) * (Bpp * Qp - Qpp * Bp) + B * Qp**3) / (r * Qp**3)
    grad_sq = sin * sin + 4.0 * r * r * D.d_t**2
    if np.ndim(exact):
        return CCLapReport(exact=exact, bound=bound, grad_sq=grad_sq, phi=phi, derivs=D)
    return CCLapReport(
        exact=float(exact), bound=float(bound), grad_sq=float(grad_sq), phi=float(phi), derivs=D
    )


# ---------------------------------------------------------------------------
# Torus superharmonicity: the W certificate and the radii constants
# ---------------------------------------------------------------------------


def torus_W(p: float, n: int, R: float, rho: float, r, t):
    """The torus sign certificate r W = C0 + C1 t^2 + C2 t^4.

    sign(lap_{p,H} d) = -sign(W) off the core circle, through
    lap_{p,H} d = -A^((p-4)/2) ((r-R)^2 + t^2)^(-5/2) W.  Returns
    (W, C0, C1, C2).
    """
    if not p > 1:
        raise ValueError("p must exceed 1")
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    u = r - R
    if np.any(np.hypot(u, t) > rho * (1.0 + 1e-12)):
        raise ValueError("point outside the closed torus")
    if not np.all((u != 0.0) | (t != 0.0)):
        raise ValueError("W is singular on the core circle")
    C0 = u**4 * ((2.0 * n - 1.0) * u + 4.0 * r**3)
    C1 = u * u * (
        (2.0 * n - 1.0 + 4.0 * (2.0 * n + p - 3.0) * r * r) * u
        + 16.0 * (p - 1.0) * r**5
        - 8.0 * (p - 2.0) * r**3
        + (p - 1.0) * r
    )
    C2 = 4.0 * r * r * ((2.0 * n + p - 3.0) * u + r)
    W = (C0 + C1 * t * t + C2 * t**4) / r
    if np.ndim(W):
        return W, C0, C1, C2
    return float(W), float(C0), float(C1), float(C2)


def p0_threshold(n: int) -> float:
    """p0(n) = sqrt(9 n^2 - 8 n + 2) - 3(n - 1); always in (3/2, 2)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return float(np.sqrt(9.0 * n * n - 8.0 * n + 2.0) - 3.0 * (n - 1.0))


def _case_threshold(n: int) -> float:
    return (13.0 + np.sqrt(32.0 * n - 7.0)) / 8.0


def _quad_root_a(p: float, n: int) -> float:
    """Positive root of (2n+p-3)^2 a^2 + 4((p-2)(2n+p-3) + (p-1)(2n-1)) a - 4(2p-3) = 0.

    Written with the conjugate to avoid cancellation for large linear terms.
    """
    A = (2.0 * n + p - 3.0) ** 2
    b = 4.0 * ((p - 2.0) * (2.0 * n + p - 3.0) + (p - 1.0) * (2.0 * n - 1.0))
    c = 4.0 * (2.0 * p - 3.0)
    return float(2.0 * c / (b + np.sqrt(b * b + 4.0 * A * c)))


def beta_constant(p: float, n: int) -> float:
    """The radii constant beta(p, n) of the torus criterion R >= beta rho.

    Case split:
        1 < p < 2 : max((2n+p-2)/(p-1), (2n-p+1)/(2(2-p)))
        p = 2     : 2n
        p > 2     : max(2n+p-2, 1 + 1/a(p, n))
    where a(p, n) is the positive root of the associated quadratic.  For
    p >= (13 + sqrt(32n-7))/8 the max is attained by 2n+p-2.
    """
    return beta_details(p, n)["beta"]


def beta_details(p: float, n: int) -> dict:
    """beta(p, n) with the active case, p0(n), and the p > 2 case threshold.

    Near the case boundaries p = 2 and p = threshold the adjacent branch
    values are reported as well (continuity across the boundaries is not
    asserted).
    """
    p = float(p)
    n = int(n)
    if not p > 1:
        raise ValueError("p must exceed 1")
    if n < 1:
        raise ValueError("n must be a positive integer")
    thr = _case_threshold(n)
    out = {
        "p": p,
        "n": n,
        "p0": p0_threshold(n),
        "threshold": thr,
        "a": None,
    }
    if p < 2.0:
        out["beta"] = max((2.0 * n + p - 2.0) / (p - 1.0), (2.0 * n - p + 1.0) / (2.0 * (2.0 - p)))
        out["case"] = "1<p<2"
    elif p == 2.0:
        out["beta"] = 2.0 * n
        out["case"] = "p=2"
    else:
        a = _quad_root_a(p, n)
        out["a"] = a
        out["beta"] = max(2.0 * n + p - 2.0, 1.0 + 1.0 / a)
        out["case"] = "p>=threshold" if p >= thr - 1e-12 else "2<p<threshold"
    if abs(p - 2.0) < 1e-9 and p != 2.0:
        out["adjacent_p2_branch"] = 2.0 * n
    if abs(p - thr) < 1e-9 and p > 2.0:
        out["adjacent_branches"] = {
            "2n+p-2": 2.0 * n + p - 2.0,
            "1+1/a": 1.0 + 1.0 / _quad_root_a(p, n),
        }
    return out


@dataclass(frozen=True)
class TorusCertificate:
    """Result of the torus superharmonicity scan.

    condition_i  : R >= rho + ((2n-1) rho / 4)^(1/3)
    condition_ii : R >= beta(p, n) rho
    worst_W      : minimum of W over the scanned grid (collars excluded)
    """

    p: float
    n: int
    R: float
    rho: float
    condition_i: bool
    condition_ii: bool
    beta: float
    worst_W: float
    grid_spec: str
    passed: bool
    scan_scale: float

    def to_dict(self) -> dict:
        return asdict(self)


def torus_certificate(p: float, n: int, R: float, rho: float, grid: int = 200) -> TorusCertificate:
    """Evaluate the torus conditions and scan W >= 0 over a polar grid.

    The grid covers q in [delta, rho - delta], alpha in [0, 2 pi) around the
    core circle with delta = rho/grid, excluding the singular circle and the
    boundary collar.  Failures are reported in the certificate, not raised.
    """
    if not (R > rho > 0.0):
        raise ValueError("need R > rho > 0")
    grid = int(grid)
    if grid < 2:
        raise ValueError("grid must be at least 2")
    beta = beta_constant(p, n)
    cond_i = R >= rho + ((2.0 * n - 1.0) * rho / 4.0) ** (1.0 / 3.0)
    cond_ii = R >= beta * rho
    delta = rho / grid
    q = np.linspace(delta, rho - delta, grid)
    alpha = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    qq, aa = np.meshgrid(q, alpha, indexing="ij")
    r = R + qq * np.cos(aa)
    t = qq * np.sin(aa)
    W, _, _, _ = torus_W(p, n, R, rho, r, t)
    worst = float(np.min(W))
    scale = float(max(1.0, np.max(np.abs(W))))
    passed = bool(cond_i and cond_ii and worst >= -1e-9 * scale)
    return TorusCertificate(
        p=float(p),
        n=int(n),
        R=float(R),
        rho=float(rho),
        condition_i=bool(cond_i),
        condition_ii=bool(cond_ii),
        beta=float(beta),
        worst_W=worst,
        grid_spec=f"polar {grid}x{grid}, q in [{delta:.6g}, {rho - delta:.6g}]",
        passed=passed,
        scan_scale=scale,
    )
