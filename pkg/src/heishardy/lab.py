"""Numerical verification laboratory for the geometric Hardy inequalities.

Rayleigh quotients

    Q[u] = int |grad_H u|^p  /  int (|grad_H d|^p / d^p) |u|^p

are evaluated for the sharpness family u = d^((p-1)/p + eps) * psi over the
supported (domain, metric) pairs: the half-space {t > 0} under the gauge or
CC distance, and the symmetric torus under the Euclidean distance.  The
quotient is bounded below by ((p-1)/p)^p whenever the superharmonicity
certificate holds, and decreases toward it as eps shrinks.

All integrands are cylindrically symmetric, so integration happens over
(r, t) with weight r^(2n-1); the constant sphere factor cancels from every
reported ratio.  The quadrature is a midpoint tensor rule on a power-graded
mesh (see `quadrature`), evaluated at three grid levels for a Richardson
error estimate.  Every sampling operation takes an explicit seed; reports
are deterministic given (config, seed).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .distance import (
    HalfSpace,
    Torus,
    UnsupportedConfiguration,
    d_cc_halfspace,
    d_gauge_halfspace,
)
from .group import (
    GroupElement,
    StepTwoGroup,
    convex_combination,
    heisenberg_group,
    horizontal_point,
    in_horizontal_plane,
)
from .norms import cc_norm_rt, gauge_norm_rt
from .quadrature import (
    grading_exponent,
    midpoints,
    power_graded,
    ramp_up,
    smoothstep,
    smoothstep_slope,
)
from .solvers import q_angle, solve_cubic_s

__all__ = [
    "TestFunctionSpec",
    "distance_profile",
    "QuotientReport",
    "UncertaintyReport",
    "HConcavityScan",
    "CounterexampleResult",
    "LipschitzReport",
    "hardy_quotient",
    "epsilon_sweep",
    "uncertainty_check",
    "h_concavity_sample",
    "h_concavity_cube_scan",
    "h_concavity_counterexample_search",
    "lipschitz_probe",
    "truncated_boundary_mass",
]

# Default integration window for the half-space: keeps the singular axis
# r = 0 outside the support while exposing the d -> 0 edge at t = 0.
HALFSPACE_WINDOW = (0.2, 3.0, 2.0)  # r_min, r_max, t_max

# side ramps (plain smoothsteps in r) pinning the support off the lateral
# truncation faces; their horizontal gradient carries no r-amplification
SIDE_RAMP = (0.05, 0.35)

EPS_FLOOR = 0.02  # below this the near-boundary mass needs adaptive meshes


@dataclass(frozen=True)
class TestFunctionSpec:
    """The sharpness family u = d^((p-1)/p + eps) * psi.

    The main cutoff follows the level sets of the boundary distance itself:
    the profile equals 1 on d <= cutoff_inner, 0 on d >= cutoff_outer, and is
    a quintic smoothstep in log d between them.  Level-set cutoffs keep
    |grad_H psi| = |P'(d)| |grad_H d| free of the 4 r^2 amplification that a
    coordinate ramp in t picks up, and the logarithmic ramp makes the cutoff
    cost approach the 1-d Hardy floor.  Lateral truncation faces are handled
    by separate plain ramps in r (see SIDE_RAMP).
    """

    __test__ = False  # not a pytest class, despite the Test prefix

    exponent_eps: float
    cutoff_inner: float = 1e-4
    cutoff_outer: float = 0.3
    cutoff_profile: str = "quintic-smoothstep-in-log-distance"

    def __post_init__(self):
        if not self.exponent_eps >= 0.0:
            raise ValueError("exponent_eps must be nonnegative")
        if not 0.0 < self.cutoff_inner < self.cutoff_outer:
            raise ValueError("need 0 < cutoff_inner < cutoff_outer")


def distance_profile(d, q1: float, q2: float):
    """(P, dP/dd): 1 on d <= q1, 0 on d >= q2, quintic smoothstep in log d."""
    if not 0.0 < q1 < q2:
        raise ValueError("need 0 < q1 < q2")
    L = np.log(q2 / q1)
    z = (np.log(d) - np.log(q1)) / L
    return 1.0 - smoothstep(z), -smoothstep_slope(z) / (L * np.asarray(d))


@dataclass(frozen=True)
class QuotientReport:
    p: float
    metric: str
    domain: str
    eps: float
    numerator: float
    denominator: float
    quotient: float
    quadrature: str
    est_error: float
    target: float
    level_quotients: tuple[float, ...]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["level_quotients"] = list(self.level_quotients)
        return d


@dataclass(frozen=True)
class UncertaintyReport:
    metric: str
    domain: str
    lhs: float
    rhs: float
    ratio: float
    quadrature: str
    est_error: float

    def to_dict(self) -> dict:
        return asdict(self)


def _halfspace_fields(metric: str, r, t):
    """(d, d_r, d_t, grad_sq) of the half-space distance on (r, t) arrays."""
    if metric == "gauge":
        s = np.asarray(solve_cubic_s(t / (r * r)))
        op = 1.0 + s * s
        q34 = op**0.75
        return r * s * op**0.25, -s / q34, 1.0 / (2.0 * r * q34), 1.0 / np.sqrt(op)
    if metric == "cc":
        phi = np.asarray(q_angle(t / (r * r)))
        cos = np.cos(phi)
        return r * phi / cos, -np.sin(phi), cos / (2.0 * r), np.ones_like(phi)
    raise UnsupportedConfiguration(
        f"half-space quotients support the gauge and cc metrics, not {metric!r}"
    )


def _u_pieces(p: float, eps: float, d, d_r, d_t, psi, psi_r, psi_t):
    """u = d^gam psi and its (r, t) partials, with gam = (p-1)/p + eps."""
    gam = (p - 1.0) / p + eps
    ln_d = np.log(d)
    f = np.exp(gam * ln_d)
    fp = gam * np.exp((gam - 1.0) * ln_d)
    u = f * psi
    u_r = fp * d_r * psi + f * psi_r
    u_t = fp * d_t * psi + f * psi_t
    return u, u_r, u_t


def _halfspace_psi(spec, R, d, d_r, d_t, window):
    """Level-set cutoff times the lateral ramps, with (r, t) partials."""
    r_min, r_max, _ = window
    P, Pp = distance_profile(d, spec.cutoff_inner, spec.cutoff_outer)
    f_lo, df_lo = ramp_up(R - r_min, *SIDE_RAMP)
    f_hi, df_hi = ramp_up(r_max - R, *SIDE_RAMP)
    side = f_lo * f_hi
    side_r = df_lo * f_hi - f_lo * df_hi
    psi = P * side
    psi_r = Pp * d_r * side + P * side_r
    psi_t = Pp * d_t * side
    return psi, psi_r, psi_t


def _check_halfspace_support(metric, spec, window, m_r: int) -> None:
    """The test function must vanish on the t = t_max truncation face.

    The lateral faces are handled by the side ramps identically zero there;
    the top face needs d >= cutoff_outer along it.
    """
    r_min, r_max, t_max = window
    r, _ = midpoints(r_min, r_max, m_r)
    d_face = _halfspace_fields(metric, np.array([r_min, r_max, *r]), t_max)[0]
    P_face, _ = distance_profile(d_face, spec.cutoff_inner, spec.cutoff_outer)
    if np.max(P_face) > 0.0:
        raise ValueError(
            "cutoff_outer is too large: the test function does not vanish at "
            "the t = t_max truncation face; shrink cutoff_outer or raise t_max"
        )


def _halfspace_level(metric, p, eps, spec, n, m_r, m_t, k, window):
    r_min, r_max, t_max = window
    r, wr = midpoints(r_min, r_max, m_r)
    t, wt = power_graded(t_max, k, m_t)
    R = r[:, None]
    T = t[None, :]
    W = (wr[:, None] * wt[None, :]) * R ** (2 * n - 1)
    d, d_r, d_t, A = _halfspace_fields(metric, R, T)
    if callable(spec):
        uu, u_r, u_t = spec(R + 0.0 * T, T + 0.0 * R)
        den = float(np.sum(W * A ** (0.5 * p) * np.abs(uu) ** p * np.exp(-p * np.log(d))))
    else:
        psi, psi_r, psi_t = _halfspace_psi(spec, R, d, d_r, d_t, window)
        _check_halfspace_support(metric, spec, window, m_r)
        _, u_r, u_t = _u_pieces(p, eps, d, d_r, d_t, psi, psi_r, psi_t)
        den = float(np.sum(W * A ** (0.5 * p) * np.exp((p * eps - 1.0) * np.log(d)) * psi**p))
    num = float(np.sum(W * (u_r**2 + 4.0 * R * R * u_t**2) ** (0.5 * p)))
    return num, den


def _torus_level(T_dom: Torus, p, eps, spec, m_q, m_a, k):
    rho, R0, n = T_dom.rho, T_dom.R, T_dom.n
    w, ww = midpoints(0.0, 1.0, m_q)
    q = rho * (1.0 - w**k)
    jac = rho * k * w ** (k - 1)
    alpha, wa = midpoints(0.0, 2.0 * np.pi, m_a)
    Q = q[:, None]
    CA = np.cos(alpha)[None, :]
    SA = np.sin(alpha)[None, :]
    r = R0 + Q * CA
    W = ((ww * jac)[:, None] * wa[None, :]) * Q * r ** (2 * n - 1)
    d = rho * (w**k)[:, None] * np.ones_like(CA)  # rho - q without cancellation
    d_r = -CA * np.ones_like(Q)
    d_t = -SA * np.ones_like(Q)
    A = CA * CA + 4.0 * r * r * SA * SA
    if callable(spec):
        uu, u_r, u_t = spec(r, Q * SA + 0.0 * r)
        den = float(np.sum(W * A ** (0.5 * p) * np.abs(uu) ** p * np.exp(-p * np.log(d))))
    else:
        # the level-set cutoff also retires the singular circle: psi = 0 on
        # the whole region d >= cutoff_outer, which contains q <= rho - cutoff_outer
        P, Pp = distance_profile(d, spec.cutoff_inner, spec.cutoff_outer)
        psi = P
        psi_r = Pp * d_r
        psi_t = Pp * d_t
        _, u_r, u_t = _u_pieces(p, eps, d, d_r, d_t, psi, psi_r, psi_t)
        den = float(np.sum(W * A ** (0.5 * p) * np.exp((p * eps - 1.0) * np.log(d)) * psi**p))
    num = float(np.sum(W * (u_r**2 + 4.0 * r * r * u_t**2) ** (0.5 * p)))
    return num, den


def _domain_label(domain) -> str:
    if isinstance(domain, HalfSpace):
        return "halfspace"
    if isinstance(domain, Torus):
        return f"torus(R={domain.R:g},rho={domain.rho:g})"
    return type(domain).__name__


def hardy_quotient(
    domain,
    metric: str,
    p: float,
    u: TestFunctionSpec,
    n: int = 1,
    grid: tuple[int, int] = (64, 64),
    levels: int = 3,
    window: tuple[float, float, float] = HALFSPACE_WINDOW,
) -> QuotientReport:
    """Rayleigh quotient of the Hardy functional for the test function u.

    u is either a TestFunctionSpec (the sharpness family d^((p-1)/p+eps) psi)
    or a callable field (r, t) -> (u, u_r, u_t) on arrays, compactly
    supported inside the domain.  Supported pairs: (HalfSpace, gauge|cc) in
    the model frame and (Torus, euclidean).  The report carries the quotient
    at the finest of `levels` doubled grids and the Richardson error
    estimate |Q_finest - Q_previous|.
    """
    if not p > 1:
        raise ValueError("p must exceed 1")
    if callable(u):
        eps = float("nan")
        k = 8
    elif isinstance(u, TestFunctionSpec):
        eps = u.exponent_eps
        k = grading_exponent(p, max(eps, 1e-2))
    else:
        raise TypeError("u must be a TestFunctionSpec or a callable field")
    results = []
    if isinstance(domain, HalfSpace):
        r_min, r_max, t_max = window
        for lev in range(levels):
            m_r, m_t = grid[0] * 2**lev, grid[1] * 2**lev
            results.append(_halfspace_level(metric, p, eps, u, n, m_r, m_t, k, window))
        quad = (
            f"midpoint {grid[0]}x{grid[1]} x{2 ** (levels - 1)}, t-grading k={k}, "
            f"window r=[{r_min:g},{r_max:g}], t=(0,{t_max:g}]"
        )
    elif isinstance(domain, Torus):
        if metric != "euclidean":
            raise UnsupportedConfiguration(
                "torus quotients are supported for the euclidean metric only"
            )
        if isinstance(u, TestFunctionSpec) and not (u.cutoff_outer < domain.rho):
            raise ValueError("cutoff_outer must stay inside the minor radius")
        for lev in range(levels):
            m_q, m_a = grid[0] * 2**lev, grid[1] * 2**lev
            results.append(_torus_level(domain, p, eps, u, m_q, m_a, k))
        quad = f"midpoint polar {grid[0]}x{grid[1]} x{2 ** (levels - 1)}, edge-grading k={k}"
    else:
        raise UnsupportedConfiguration(f"unsupported domain {type(domain).__name__}")
    quotients = tuple(nm / dn for nm, dn in results)
    num, den = results[-1]
    est = abs(quotients[-1] - quotients[-2]) if len(quotients) > 1 else float("nan")
    return QuotientReport(
        p=float(p),
        metric=metric,
        domain=_domain_label(domain),
        eps=float(eps),
        numerator=num,
        denominator=den,
        quotient=quotients[-1],
        quadrature=quad,
        est_error=est,
        target=((p - 1.0) / p) ** p,
        level_quotients=quotients,
    )


def epsilon_sweep(
    domain,
    metric: str,
    p: float,
    eps_list,
    base: TestFunctionSpec | None = None,
    **kwargs,
) -> list[QuotientReport]:
    """Quotients along a strictly decreasing eps sequence.

    The quotients trend down toward ((p-1)/p)^p; each stays below
    ((p-1)/p + eps)^p up to the bounded cutoff terms.
    """
    eps_arr = [float(e) for e in eps_list]
    if not all(a > b for a, b in zip(eps_arr, eps_arr[1:])):
        raise ValueError("eps_list must be strictly decreasing")
    if not all(e >= EPS_FLOOR for e in eps_arr):
        raise ValueError(f"sweep eps values must stay >= {EPS_FLOOR}")
    base = base or TestFunctionSpec(exponent_eps=eps_arr[0])
    out = []
    for e in eps_arr:
        spec = TestFunctionSpec(
            exponent_eps=e,
            cutoff_inner=base.cutoff_inner,
            cutoff_outer=base.cutoff_outer,
            cutoff_profile=base.cutoff_profile,
        )
        out.append(hardy_quotient(domain, metric, p, spec, **kwargs))
    return out


def uncertainty_check(
    domain,
    metric: str,
    u: TestFunctionSpec,
    n: int = 1,
    grid: tuple[int, int] = (64, 64),
    levels: int = 3,
    window: tuple[float, float, float] = HALFSPACE_WINDOW,
    scale: float = 1.0,
) -> UncertaintyReport:
    """The product bound (int |grad_H u|^2)^(1/2) (int d^2 u^2)^(1/2) >= 1/2 int u^2.

    Supported on the half-space for the gauge and cc distances.  u is a
    TestFunctionSpec or a callable field (r, t) -> (u, u_r, u_t).  `scale`
    multiplies u and must leave the ratio unchanged (degree balance).
    """
    if not isinstance(domain, HalfSpace):
        raise UnsupportedConfiguration("uncertainty check is implemented on the half-space")
    if callable(u):
        k = 8
    else:
        k = grading_exponent(2.0, max(u.exponent_eps, 1e-2))
    r_min, r_max, t_max = window
    ratios = []
    pieces = None
    for lev in range(levels):
        m_r, m_t = grid[0] * 2**lev, grid[1] * 2**lev
        r, wr = midpoints(r_min, r_max, m_r)
        t, wt = power_graded(t_max, k, m_t)
        R = r[:, None]
        T = t[None, :]
        W = (wr[:, None] * wt[None, :]) * R ** (2 * n - 1)
        d, d_r, d_t, _ = _halfspace_fields(metric, R, T)
        if callable(u):
            uu, u_r, u_t = u(R + 0.0 * T, T + 0.0 * R)
        else:
            psi, psi_r, psi_t = _halfspace_psi(u, R, d, d_r, d_t, window)
            _check_halfspace_support(metric, u, window, m_r)
            uu, u_r, u_t = _u_pieces(2.0, u.exponent_eps, d, d_r, d_t, psi, psi_r, psi_t)
        uu, u_r, u_t = scale * uu, scale * u_r, scale * u_t
        i_grad = float(np.sum(W * (u_r**2 + 4.0 * R * R * u_t**2)))
        i_d2u2 = float(np.sum(W * d * d * uu * uu))
        i_u2 = float(np.sum(W * uu * uu))
        lhs = np.sqrt(i_grad) * np.sqrt(i_d2u2)
        rhs = 0.5 * i_u2
        ratios.append(lhs / rhs)
        pieces = (lhs, rhs)
    est = abs(ratios[-1] - ratios[-2]) if len(ratios) > 1 else float("nan")
    return UncertaintyReport(
        metric=metric,
        domain=_domain_label(domain),
        lhs=pieces[0],
        rhs=pieces[1],
        ratio=ratios[-1],
        quadrature=f"midpoint {grid[0]}x{grid[1]} x{2 ** (levels - 1)}, t-grading k={k}",
        est_error=est,
    )


# ---------------------------------------------------------------------------
# Weak H-concavity sampling
# ---------------------------------------------------------------------------


def h_concavity_sample(G: StepTwoGroup, dist, g: GroupElement, v, lam: float):
    """One concavity test along the horizontal segment from g toward g + v.

    Builds gp in H_g from the first-stratum direction v, forms the
    anisotropic combination g_lam and returns (lhs, rhs, margin) with
    lhs = dist(g_lam) and rhs = (1-lam) dist(g) + lam dist(gp).  Returns
    None (a skipped sample) when `dist` reports any of the three points as
    outside its domain by returning None.
    """
    gp = horizontal_point(G, g, v)
    glam = convex_combination(G, g, gp, lam)
    values = [dist(g), dist(gp), dist(glam)]
    if any(val is None for val in values):
        return None
    d_g, d_gp, d_glam = map(float, values)
    rhs = (1.0 - lam) * d_g + lam * d_gp
    return d_glam, rhs, d_glam - rhs


@dataclass(frozen=True)
class HConcavityScan:
    samples: int
    skipped: int
    violations: int
    worst_margin: float
    tol: float
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def _cube_distance(flat: np.ndarray) -> np.ndarray:
    """Euclidean distance to the boundary of the unit cube, for interior rows."""
    return np.min(np.minimum(flat, 1.0 - flat), axis=-1)


def h_concavity_cube_scan(samples: int = 100_000, seed: int = 0, tol: float = 1e-12) -> HConcavityScan:
    """Weak H-concavity of the Euclidean distance on the unit cube of H^1.

    Draws (g, v, lam) in batches, skipping draws whose horizontal partner
    leaves the cube, until `samples` valid samples are collected; counts
    margins below -tol.  The Euclidean distance to the boundary of a convex
    set is weakly H-concave, so the expected violation count is zero.
    """
    G = heisenberg_group(1)
    rng = np.random.default_rng(seed)
    kept = 0
    skipped = 0
    violations = 0
    worst = np.inf
    while kept < samples:
        batch = max(1024, samples - kept)
        g1 = rng.uniform(0.0, 1.0, size=(batch, 2))
        g2 = rng.uniform(0.0, 1.0, size=(batch, 1))
        v = rng.uniform(-0.6, 0.6, size=(batch, 2))
        lam = rng.uniform(0.0, 1.0, size=batch)
        g = GroupElement(g1, g2)
        gp = horizontal_point(G, g, v)
        gp_flat = gp.flat()
        inside = np.all((gp_flat > 0.0) & (gp_flat < 1.0), axis=-1)
        glam = convex_combination(G, g, gp, lam)
        d_g = _cube_distance(g.flat())
        d_gp = _cube_distance(gp_flat)
        d_glam = _cube_distance(glam.flat())
        margin = (d_glam - ((1.0 - lam) * d_g + lam * d_gp))[inside][: samples - kept]
        skipped += int(batch - np.sum(inside))
        kept += margin.size
        violations += int(np.sum(margin < -tol))
        worst = min(worst, float(np.min(margin)))
    return HConcavityScan(
        samples=kept,
        skipped=skipped,
        violations=violations,
        worst_margin=worst,
        tol=tol,
        seed=seed,
    )


@dataclass(frozen=True)
class CounterexampleResult:
    """Best weak-H-concavity violation found for the gauge half-space distance."""

    found: bool
    t_scale: float
    margin: float
    r: float
    factor: float
    lam: float
    lhs: float
    rhs: float
    horizontal_ok: bool

    def to_dict(self) -> dict:
        return asdict(self)


def h_concavity_counterexample_search(
    t_scale: float = 1e-2,
    radii=(0.5, 1.0, 2.0),
    factors=(2.0, 4.0),
    lam: float = 0.5,
) -> CounterexampleResult:
    """Search for a weak-H-concavity violation of the gauge distance d_N.

    For xi = (x, y, t) and xi' = (a x, a y, t), a > 0, the pair is
    horizontal, the combination has radius (1-lam) r + lam a r, and near the
    boundary d_N behaves like t/(2r), whose convexity in 1/r forces
    d_N(xi_lam) < (1-lam) d_N(xi) + lam d_N(xi').  The search scans the
    given radii and dilation factors at height t_scale and returns the
    largest violation margin rhs - lhs.
    """
    t = float(t_scale)
    if not t > 0:
        raise ValueError("t_scale must be positive")
    best = None
    for r in radii:
        for a in factors:
            r_lam = (1.0 - lam) * r + lam * a * r
            lhs = float(d_gauge_halfspace(r_lam, t))
            rhs = (1.0 - lam) * float(d_gauge_halfspace(r, t)) + lam * float(
                d_gauge_halfspace(a * r, t)
            )
            margin = rhs - lhs
            if best is None or margin > best[0]:
                best = (margin, r, a, lhs, rhs)
    margin, r, a, lhs, rhs = best
    G = heisenberg_group(1)
    g = GroupElement(np.array([r, 0.0]), np.array([t]))
    gp = horizontal_point(G, g, np.array([(a - 1.0) * r, 0.0]))
    return CounterexampleResult(
        found=bool(margin > 1e-6 * t),
        t_scale=t,
        margin=float(margin),
        r=float(r),
        factor=float(a),
        lam=float(lam),
        lhs=lhs,
        rhs=rhs,
        horizontal_ok=bool(in_horizontal_plane(G, g, gp, tol=1e-12)),
    )


# ---------------------------------------------------------------------------
# CC-Lipschitz probe and near-boundary mass
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LipschitzReport:
    norm: str
    pairs: int
    max_ratio: float
    region: str
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def lipschitz_probe(
    norm: str = "gauge",
    pairs: int = 10_000,
    seed: int = 0,
    box: float = 0.5,
    dilation: float = 1.0,
) -> LipschitzReport:
    """Observed Lipschitz ratio |d(g) - d(g')| / N(g'^-1 g) for d = dist to {t = 0}.

    Pairs are drawn in the box |x|, |y| <= `box`, t in (0, 1), optionally
    dilated as a whole configuration by `dilation` (both sides of the ratio
    are 1-homogeneous, so the report is scale stable).  No specific constant
    is asserted; the maximum is simply reported.
    """
    if norm not in ("gauge", "cc"):
        raise ValueError("norm must be 'gauge' or 'cc'")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(
        [-box, -box, 1e-3], [box, box, 1.0], size=(2, pairs, 3)
    )
    lam = float(dilation)
    xa, ya, ta = lam * pts[0, :, 0], lam * pts[0, :, 1], lam * lam * pts[0, :, 2]
    xb, yb, tb = lam * pts[1, :, 0], lam * pts[1, :, 1], lam * lam * pts[1, :, 2]
    dist_fn = d_gauge_halfspace if norm == "gauge" else d_cc_halfspace
    da = np.asarray(dist_fn(np.hypot(xa, ya), ta))
    db = np.asarray(dist_fn(np.hypot(xb, yb), tb))
    # relative element b^-1 a
    rel_r = np.hypot(xa - xb, ya - yb)
    rel_t = ta - tb + 2.0 * (yb * xa - xb * ya)
    norm_fn = gauge_norm_rt if norm == "gauge" else cc_norm_rt
    sep = np.asarray(norm_fn(rel_r, rel_t))
    ok = sep > 0.0
    ratio = np.abs(da - db)[ok] / sep[ok]
    return LipschitzReport(
        norm=norm,
        pairs=int(np.sum(ok)),
        max_ratio=float(np.max(ratio)),
        region=f"|x|,|y|<={box:g}, t in (0,1), dilation={lam:g}",
        seed=seed,
    )


def truncated_boundary_mass(
    metric: str = "gauge",
    collar: float = 1e-2,
    n: int = 1,
    grid: tuple[int, int] = (128, 256),
    window: tuple[float, float, float] = HALFSPACE_WINDOW,
) -> float:
    """int over {d >= collar} of d^-1 against r^(2n-1) dr dt on the window.

    Grows without bound as the collar shrinks (logarithmically for these
    distances), which is the divergence behind the sharpness construction.
    """
    if not collar > 0:
        raise ValueError("collar must be positive")
    r_min, r_max, t_max = window
    r, wr = midpoints(r_min, r_max, grid[0])
    t, wt = power_graded(t_max, 8, grid[1])
    R = r[:, None]
    T = t[None, :]
    W = (wr[:, None] * wt[None, :]) * R ** (2 * n - 1)
    d, _, _, _ = _halfspace_fields(metric, R, T)
    mask = d >= collar
    return float(np.sum(W[mask] / d[mask]))
