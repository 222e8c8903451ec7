import numpy as np
import pytest

from heishardy import (
    ConvexPolytope,
    HalfSpace,
    HeisenbergPoint,
    Torus,
    UnsupportedConfiguration,
    boundary_distance,
    brute_force_boundary_distance,
    cc_distance,
    cc_norm_rt,
    d_cc_halfspace,
    d_eucl_torus,
    d_gauge_halfspace,
    d_halfspace,
    d_polytope,
    gauge_norm_rt,
    inverse_nearest_cc,
    inverse_nearest_gauge,
    multiply,
    nearest_point_cc,
    nearest_point_gauge,
)
from heishardy.distance import nearest_point_torus_euclidean
from heishardy.solvers import solve_cubic_s


def rand_upper_point(rng, n=1, r_lo=0.1, r_hi=3.0, t_lo=0.1, t_hi=4.0):
    v = rng.normal(size=2 * n)
    v *= rng.uniform(r_lo, r_hi) / np.linalg.norm(v)
    return HeisenbergPoint(v[:n], v[n:], rng.uniform(t_lo, t_hi))


# --- torus, Euclidean ------------------------------------------------------


def test_torus_euclidean_values():
    T = Torus(10.0, 1.0)
    assert d_eucl_torus(T, 10.0, 0.0) == 1.0
    assert d_eucl_torus(T, 10.5, 0.0) == 0.5
    assert abs(d_eucl_torus(T, 10.3, 0.4) - 0.5) <= 1e-15  # 3-4-5 triangle
    with pytest.raises(ValueError):
        d_eucl_torus(T, 12.0, 0.0)
    # boundary gives zero
    assert d_eucl_torus(T, 11.0, 0.0) == 0.0


def test_torus_nearest_point():
    T = Torus(10.0, 1.0)
    xi = HeisenbergPoint([10.3], [0.0], 0.4)
    res = nearest_point_torus_euclidean(T, xi)
    assert res.multiplicity_tag == "unique"
    p = res.points[0]
    assert abs(np.hypot(p.r - T.R, p.t) - T.rho) <= 1e-12
    assert abs(np.linalg.norm(p.coords() - xi.coords()) - (1.0 - 0.5)) <= 1e-12
    core = HeisenbergPoint([10.0], [0.0], 0.0)
    res = nearest_point_torus_euclidean(T, core)
    assert res.multiplicity_tag == "circle" and len(res.points) >= 8
    for p in res.points:
        assert abs(np.hypot(p.r - T.R, p.t) - T.rho) <= 1e-12


# --- gauge half-space ------------------------------------------------------


def test_gauge_halfspace_values():
    assert abs(d_gauge_halfspace(1.0, 3.0) - 2.0**0.25) <= 1e-14
    assert d_gauge_halfspace(0.0, 4.0) == 2.0
    assert abs(d_gauge_halfspace(1.0, 0.01) - 0.005) <= 5e-6
    with pytest.raises(ValueError):
        d_gauge_halfspace(1.0, -1.0)


def test_gauge_quartic_form_agreement():
    rng = np.random.default_rng(0)
    r = rng.uniform(0.3, 3.0, 500)
    t = rng.uniform(0.3, 4.0, 500)
    s = solve_cubic_s(t / r**2)
    quartic = (2.0 * r**4 * s**2 - 3.0 * t * r**2 * s + t**2) ** 0.25
    d = d_gauge_halfspace(r, t)
    assert np.max(np.abs(quartic - d) / d) <= 1e-10


def test_gauge_strict_upper_bound():
    rng = np.random.default_rng(1)
    r = rng.uniform(1e-3, 3.0, 1000)
    t = rng.uniform(1e-3, 4.0, 1000)
    assert np.all(d_gauge_halfspace(r, t) < np.sqrt(t))
    assert d_gauge_halfspace(0.0, 2.0) == np.sqrt(2.0)


def test_nearest_point_gauge_example():
    xi = HeisenbergPoint([1.0], [0.0], 3.0)
    res = nearest_point_gauge(xi)
    assert res.multiplicity_tag == "unique"
    p = res.points[0]
    assert np.allclose(p.coords(), [1.0, -1.0, 0.0])
    # the pairwise gauge distance to the minimizer equals the closed form
    d4 = ((p.x[0] - 1.0) ** 2 + (p.y[0] - 0.0) ** 2) ** 2 + (
        3.0 + 2.0 * (1.0 * p.y[0] - 0.0 * p.x[0])
    ) ** 2
    assert abs(d4 - 2.0) <= 1e-12
    assert abs(res.distance - 2.0**0.25) <= 1e-14


def test_nearest_point_gauge_small_t_limit():
    xi0 = HeisenbergPoint([0.7], [-0.4], 1e-6)
    p = nearest_point_gauge(xi0).points[0]
    assert np.allclose(p.coords()[:2], [0.7, -0.4], atol=1e-6)
    assert p.t == 0.0


def test_nearest_point_gauge_grid_oracle():
    rng = np.random.default_rng(2)
    for _ in range(5):
        x, y = rng.normal(size=2)
        t = rng.uniform(0.5, 4.0)
        res = nearest_point_gauge(HeisenbergPoint([x], [y], t))
        L = 4.0 * max(1.0, np.hypot(x, y))
        g = np.linspace(-L, L, 400)
        XP, YP = x + g[:, None], y + g[None, :]
        d4 = ((XP - x) ** 2 + (YP - y) ** 2) ** 2 + (t + 2.0 * (x * YP - y * XP)) ** 2
        grid_min = np.min(d4) ** 0.25
        spacing = 2.0 * L / 400
        assert grid_min >= res.distance - 1e-12  # grid is an upper bound
        assert grid_min - res.distance <= spacing  # agreement at resolution


def test_nearest_point_gauge_axis_rejected():
    with pytest.raises(ValueError):
        nearest_point_gauge(HeisenbergPoint([0.0], [0.0], 1.0))


def test_inverse_nearest_gauge_example():
    xi = inverse_nearest_gauge(HeisenbergPoint([1.0], [-1.0], 0.0), 2.0**0.25)
    assert np.allclose(xi.coords(), [1.0, 0.0, 3.0], atol=1e-12)


def test_inverse_nearest_gauge_roundtrip():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        xi = rand_upper_point(rng)
        res = nearest_point_gauge(xi)
        back = inverse_nearest_gauge(res.points[0], res.distance)
        assert np.max(np.abs(back.coords() - xi.coords())) <= 1e-9 * max(
            1.0, np.max(np.abs(xi.coords()))
        )


def test_inverse_nearest_gauge_small_rho():
    xp = HeisenbergPoint([1.0], [-1.0], 0.0)
    for rho in (1e-2, 1e-4):
        xi = inverse_nearest_gauge(xp, rho)
        assert abs(d_gauge_halfspace(xi.r, xi.t) - rho) <= 1e-9 * max(1.0, rho)
        assert np.max(np.abs(xi.coords() - xp.coords())) <= 10.0 * rho


# --- CC half-space ---------------------------------------------------------


def test_cc_halfspace_values():
    assert abs(d_cc_halfspace(1.0, np.pi / 2 + 1.0) - np.pi / (2.0 * np.sqrt(2.0))) <= 1e-12
    assert d_cc_halfspace(0.0, 2.0 / np.pi) == 1.0
    assert abs(d_cc_halfspace(1.0, 0.01) - 0.005) <= 5e-4
    with pytest.raises(ValueError):
        d_cc_halfspace(1.0, 0.0)


def test_cc_strict_angle_bound():
    rng = np.random.default_rng(4)
    for _ in range(300):
        xi = rand_upper_point(rng)
        res = nearest_point_cc(xi)
        rp = res.points[0].r
        assert res.distance < 0.5 * np.pi * rp


def test_nearest_point_cc_example():
    xi = HeisenbergPoint([1.0], [0.0], np.pi / 2 + 1.0)
    res = nearest_point_cc(xi)
    assert res.multiplicity_tag == "unique"
    p = res.points[0]
    assert np.allclose(p.coords(), [1.0, -1.0, 0.0], atol=1e-12)
    assert abs(p.r**2 - 2.0) <= 1e-12  # r'^2 = r^2 / cos^2 phi
    assert abs(res.distance - np.pi * np.sqrt(2.0) / 4.0) <= 1e-12


def test_nearest_point_cc_axis_circle():
    xi = HeisenbergPoint([0.0], [0.0], np.pi / 2)
    res = nearest_point_cc(xi)
    assert res.multiplicity_tag == "circle"
    assert len(res.points) >= 8
    assert abs(res.distance - np.pi / 2) <= 1e-14
    for p in res.points:
        assert abs(p.r - 1.0) <= 1e-12  # radius sqrt(2 t / pi) = 1
        assert abs(cc_distance(xi, p) - res.distance) <= 1e-10


def test_nearest_point_cc_sampling_oracle():
    rng = np.random.default_rng(5)
    H = HalfSpace.canonical(1)
    for _ in range(20):
        xi = rand_upper_point(rng)
        res = nearest_point_cc(xi)
        sampled = brute_force_boundary_distance(H, xi, "cc", 10_000)
        assert res.distance <= sampled + 1e-6
        assert abs(cc_distance(xi, res.points[0]) - res.distance) <= 1e-10


def test_inverse_nearest_cc_two_branches():
    xp = HeisenbergPoint([1.0], [-1.0], 0.0)
    rho = np.pi * np.sqrt(2.0) / 4.0
    pts = inverse_nearest_cc(xp, rho)
    assert len(pts) == 2
    assert np.allclose(pts[0].coords(), [1.0, 0.0, np.pi / 2 + 1.0], atol=1e-12)
    assert np.allclose(pts[1].coords(), [0.0, 0.0, 2.0 * rho**2 / np.pi], atol=1e-12)
    for p in pts:
        assert abs(d_cc_halfspace(p.r, p.t) - rho) <= 1e-9


def test_inverse_nearest_cc_single_branch():
    xp = HeisenbergPoint([1.0], [0.0], 0.0)
    pts = inverse_nearest_cc(xp, 2.0)  # 2 > pi/2, only the axis point
    assert len(pts) == 1
    assert np.allclose(pts[0].coords(), [0.0, 0.0, 8.0 / np.pi], atol=1e-14)
    assert abs(d_cc_halfspace(pts[0].r, pts[0].t) - 2.0) <= 1e-12
    with pytest.raises(ValueError):
        inverse_nearest_cc(HeisenbergPoint([0.0], [0.0], 0.0), 1.0)


def test_cc_two_branch_consistency():
    rng = np.random.default_rng(6)
    for _ in range(200):
        xi = rand_upper_point(rng)
        res = nearest_point_cc(xi)
        pts = inverse_nearest_cc(res.points[0], res.distance)
        assert len(pts) == 2
        # off-axis branch recovers xi, both branches share the distance
        assert np.max(np.abs(pts[0].coords() - xi.coords())) <= 1e-9 * max(
            1.0, np.max(np.abs(xi.coords()))
        )
        for p in pts:
            assert abs(d_cc_halfspace(p.r, p.t) - res.distance) <= 1e-9


def test_returned_points_lie_on_boundary():
    rng = np.random.default_rng(7)
    for _ in range(50):
        xi = rand_upper_point(rng)
        for res in (nearest_point_gauge(xi), nearest_point_cc(xi)):
            for p in res.points:
                assert abs(p.t) <= 1e-10
    # distance equals the metric distance to each returned point
    xi = HeisenbergPoint([0.8], [0.6], 2.0)
    rg = nearest_point_gauge(xi)
    p = rg.points[0]
    rel_r = np.hypot(p.x[0] - xi.x[0], p.y[0] - xi.y[0])
    rel_t = xi.t - p.t + 2.0 * (p.y[0] * xi.x[0] - p.x[0] * xi.y[0])
    assert abs(gauge_norm_rt(rel_r, rel_t) - rg.distance) <= 1e-10
    rc = nearest_point_cc(xi)
    assert abs(cc_distance(xi, rc.points[0]) - rc.distance) <= 1e-10


# --- half-spaces, frames, polytopes ---------------------------------------


def test_left_invariance_of_anchored_distances():
    rng = np.random.default_rng(8)
    H0 = HalfSpace.canonical(1)
    for _ in range(100):
        xi = rand_upper_point(rng)
        g = HeisenbergPoint(rng.normal(size=1), rng.normal(size=1), rng.normal())
        Hg = HalfSpace.anchored(g)
        moved = multiply(g, xi)
        for metric in ("gauge", "cc"):
            a = d_halfspace(H0, xi, metric)
            b = d_halfspace(Hg, moved, metric)
            assert abs(a - b) <= 1e-10 * max(1.0, a)


def test_flipped_anchor_frame():
    rng = np.random.default_rng(9)
    for _ in range(50):
        xi = rand_upper_point(rng)
        g = HeisenbergPoint(rng.normal(size=1), rng.normal(size=1), rng.normal())
        F = HalfSpace.anchored(g, flip=True)
        theta_xi = HeisenbergPoint(xi.y, xi.x, -xi.t)
        moved = multiply(g, theta_xi)
        assert F.contains(moved)
        for metric in ("gauge", "cc"):
            assert abs(
                d_halfspace(F, moved, metric) - d_halfspace(HalfSpace.canonical(1), xi, metric)
            ) <= 1e-10


def test_euclidean_halfspace_distance():
    H = HalfSpace.euclidean([0.0, 0.0, -1.0], -1.0)  # the set {t < 1}
    xi = HeisenbergPoint([0.3], [0.1], 0.25)
    assert abs(d_halfspace(H, xi, "euclidean") - 0.75) <= 1e-14
    with pytest.raises(UnsupportedConfiguration):
        d_halfspace(H, xi, "gauge")


def unit_cube_polytope():
    faces = (
        HalfSpace.euclidean([1.0, 0.0, 0.0], 0.0),
        HalfSpace.euclidean([-1.0, 0.0, 0.0], -1.0),
        HalfSpace.euclidean([0.0, 1.0, 0.0], 0.0),
        HalfSpace.euclidean([0.0, -1.0, 0.0], -1.0),
        HalfSpace.canonical(1),  # t > 0 as an anchored face
        HalfSpace.euclidean([0.0, 0.0, -1.0], -1.0),
    )
    box = np.array([[0.0, 1.0]] * 3)
    return ConvexPolytope(faces, box)


def test_cube_center_distance():
    P = unit_cube_polytope()
    center = HeisenbergPoint([0.5], [0.5], 0.5)
    assert abs(d_polytope(P, center, "euclidean") - 0.5) <= 1e-14
    geom = P.check_geometry(samples=2000, seed=0)
    assert geom["nonempty"]


def test_single_face_polytope_matches_halfspace():
    rng = np.random.default_rng(10)
    P = ConvexPolytope((HalfSpace.canonical(1),))
    for _ in range(20):
        xi = rand_upper_point(rng)
        for metric in ("euclidean", "gauge", "cc"):
            assert d_polytope(P, xi, metric) == d_halfspace(HalfSpace.canonical(1), xi, metric)


def random_wedge(rng, faces=4):
    anchors = [
        HeisenbergPoint(0.3 * rng.normal(size=1), 0.3 * rng.normal(size=1), -rng.uniform(1.0, 2.0))
        for _ in range(faces)
    ]
    return ConvexPolytope(tuple(HalfSpace.anchored(g) for g in anchors))


def test_polytope_min_over_faces():
    rng = np.random.default_rng(11)
    P = random_wedge(rng)
    kept = 0
    while kept < 100:
        xi = HeisenbergPoint(0.5 * rng.normal(size=1), 0.5 * rng.normal(size=1), rng.uniform(0, 1.5))
        if not P.contains(xi):
            continue
        kept += 1
        per_face = [d_halfspace(f, xi, "gauge") for f in P.faces]
        d = d_polytope(P, xi, "gauge")
        assert all(d <= v + 1e-14 for v in per_face)
        assert abs(d - min(per_face)) <= 1e-14


def test_nested_polytope_monotone_cc():
    rng = np.random.default_rng(12)
    P = random_wedge(rng)
    delta = 0.2
    shifted = tuple(
        HalfSpace.anchored(multiply(f.anchor, HeisenbergPoint([0.0], [0.0], delta)))
        for f in P.faces
    )
    P_inner = ConvexPolytope(shifted)
    kept = 0
    while kept < 100:
        xi = HeisenbergPoint(0.4 * rng.normal(size=1), 0.4 * rng.normal(size=1), rng.uniform(0, 1.0))
        if not P_inner.contains(xi):
            continue
        kept += 1
        assert d_polytope(P_inner, xi, "cc") <= d_polytope(P, xi, "cc") + 1e-12


def test_vertical_face_unsupported():
    P = ConvexPolytope((HalfSpace.canonical(1), HalfSpace.euclidean([1.0, 0.0, 0.0], -2.0)))
    xi = HeisenbergPoint([0.5], [0.0], 1.0)
    assert d_polytope(P, xi, "euclidean") > 0
    with pytest.raises(UnsupportedConfiguration):
        d_polytope(P, xi, "cc")


# --- brute-force oracle ----------------------------------------------------


def test_brute_force_gauge_convergence():
    H = HalfSpace.canonical(1)
    xi = HeisenbergPoint([1.0], [0.0], 3.0)
    val = brute_force_boundary_distance(H, xi, "gauge", 1_000_000)
    assert val >= 2.0**0.25 - 1e-12
    assert val - 2.0**0.25 <= 1e-3


def test_brute_force_torus_matches_closed_form():
    T = Torus(10.0, 1.0)
    xi = HeisenbergPoint([10.3], [0.0], 0.4)
    val = brute_force_boundary_distance(T, xi, "euclidean", 250_000)
    exact = d_eucl_torus(T, xi.r, xi.t)
    assert val >= exact - 1e-12
    assert val - exact <= 1e-4


def test_brute_force_cc_axis_point():
    H = HalfSpace.canonical(1)
    xi = HeisenbergPoint([0.0], [0.0], 2.0 / np.pi)
    val = brute_force_boundary_distance(H, xi, "cc", 1_000_000)
    assert abs(val - 1.0) <= 2e-3


def test_oracle_domination():
    rng = np.random.default_rng(13)
    H = HalfSpace.canonical(1)
    for _ in range(10):
        xi = rand_upper_point(rng)
        for metric, exact in (
            ("gauge", d_gauge_halfspace(xi.r, xi.t)),
            ("cc", d_cc_halfspace(xi.r, xi.t)),
        ):
            val = brute_force_boundary_distance(H, xi, metric, 90_000)
            assert exact <= val + 1e-12
            # sampling resolution of the 300x300 cloud is about 1 percent
            assert val - exact <= 1e-2 * max(1.0, exact)


def test_boundary_distance_dispatch_errors():
    T = Torus(10.0, 1.0)
    xi = HeisenbergPoint([10.0], [0.0], 0.2)
    with pytest.raises(UnsupportedConfiguration):
        boundary_distance(T, xi, "gauge")
    with pytest.raises(ValueError):
        boundary_distance(T, HeisenbergPoint([1.0], [0.0], 0.0), "euclidean")
    with pytest.raises(ValueError):
        boundary_distance(HalfSpace.canonical(1), HeisenbergPoint([1.0], [0.0], -1.0), "gauge")
