import numpy as np
import pytest

from heishardy import (
    GroupElement,
    HalfSpace,
    TestFunctionSpec,
    Torus,
    UnsupportedConfiguration,
    epsilon_sweep,
    h_concavity_counterexample_search,
    h_concavity_cube_scan,
    h_concavity_sample,
    hardy_quotient,
    heisenberg_group,
    lipschitz_probe,
    truncated_boundary_mass,
    uncertainty_check,
)
from heishardy.lab import distance_profile

GRID = (32, 32)


def sweep_configs():
    return [
        (HalfSpace.canonical(1), "gauge"),
        (HalfSpace.canonical(1), "cc"),
        (Torus(10.0, 1.0), "euclidean"),
    ]


def test_quotient_floor_and_ceiling():
    for domain, metric in sweep_configs():
        for eps in (0.2, 0.1, 0.05):
            rep = hardy_quotient(domain, metric, 2.0, TestFunctionSpec(exponent_eps=eps), grid=GRID)
            assert rep.quotient >= 0.25 - 1e-3
            assert rep.quotient <= (0.5 + eps) ** 2 + 0.05
            assert rep.numerator > 0 and rep.denominator > 0
            assert abs(rep.quotient - rep.numerator / rep.denominator) <= 1e-15
            assert rep.target == 0.25


def test_sweep_strictly_decreasing_and_gap():
    for domain, metric in sweep_configs():
        reps = epsilon_sweep(domain, metric, 2.0, [0.2, 0.1, 0.05], grid=GRID)
        for a, b in zip(reps, reps[1:]):
            assert b.quotient < a.quotient + 2.0 * max(a.est_error, b.est_error)
        for rep in reps:
            assert rep.quotient - 0.25 <= (0.5 + rep.eps) ** 2 - 0.25 + 0.05


def test_sweep_validation():
    H = HalfSpace.canonical(1)
    with pytest.raises(ValueError):
        epsilon_sweep(H, "gauge", 2.0, [0.1, 0.2], grid=GRID)
    with pytest.raises(ValueError):
        epsilon_sweep(H, "gauge", 2.0, [0.1, 0.01], grid=GRID)  # below the eps floor


def test_richardson_levels_contract():
    # doubling the grid moves the quotient by less than the reported estimate
    rep = hardy_quotient(
        HalfSpace.canonical(1), "gauge", 2.0, TestFunctionSpec(exponent_eps=0.1), grid=(24, 24)
    )
    q1, q2, q3 = rep.level_quotients
    assert abs(q3 - q2) <= abs(q2 - q1)
    assert rep.est_error == abs(q3 - q2)


def test_quotient_unsupported_configs():
    with pytest.raises(UnsupportedConfiguration):
        hardy_quotient(Torus(10.0, 1.0), "gauge", 2.0, TestFunctionSpec(exponent_eps=0.1))
    with pytest.raises(UnsupportedConfiguration):
        hardy_quotient(HalfSpace.canonical(1), "euclidean", 2.0, TestFunctionSpec(exponent_eps=0.1))


def test_cutoff_support_validation():
    # a cutoff_outer beyond the window's distance range must be rejected
    with pytest.raises(ValueError):
        hardy_quotient(
            HalfSpace.canonical(1),
            "gauge",
            2.0,
            TestFunctionSpec(exponent_eps=0.1, cutoff_outer=5.0),
            grid=(16, 16),
        )


def test_distance_profile_contract():
    d = np.geomspace(1e-6, 1.0, 400)
    P, Pp = distance_profile(d, 1e-4, 0.3)
    assert np.all(P[d <= 1e-4] == 1.0)
    assert np.all(P[d >= 0.3] == 0.0)
    assert np.all(np.diff(P) <= 1e-15)
    mid = (d > 1e-4) & (d < 0.3)
    assert np.all(Pp[mid] <= 0.0)


def test_uncertainty_ratio_and_scaling():
    for metric in ("gauge", "cc"):
        rep = uncertainty_check(
            HalfSpace.canonical(1), metric, TestFunctionSpec(exponent_eps=0.1), grid=GRID
        )
        assert rep.ratio >= 1.0 - 1e-3
        scaled = uncertainty_check(
            HalfSpace.canonical(1), metric, TestFunctionSpec(exponent_eps=0.1), grid=GRID, scale=3.0
        )
        assert abs(rep.ratio - scaled.ratio) <= 1e-12 * rep.ratio


# --- weak H-concavity --------------------------------------------------------


def cube_distance(g: GroupElement):
    flat = g.flat()
    if np.any(flat <= 0.0) or np.any(flat >= 1.0):
        return None
    return float(np.min(np.minimum(flat, 1.0 - flat)))


def test_h_concavity_sample_endpoints():
    G = heisenberg_group(1)
    g = GroupElement(np.array([0.5, 0.5]), np.array([0.5]))
    v = np.array([0.2, 0.0])
    for lam in (0.0, 1.0):
        lhs, rhs, margin = h_concavity_sample(G, cube_distance, g, v, lam)
        assert abs(margin) <= 1e-14


def test_h_concavity_sample_cube_midpoint():
    G = heisenberg_group(1)
    g = GroupElement(np.array([0.5, 0.5]), np.array([0.5]))
    lhs, rhs, margin = h_concavity_sample(G, cube_distance, g, np.array([0.2, 0.0]), 0.5)
    assert margin >= -1e-14


def test_h_concavity_sample_skipped():
    G = heisenberg_group(1)
    g = GroupElement(np.array([0.9, 0.9]), np.array([0.5]))
    out = h_concavity_sample(G, cube_distance, g, np.array([5.0, 0.0]), 0.5)
    assert out is None


def test_cube_scan_no_violations():
    scan = h_concavity_cube_scan(samples=20_000, seed=0)
    assert scan.samples == 20_000
    assert scan.violations == 0
    assert scan.worst_margin >= -1e-12


def test_counterexample_matches_asymptotic_margin():
    # xi = (1, 0, t), xi' = (2, 0, t), lam = 1/2: near the boundary the
    # violation margin approaches t/24
    t = 1e-3
    res = h_concavity_counterexample_search(t_scale=t, radii=(1.0,), factors=(2.0,))
    assert res.found and res.horizontal_ok
    assert abs(res.margin - t / 24.0) <= 0.02 * (t / 24.0)


def test_counterexample_margin_scales_linearly():
    scales = (1e-2, 1e-3, 1e-4)
    margins = []
    for ts in scales:
        res = h_concavity_counterexample_search(t_scale=ts)
        assert res.found
        assert res.margin >= 1e-6 * ts
        margins.append(res.margin)
    slope = np.polyfit(np.log(scales), np.log(margins), 1)[0]
    assert 0.8 <= slope <= 1.2


# --- Lipschitz probe and boundary mass ---------------------------------------


def test_lipschitz_probe_reports():
    for norm in ("gauge", "cc"):
        rep = lipschitz_probe(norm, pairs=5000, seed=1)
        assert np.isfinite(rep.max_ratio) and rep.max_ratio > 0
        assert rep.pairs <= 5000
        print(f"lipschitz probe ({norm}): max ratio {rep.max_ratio:.6f} on {rep.region}")


def test_lipschitz_probe_scale_stable():
    a = lipschitz_probe("gauge", pairs=4000, seed=3, dilation=1.0)
    b = lipschitz_probe("gauge", pairs=4000, seed=3, dilation=5.0)
    assert abs(a.max_ratio - b.max_ratio) <= 1e-12


def test_lipschitz_probe_deterministic():
    assert lipschitz_probe("cc", pairs=2000, seed=7) == lipschitz_probe("cc", pairs=2000, seed=7)


def test_truncated_boundary_mass_diverges():
    collars = (1e-1, 1e-2, 1e-3, 1e-4)
    masses = [truncated_boundary_mass("gauge", c) for c in collars]
    assert all(b > a for a, b in zip(masses, masses[1:]))
    increments = np.diff(masses)
    # logarithmic growth: equal mass per decade of collar
    assert np.max(np.abs(increments / increments[0] - 1.0)) <= 0.05
