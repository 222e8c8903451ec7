import numpy as np

from heishardy import (
    HeisenbergPoint,
    cc_distance,
    cc_norm,
    cc_norm_rt,
    dilate,
    gauge_distance,
    gauge_norm,
    gauge_norm_rt,
    identity,
    inverse,
    multiply,
)


def random_point(rng, n=1):
    return HeisenbergPoint(rng.normal(size=n), rng.normal(size=n), rng.normal())


def test_gauge_spot_values():
    assert gauge_norm(identity(1)) == 0.0
    assert gauge_norm(HeisenbergPoint([1.0], [0.0], 0.0)) == 1.0
    assert gauge_norm(HeisenbergPoint([0.0], [0.0], 4.0)) == 2.0


def test_cc_spot_values():
    assert cc_norm(HeisenbergPoint([0.0], [0.0], 1.0 / np.pi)) == 1.0
    assert abs(cc_norm_rt(1.0, np.pi / 2) - np.pi / 2) <= 1e-12
    assert cc_norm_rt(1.0, 0.0) == 1.0


def test_homogeneity():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        xi = random_point(rng, 2)
        lam = rng.uniform(0.05, 20.0)
        eta = dilate(xi, lam)
        assert abs(gauge_norm(eta) - lam * gauge_norm(xi)) <= 1e-10 * max(1.0, lam * gauge_norm(xi))
        assert abs(cc_norm(eta) - lam * cc_norm(xi)) <= 1e-8 * max(1.0, lam * cc_norm(xi))


def test_symmetry():
    rng = np.random.default_rng(1)
    for _ in range(300):
        xi = random_point(rng)
        assert gauge_norm(xi) == gauge_norm(inverse(xi))
        assert abs(cc_norm(xi) - cc_norm(inverse(xi))) <= 1e-10


def test_quasi_norm_equivalence_bracket():
    """On the gauge unit sphere, rho/N stays in a fixed positive bracket."""
    rng = np.random.default_rng(2)
    ratios = []
    for _ in range(2000):
        xi = random_point(rng)
        N = gauge_norm(xi)
        unit = dilate(xi, 1.0 / N)
        ratios.append(cc_norm(unit))
    c1, c2 = min(ratios), max(ratios)
    print(f"observed rho/N bracket on the N-unit sphere: [{c1:.6f}, {c2:.6f}]")
    assert 0.0 < c1 <= c2 < np.inf
    # the extremes are attained on the plane t=0 (ratio 1) and on the center
    # (ratio sqrt(pi)); samples must stay inside
    assert c1 >= 1.0 - 1e-9
    assert c2 <= np.sqrt(np.pi) + 1e-9


def test_center_continuity():
    for t in (0.5, 1.0, 3.0):
        near = cc_norm_rt(1e-6, t)
        axis = cc_norm_rt(0.0, t)
        assert axis == np.sqrt(np.pi * t)
        assert abs(near - axis) <= 1e-5 * axis


def test_left_invariant_distances():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a, b, g = (random_point(rng) for _ in range(3))
        ga, gb = multiply(g, a), multiply(g, b)
        assert abs(gauge_distance(ga, gb) - gauge_distance(a, b)) <= 1e-10
        assert abs(cc_distance(ga, gb) - cc_distance(a, b)) <= 1e-9


def test_array_broadcasting():
    r = np.linspace(0.0, 2.0, 7)
    t = np.linspace(-3.0, 3.0, 7)
    assert gauge_norm_rt(r, t).shape == (7,)
    assert cc_norm_rt(r, t).shape == (7,)
    # even in t
    assert np.allclose(cc_norm_rt(r, t), cc_norm_rt(r, -t))
