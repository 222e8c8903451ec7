"""Distance to the boundary for half-spaces, torii and convex polytopes.

Closed forms exist for

  * the Euclidean distance inside the symmetric torus
    (r - R)^2 + t^2 < rho^2,
  * the gauge pseudodistance to the boundary of the model half-space
    {t > 0} (and its left translates), through the cubic s^3 + 2s = t/r^2,
  * the CC distance to the same boundary, through the angle equation
    Q(phi) = t/r^2 on (0, pi/2),

together with the nearest-boundary-point maps in both directions.  Everything
else (vertical faces, non-Euclidean torus metrics) is served by the
brute-force sampling oracle, which is also the test oracle for the closed
forms.

Half-spaces are represented either as group translates g0 * {t > 0} (usable
with every metric; the optional flip composes with the norm-preserving
automorphism (x, y, t) -> (y, x, -t) so that lower half-spaces {t < c + ...}
are reachable too), or as plain Euclidean half-spaces {nu . xi > c}, which
only the Euclidean metric and the sampling oracle can serve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import CylCoords, HeisenbergPoint, identity, inverse, multiply
from .norms import cc_norm_rt, gauge_norm_rt
from .solvers import q_angle, solve_cubic_s

__all__ = [
    "UnsupportedConfiguration",
    "HalfSpace",
    "Torus",
    "ConvexPolytope",
    "NearestPointResult",
    "d_eucl_torus",
    "d_gauge_halfspace",
    "d_cc_halfspace",
    "d_halfspace",
    "d_polytope",
    "boundary_distance",
    "nearest_point_gauge",
    "inverse_nearest_gauge",
    "nearest_point_cc",
    "inverse_nearest_cc",
    "brute_force_boundary_distance",
]

METRICS = ("euclidean", "gauge", "cc")

# Below r = 1e-8 sqrt(t) the implicit equations lose conditioning and the
# exact axis formulas take over.
_AXIS_SWITCH = 1e-8


class UnsupportedConfiguration(Exception):
    """A domain/metric combination with no supported closed form."""


def _check_metric(metric: str) -> str:
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    return metric


def domain_from_config(cfg: dict):
    """Build a domain from a declarative description.

    Keys: type ("halfspace" | "torus" | "polytope"), n, R, rho,
    faces (list of {"anchor": [x.., y.., t], "flip": bool} or
    {"normal": [...], "offset": c}), bounding_box ((2n+1) x 2 array).
    """
    kind = cfg.get("type")
    n = int(cfg.get("n", 1))
    if kind == "halfspace":
        if "anchor" in cfg:
            from .group import HeisenbergPoint as _HP

            return HalfSpace.anchored(_HP.from_coords(cfg["anchor"]), flip=bool(cfg.get("flip", False)))
        return HalfSpace.canonical(n)
    if kind == "torus":
        return Torus(float(cfg["R"]), float(cfg["rho"]), n)
    if kind == "polytope":
        from .group import HeisenbergPoint as _HP

        faces = []
        for f in cfg["faces"]:
            if "anchor" in f:
                faces.append(
                    HalfSpace.anchored(_HP.from_coords(f["anchor"]), flip=bool(f.get("flip", False)))
                )
            else:
                faces.append(HalfSpace.euclidean(f["normal"], float(f["offset"])))
        box = cfg.get("bounding_box")
        return ConvexPolytope(tuple(faces), None if box is None else np.asarray(box, dtype=float))
    raise ValueError(f"unknown domain type {kind!r}")


def _swap_xy(xi: HeisenbergPoint) -> HeisenbergPoint:
    """The norm-preserving automorphism (x, y, t) -> (y, x, -t)."""
    return HeisenbergPoint(xi.y, xi.x, -xi.t)


@dataclass(frozen=True)
class HalfSpace:
    """One half-space of H^n.

    Exactly one of `anchor` (group translate of {t > 0}, optionally flipped
    through the automorphism above) and `normal`/`offset` (Euclidean
    description {nu . xi > c}) is active.
    """

    anchor: HeisenbergPoint | None = None
    normal: np.ndarray | None = None
    offset: float = 0.0
    flip: bool = False

    def __post_init__(self):
        if (self.anchor is None) == (self.normal is None):
            raise ValueError("exactly one of anchor and normal must be given")
        if self.normal is not None:
            nu = np.asarray(self.normal, dtype=float).ravel()
            if nu.size < 3 or nu.size % 2 == 0 or not np.linalg.norm(nu) > 0:
                raise ValueError("normal must be a nonzero (2n+1)-vector")
            nu.setflags(write=False)
            object.__setattr__(self, "normal", nu)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def canonical(cls, n: int = 1) -> "HalfSpace":
        """The model half-space {t > 0}."""
        return cls(anchor=identity(n))

    @classmethod
    def anchored(cls, g0: HeisenbergPoint, flip: bool = False) -> "HalfSpace":
        return cls(anchor=g0, flip=flip)

    @classmethod
    def euclidean(cls, normal, offset: float) -> "HalfSpace":
        return cls(normal=np.asarray(normal, dtype=float), offset=offset)

    @property
    def is_anchored(self) -> bool:
        return self.anchor is not None

    @property
    def is_vertical(self) -> bool:
        """Whether the boundary hyperplane is parallel to the t-axis."""
        return self.normal is not None and self.normal[-1] == 0.0

    def euclid_normal_offset(self) -> tuple[np.ndarray, float]:
        """Inward Euclidean normal nu and offset c with the set {nu.xi > c}."""
        if self.normal is not None:
            return self.normal, self.offset
        g0 = self.anchor
        # (g0^-1 xi)_t = t - t0 + 2 y0.x - 2 x0.y, so the set {.. > 0} is the
        # Euclidean half-space with nu = (2 y0, -2 x0, 1) and c = t0.
        nu = np.concatenate([2.0 * g0.y, -2.0 * g0.x, [1.0]])
        c = g0.t
        if self.flip:
            nu, c = -nu, -c
        return nu, c

    def to_frame(self, xi: HeisenbergPoint) -> HeisenbergPoint:
        """Map xi into the coordinates where this half-space is {t > 0}."""
        if self.anchor is None:
            raise UnsupportedConfiguration(
                "half-space has no anchor; only the Euclidean metric and the "
                "sampling oracle apply"
            )
        eta = multiply(inverse(self.anchor), xi)
        return _swap_xy(eta) if self.flip else eta

    def from_frame(self, eta: HeisenbergPoint) -> HeisenbergPoint:
        """Inverse of `to_frame`."""
        if self.anchor is None:
            raise UnsupportedConfiguration("half-space has no anchor")
        return multiply(self.anchor, _swap_xy(eta) if self.flip else eta)

    def height(self, xi: HeisenbergPoint) -> float:
        """Signed defining function; positive inside the open half-space."""
        if self.anchor is not None:
            return self.to_frame(xi).t
        nu, c = self.euclid_normal_offset()
        return float(nu @ xi.coords() - c)

    def contains(self, xi: HeisenbergPoint) -> bool:
        return self.height(xi) > 0.0


@dataclass(frozen=True)
class Torus:
    """The t-axis-symmetric torus (r - R)^2 + t^2 < rho^2 in H^n."""

    R: float
    rho: float
    n: int = 1

    def __post_init__(self):
        if not (self.R > self.rho > 0.0):
            raise ValueError("need R > rho > 0")
        object.__setattr__(self, "R", float(self.R))
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "n", int(self.n))

    def contains_rt(self, r, t) -> bool:
        return bool(np.all(np.hypot(np.asarray(r) - self.R, t) < self.rho))

    def contains(self, xi: HeisenbergPoint) -> bool:
        return self.contains_rt(xi.r, xi.t)


@dataclass(frozen=True)
class ConvexPolytope:
    """Intersection of finitely many half-spaces with a sampling box.

    bounding_box is a (2n+1, 2) array of [lo, hi] per coordinate, used by
    samplers and the advisory geometry check.
    """

    faces: tuple[HalfSpace, ...]
    bounding_box: np.ndarray | None = None

    def __post_init__(self):
        faces = tuple(self.faces)
        if not faces:
            raise ValueError("polytope needs at least one face")
        object.__setattr__(self, "faces", faces)
        if self.bounding_box is not None:
            bb = np.asarray(self.bounding_box, dtype=float)
            if bb.ndim != 2 or bb.shape[1] != 2:
                raise ValueError("bounding_box must have shape (2n+1, 2)")
            bb.setflags(write=False)
            object.__setattr__(self, "bounding_box", bb)

    def contains(self, xi: HeisenbergPoint) -> bool:
        return all(f.contains(xi) for f in self.faces)

    def check_geometry(self, samples: int = 4000, seed: int = 0) -> dict:
        """Advisory sampling check: nonemptiness and active faces.

        Draws points in the bounding box, reports the interior hit fraction
        and, per face, the smallest positive height seen (a face whose
        minimum stays large may be inactive).
        """
        if self.bounding_box is None:
            raise ValueError("check_geometry needs a bounding_box")
        rng = np.random.default_rng(seed)
        lo, hi = self.bounding_box[:, 0], self.bounding_box[:, 1]
        pts = rng.uniform(lo, hi, size=(samples, lo.size))
        inside = 0
        min_height = [np.inf] * len(self.faces)
        for row in pts:
            xi = HeisenbergPoint.from_coords(row)
            h = [f.height(xi) for f in self.faces]
            if min(h) > 0:
                inside += 1
                for k, v in enumerate(h):
                    min_height[k] = min(min_height[k], v)
        return {
            "interior_fraction": inside / samples,
            "nonempty": inside > 0,
            "min_face_height": min_height,
        }


@dataclass(frozen=True)
class NearestPointResult:
    """Distance together with the realizing boundary points.

    multiplicity_tag is "unique" (single nearest point), "circle" (a circle
    of minimizers, represented by samples), or "two_branch" (two equidistant
    preimages in the inverse CC problem).
    """

    distance: float
    points: tuple[HeisenbergPoint, ...]
    multiplicity_tag: str

    def __post_init__(self):
        if self.multiplicity_tag not in ("unique", "circle", "two_branch"):
            raise ValueError(f"unknown multiplicity tag {self.multiplicity_tag!r}")
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "distance", float(self.distance))


# ---------------------------------------------------------------------------
# Closed forms in the model frame
# ---------------------------------------------------------------------------


def d_eucl_torus(T: Torus, r, t):
    """Euclidean distance rho - sqrt((r-R)^2 + t^2) to the torus boundary."""
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    q = np.hypot(r - T.R, t)
    if np.any(q > T.rho * (1.0 + 1e-12)):
        raise ValueError("point outside the closed torus")
    out = T.rho - np.minimum(q, T.rho)
    return out if out.ndim else float(out)


def _require_upper(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if not np.all(t > 0.0):
        raise ValueError("point must lie in the open half-space t > 0")
    return t


def d_gauge_halfspace(r, t):
    """Gauge distance from (r, t), t > 0, to the boundary of {t > 0}.

    Equal to (2 r^4 s^2 - 3 t r^2 s + t^2)^(1/4) with s^3 + 2s = t/r^2; the
    equivalent product form r s (1 + s^2)^(1/4) is used, which is stable for
    small s.  On the axis the value is sqrt(t).
    """
    t = _require_upper(t)
    r = np.asarray(r, dtype=float)
    r_b, t_b = np.broadcast_arrays(r, t)
    on_axis = r_b < _AXIS_SWITCH * np.sqrt(t_b)
    r_safe = np.where(on_axis, 1.0, r_b)
    s = solve_cubic_s(np.where(on_axis, 0.0, t_b / (r_safe * r_safe)))
    general = r_b * s * (1.0 + s * s) ** 0.25
    out = np.where(on_axis, np.sqrt(t_b), general)
    return out if out.ndim else float(out)


def d_cc_halfspace(r, t):
    """CC distance from (r, t), t > 0, to the boundary of {t > 0}.

    Equal to (phi / cos phi) r with Q(phi) = t/r^2 on (0, pi/2); on the axis
    sqrt(pi t / 2).
    """
    t = _require_upper(t)
    r = np.asarray(r, dtype=float)
    r_b, t_b = np.broadcast_arrays(r, t)
    on_axis = r_b < _AXIS_SWITCH * np.sqrt(t_b)
    r_safe = np.where(on_axis, 1.0, r_b)
    phi = q_angle(np.where(on_axis, 1.0, t_b / (r_safe * r_safe)))
    general = r_b * phi / np.cos(phi)
    out = np.where(on_axis, np.sqrt(0.5 * np.pi * t_b), general)
    return out if out.ndim else float(out)


def _canonical_halfspace_distance(metric: str, r: float, t: float) -> float:
    if metric == "euclidean":
        return float(t)
    if metric == "gauge":
        return float(d_gauge_halfspace(r, t))
    return float(d_cc_halfspace(r, t))


def d_halfspace(H: HalfSpace, xi: HeisenbergPoint, metric: str) -> float:
    """Distance from an interior point to the boundary of one half-space."""
    _check_metric(metric)
    if H.is_anchored:
        eta = H.to_frame(xi)
        if eta.t <= 0.0:
            raise ValueError("point is not inside the half-space")
        if metric == "euclidean":
            nu, c = H.euclid_normal_offset()
            return float((nu @ xi.coords() - c) / np.linalg.norm(nu))
        return _canonical_halfspace_distance(metric, eta.r, eta.t)
    if metric != "euclidean":
        raise UnsupportedConfiguration(
            "no closed form for a non-anchored (e.g. vertical) face under the "
            f"{metric} metric"
        )
    nu, c = H.euclid_normal_offset()
    h = float(nu @ xi.coords() - c)
    if h <= 0.0:
        raise ValueError("point is not inside the half-space")
    return h / float(np.linalg.norm(nu))


def d_polytope(P: ConvexPolytope, xi: HeisenbergPoint, metric: str) -> float:
    """min over the faces of the per-face half-space distance."""
    _check_metric(metric)
    return min(d_halfspace(f, xi, metric) for f in P.faces)


def boundary_distance(domain, xi: HeisenbergPoint, metric: str) -> float:
    """Unified dispatch over the supported domain types."""
    _check_metric(metric)
    if isinstance(domain, HalfSpace):
        return d_halfspace(domain, xi, metric)
    if isinstance(domain, ConvexPolytope):
        return d_polytope(domain, xi, metric)
    if isinstance(domain, Torus):
        if metric != "euclidean":
            raise UnsupportedConfiguration(
                "torus boundary distance has a closed form only for the "
                "Euclidean metric; use the sampling oracle otherwise"
            )
        if not domain.contains(xi):
            raise ValueError("point is not inside the torus")
        return float(d_eucl_torus(domain, xi.r, xi.t))
    raise ValueError(f"unknown domain {type(domain).__name__}")


# ---------------------------------------------------------------------------
# Nearest boundary points for the model half-space
# ---------------------------------------------------------------------------


def nearest_point_gauge(xi: HeisenbergPoint) -> NearestPointResult:
    """The unique gauge-nearest boundary point of xi in {t > 0}.

    Given by x' = x + s y, y' = y - s x with s^3 + 2s = t/r^2.  For axis
    points the distance is sqrt(t) but the minimizer set is not described by
    this map, so the axis case is rejected.
    """
    if xi.t <= 0.0:
        raise ValueError("point must lie in the open half-space t > 0")
    r = xi.r
    if r < _AXIS_SWITCH * np.sqrt(xi.t):
        raise ValueError(
            "gauge nearest point is undetermined on the axis r = 0; the "
            "distance there is sqrt(t)"
        )
    s = solve_cubic_s(xi.t / (r * r))
    xp = HeisenbergPoint(xi.x + s * xi.y, xi.y - s * xi.x, 0.0)
    d = float(d_gauge_halfspace(r, xi.t))
    return NearestPointResult(distance=d, points=(xp,), multiplicity_tag="unique")


def inverse_nearest_gauge(xi_prime: HeisenbergPoint, rho_target: float) -> HeisenbergPoint:
    """The unique point at gauge distance rho whose nearest point is xi_prime.

    s > 0 solves r'^4 / rho^4 = (1 + s^2)/s^4, explicitly s^2 =
    (1 + sqrt(1 + 4K))/(2K) with K = r'^4/rho^4; then
    x = (x' - s y')/(1 + s^2), y = (s x' + y')/(1 + s^2), t = r^2 (s^3 + 2s).
    """
    rho_target = float(rho_target)
    if not (rho_target > 0.0):
        raise ValueError("rho_target must be positive")
    if abs(xi_prime.t) > 1e-12 * max(1.0, rho_target):
        raise ValueError("xi_prime must lie on the boundary t = 0")
    rp = xi_prime.r
    if rp == 0.0:
        raise ValueError("boundary points on the axis have no preimage")
    K = (rp / rho_target) ** 4
    s = np.sqrt((1.0 + np.sqrt(1.0 + 4.0 * K)) / (2.0 * K))
    den = 1.0 + s * s
    x = (xi_prime.x - s * xi_prime.y) / den
    y = (s * xi_prime.x + xi_prime.y) / den
    r_sq = (rp * rp) / den
    t = r_sq * s * (s * s + 2.0)
    return HeisenbergPoint(x, y, t)


def nearest_point_torus_euclidean(T: Torus, xi: HeisenbergPoint, circle_samples: int = 16) -> NearestPointResult:
    """Euclidean-nearest torus boundary point(s): the radial projection.

    Off the core circle the minimizer is unique, obtained by pushing
    (r - R, t) out to length rho.  On the core circle every boundary point
    of the meridian circle through xi realizes the distance rho.
    """
    if not T.contains(xi):
        raise ValueError("point is not inside the torus")
    r = xi.r
    q = float(np.hypot(r - T.R, xi.t))
    omega = np.concatenate([xi.x, xi.y]) / r  # axis is outside the torus, r > 0
    n = xi.n

    def cyl_point(rp: float, tp: float) -> HeisenbergPoint:
        v = rp * omega
        return HeisenbergPoint(v[:n], v[n:], tp)

    if q == 0.0:
        thetas = np.linspace(0.0, 2.0 * np.pi, max(8, circle_samples), endpoint=False)
        pts = tuple(cyl_point(T.R + T.rho * np.cos(a), T.rho * np.sin(a)) for a in thetas)
        return NearestPointResult(distance=T.rho, points=pts, multiplicity_tag="circle")
    rp = T.R + T.rho * (r - T.R) / q
    tp = T.rho * xi.t / q
    return NearestPointResult(
        distance=T.rho - q, points=(cyl_point(rp, tp),), multiplicity_tag="unique"
    )


def _circle_samples(xi: HeisenbergPoint, radius: float, count: int) -> tuple[HeisenbergPoint, ...]:
    """Boundary points on the (x1, y1)-plane circle of the given radius."""
    n = xi.n
    pts = []
    for theta in np.linspace(0.0, 2.0 * np.pi, count, endpoint=False):
        x = np.zeros(n)
        y = np.zeros(n)
        x[0] = radius * np.cos(theta)
        y[0] = radius * np.sin(theta)
        pts.append(HeisenbergPoint(x, y, 0.0))
    return tuple(pts)


def nearest_point_cc(xi: HeisenbergPoint, circle_samples: int = 16) -> NearestPointResult:
    """CC-nearest boundary points of xi in {t > 0}.

    Off the axis the minimizer is unique: x' = x + y tan phi,
    y' = y - x tan phi with Q(phi) = t/r^2.  On the axis every point of the
    circle r' = sqrt(2t/pi) realizes the distance sqrt(pi t / 2); a finite
    sample of the circle is returned.
    """
    if xi.t <= 0.0:
        raise ValueError("point must lie in the open half-space t > 0")
    r = xi.r
    if r < _AXIS_SWITCH * np.sqrt(xi.t):
        radius = float(np.sqrt(2.0 * xi.t / np.pi))
        d = float(np.sqrt(0.5 * np.pi * xi.t))
        count = max(8, int(circle_samples))
        return NearestPointResult(
            distance=d,
            points=_circle_samples(xi, radius, count),
            multiplicity_tag="circle",
        )
    phi = q_angle(xi.t / (r * r))
    tan = np.tan(phi)
    xp = HeisenbergPoint(xi.x + tan * xi.y, xi.y - tan * xi.x, 0.0)
    d = float(r * phi / np.cos(phi))
    return NearestPointResult(distance=d, points=(xp,), multiplicity_tag="unique")


def inverse_nearest_cc(xi_prime: HeisenbergPoint, rho_target: float) -> list[HeisenbergPoint]:
    """Points of {t > 0} at CC boundary distance rho tied to xi_prime.

    Returns the off-axis point reconstructed from phi = rho/r' whenever
    rho < pi r'/2 (its unique nearest point is xi_prime), followed by the
    axis point (0, 0, 2 rho^2/pi), whose boundary distance is also rho and
    whose minimizer set is the circle of radius 2 rho/pi.  The origin is
    never a nearest boundary point and is rejected.
    """
    rho_target = float(rho_target)
    if not (rho_target > 0.0):
        raise ValueError("rho_target must be positive")
    if abs(xi_prime.t) > 1e-12 * max(1.0, rho_target):
        raise ValueError("xi_prime must lie on the boundary t = 0")
    rp = xi_prime.r
    if rp == 0.0:
        raise ValueError("the origin is never a nearest boundary point")
    out: list[HeisenbergPoint] = []
    if rho_target < 0.5 * np.pi * rp:
        phi = rho_target / rp
        c, s = np.cos(phi), np.sin(phi)
        x = c * (c * xi_prime.x - s * xi_prime.y)
        y = c * (c * xi_prime.y + s * xi_prime.x)
        t = 0.5 * rp * rp * (2.0 * phi + np.sin(2.0 * phi))
        out.append(HeisenbergPoint(x, y, t))
    n = xi_prime.n
    out.append(HeisenbergPoint(np.zeros(n), np.zeros(n), 2.0 * rho_target**2 / np.pi))
    return out


# ---------------------------------------------------------------------------
# Brute-force sampling oracle
# ---------------------------------------------------------------------------


def _metric_distance_to_boundary_points(
    xi: HeisenbergPoint, bx: np.ndarray, by: np.ndarray, bt: np.ndarray, metric: str
):
    """Vector of distances from xi to boundary points (bx, by, bt)."""
    if metric == "euclidean":
        dx = bx - xi.x
        dy = by - xi.y
        return np.sqrt(
            np.sum(dx * dx, axis=-1) + np.sum(dy * dy, axis=-1) + (bt - xi.t) ** 2
        )
    # left-invariant distance N(xi'^-1 xi): xi'^-1 xi = (x - x', y - y',
    # t - t' + 2(y'.x - x'.y))
    dx = xi.x - bx
    dy = xi.y - by
    r = np.sqrt(np.sum(dx * dx, axis=-1) + np.sum(dy * dy, axis=-1))
    t = xi.t - bt + 2.0 * (by @ xi.x - bx @ xi.y)
    if metric == "gauge":
        return gauge_norm_rt(r, t)
    return cc_norm_rt(r, t)


def _halfspace_boundary_cloud(xi: HeisenbergPoint, samples: int, seed: int):
    """Boundary samples for {t = 0}: a polar grid of geometrically spaced
    rings centered at the horizontal projection (x, y), in the plane spanned
    by (x, y) and its J-rotation (y, -x), plus a random cloud for n > 1.

    The minimizers of both closed-form distances sit at distance O(s r) from
    (x, y) along the rotation direction, which can be orders of magnitude
    below the point's own scale; geometric rings resolve every radius scale
    with the same relative spacing.
    """
    n = xi.n
    scale = 8.0 * max(xi.r, np.sqrt(abs(xi.t)), 1e-3)
    m = max(8, int(np.sqrt(samples)))
    radii = np.geomspace(scale * 1e-6, scale, m)
    angles = np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)
    v = np.concatenate([xi.x, xi.y])
    nv = np.linalg.norm(v)
    e1 = v / nv if nv > 0 else np.eye(2 * n)[0]
    e2 = np.concatenate([e1[n:], -e1[:n]])
    rr, aa = np.meshgrid(radii, angles, indexing="ij")
    plane = (rr * np.cos(aa)).ravel()[:, None] * e1 + (rr * np.sin(aa)).ravel()[:, None] * e2
    clouds = [v + plane, v[None, :], np.zeros((1, 2 * n))]
    if n > 1:
        rng = np.random.default_rng(seed)
        clouds.append(v + rng.uniform(-scale, scale, size=(samples, 2 * n)))
    pts = np.concatenate(clouds, axis=0)
    bx, by = pts[:, :n], pts[:, n:]
    bt = np.zeros(len(pts))
    return bx, by, bt


def _torus_boundary_cloud(T: Torus, xi: HeisenbergPoint, samples: int, seed: int):
    m = max(8, int(np.sqrt(samples)))
    alpha = np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)
    gamma = np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)
    rr = T.R + T.rho * np.cos(alpha)
    tt = T.rho * np.sin(alpha)
    n = xi.n
    v = np.concatenate([xi.x, xi.y])
    nv = np.linalg.norm(v)
    e1 = v / nv if nv > 0 else np.eye(2 * n)[0]
    e2 = np.concatenate([e1[n:], -e1[:n]])
    aa, gg = np.meshgrid(np.arange(m), gamma, indexing="ij")
    dirs = np.cos(gg).ravel()[:, None] * e1 + np.sin(gg).ravel()[:, None] * e2
    pts = rr[aa.ravel(), None] * dirs
    bt = tt[aa.ravel()]
    if n > 1:
        rng = np.random.default_rng(seed)
        omega = rng.normal(size=(samples, 2 * n))
        omega /= np.linalg.norm(omega, axis=1, keepdims=True)
        a2 = rng.uniform(0.0, 2.0 * np.pi, size=samples)
        pts = np.concatenate([pts, (T.R + T.rho * np.cos(a2))[:, None] * omega], axis=0)
        bt = np.concatenate([bt, T.rho * np.sin(a2)])
    return pts[:, :n], pts[:, n:], bt


def brute_force_boundary_distance(
    domain, xi: HeisenbergPoint, metric: str, samples: int, seed: int = 0
) -> float:
    """Sampled upper bound on the boundary distance, converging from above.

    The boundary is covered by a deterministic refinable grid (plus a seeded
    random cloud where the boundary has more than two dimensions) and the
    minimum metric distance over the samples is returned.
    """
    _check_metric(metric)
    if samples < 1:
        raise ValueError("samples must be positive")
    if isinstance(domain, HalfSpace):
        eta = domain.to_frame(xi) if domain.is_anchored else None
        if eta is not None:
            bx, by, bt = _halfspace_boundary_cloud(eta, samples, seed)
            vals = _metric_distance_to_boundary_points(eta, bx, by, bt, metric)
            return float(np.min(vals))
        # sample the Euclidean hyperplane {nu.xi = c}; serves every metric,
        # including vertical faces which have no closed form
        nu, c = domain.euclid_normal_offset()
        rng = np.random.default_rng(seed)
        dim = nu.size
        basis = np.linalg.svd(nu[None, :])[2][1:]  # orthonormal complement
        scale = 8.0 * max(1.0, float(np.linalg.norm(xi.coords())))
        coeff = rng.uniform(-scale, scale, size=(samples, dim - 1))
        pts = c * nu / (nu @ nu) + coeff @ basis
        n = xi.n
        vals = _metric_distance_to_boundary_points(
            xi, pts[:, :n], pts[:, n : 2 * n], pts[:, -1], metric
        )
        return float(np.min(vals))
    if isinstance(domain, Torus):
        bx, by, bt = _torus_boundary_cloud(domain, xi, samples, seed)
        vals = _metric_distance_to_boundary_points(xi, bx, by, bt, metric)
        return float(np.min(vals))
    if isinstance(domain, ConvexPolytope):
        return min(
            brute_force_boundary_distance(f, xi, metric, samples, seed)
            for f in domain.faces
        )
    raise ValueError(f"unknown domain {type(domain).__name__}")
