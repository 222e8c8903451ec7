"""Group algebra for the Heisenberg group and general step-two stratified groups.

The Heisenberg group H^n lives on R^(2n+1) with points xi = (x, y, t),
x, y in R^n, and group law

    xi * xi' = (x + x', y + y', t + t' + 2(x.y' - y.x')).

A general step-two group is encoded by the dimension m of the first stratum
and a list of m x m matrices B^(i), one per second-stratum coordinate, with

    (a * b)^(1) = a^(1) + b^(1)
    (a * b)^(2)_i = a^(2)_i + b^(2)_i + 1/2 <B^(i) a^(1), b^(1)>

where a is the left factor.  All operations are pure functions on immutable
values; the step-two operations broadcast over leading batch axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "HeisenbergPoint",
    "CylCoords",
    "StepTwoGroup",
    "GroupElement",
    "identity",
    "multiply",
    "inverse",
    "dilate",
    "heisenberg_group",
    "step_two_multiply",
    "step_two_inverse",
    "step_two_dilate",
    "in_horizontal_plane",
    "horizontal_point",
    "convex_combination",
    "to_group_element",
    "to_heisenberg_point",
]


@dataclass(frozen=True)
class HeisenbergPoint:
    """A point xi = (x, y, t) of H^n; x and y are length-n vectors."""

    x: np.ndarray
    y: np.ndarray
    t: float

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        y = np.atleast_1d(np.asarray(self.y, dtype=float))
        if x.ndim != 1 or y.ndim != 1 or x.shape != y.shape or x.size < 1:
            raise ValueError("x and y must be 1-d vectors of identical length >= 1")
        t = float(self.t)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y)) and np.isfinite(t)):
            raise ValueError("coordinates must be finite")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "t", t)

    @property
    def n(self) -> int:
        return self.x.size

    @property
    def r(self) -> float:
        """Horizontal radius sqrt(|x|^2 + |y|^2)."""
        return float(np.hypot(np.linalg.norm(self.x), np.linalg.norm(self.y)))

    def coords(self) -> np.ndarray:
        """Flat coordinate vector (x_1..x_n, y_1..y_n, t)."""
        return np.concatenate([self.x, self.y, [self.t]])

    @classmethod
    def from_coords(cls, coords) -> "HeisenbergPoint":
        c = np.asarray(coords, dtype=float).ravel()
        if c.size < 3 or c.size % 2 == 0:
            raise ValueError("expected 2n+1 coordinates with n >= 1")
        n = (c.size - 1) // 2
        return cls(c[:n], c[n : 2 * n], c[2 * n])


@dataclass(frozen=True)
class CylCoords:
    """Cylindrical representation (r, omega, t) with r = sqrt(|x|^2+|y|^2).

    omega is an optional unit vector on S^(2n-1); cylindrically symmetric
    computations only use (r, t).
    """

    r: float
    t: float
    omega: np.ndarray | None = None

    def __post_init__(self):
        r = float(self.r)
        if not (np.isfinite(r) and r >= 0.0):
            raise ValueError("r must be a finite nonnegative real")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "t", float(self.t))
        if self.omega is not None:
            w = np.asarray(self.omega, dtype=float).ravel()
            if abs(np.linalg.norm(w) - 1.0) > 1e-12:
                raise ValueError("omega must be a unit vector")
            w.setflags(write=False)
            object.__setattr__(self, "omega", w)

    @classmethod
    def from_point(cls, xi: HeisenbergPoint) -> "CylCoords":
        v = np.concatenate([xi.x, xi.y])
        r = float(np.linalg.norm(v))
        omega = v / r if r > 0 else None
        return cls(r, xi.t, omega)


def identity(n: int) -> HeisenbergPoint:
    return HeisenbergPoint(np.zeros(n), np.zeros(n), 0.0)


def multiply(a: HeisenbergPoint, b: HeisenbergPoint) -> HeisenbergPoint:
    """Group product a * b on H^n."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: n={a.n} vs n={b.n}")
    t = a.t + b.t + 2.0 * (float(a.x @ b.y) - float(a.y @ b.x))
    return HeisenbergPoint(a.x + b.x, a.y + b.y, t)


def inverse(a: HeisenbergPoint) -> HeisenbergPoint:
    """Group inverse (-x, -y, -t)."""
    return HeisenbergPoint(-a.x, -a.y, -a.t)


def dilate(a: HeisenbergPoint, lam: float) -> HeisenbergPoint:
    """Anisotropic dilation (lam x, lam y, lam^2 t), lam > 0."""
    lam = float(lam)
    if not (lam > 0.0 and np.isfinite(lam)):
        raise ValueError("dilation parameter must be a positive real")
    return HeisenbergPoint(lam * a.x, lam * a.y, lam * lam * a.t)


# ---------------------------------------------------------------------------
# General step-two groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepTwoGroup:
    """A step-two group on R^n with first stratum R^m, given by the B matrices.

    B is an array of shape (n - m, m, m); B[i] enters the i-th second-stratum
    coordinate of the product.
    """

    m: int
    n: int
    B: np.ndarray

    def __post_init__(self):
        m, n = int(self.m), int(self.n)
        if not (1 <= m < n):
            raise ValueError("need 1 <= m < n")
        B = np.asarray(self.B, dtype=float)
        if B.shape != (n - m, m, m):
            raise ValueError(f"B must have shape ({n - m}, {m}, {m}), got {B.shape}")
        B.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "B", B)

    @property
    def k(self) -> int:
        """Second-stratum dimension n - m."""
        return self.n - self.m

    def element(self, g1, g2) -> "GroupElement":
        g = GroupElement(np.asarray(g1, dtype=float), np.asarray(g2, dtype=float))
        self._check(g)
        return g

    def identity(self) -> "GroupElement":
        return GroupElement(np.zeros(self.m), np.zeros(self.k))

    def _check(self, g: "GroupElement") -> None:
        if g.g1.shape[-1] != self.m or g.g2.shape[-1] != self.k:
            raise ValueError(
                f"element strata ({g.g1.shape[-1]}, {g.g2.shape[-1]}) do not match "
                f"group ({self.m}, {self.k})"
            )


@dataclass(frozen=True)
class GroupElement:
    """Element g = (g1, g2) with the two strata stored separately.

    The stratum arrays may carry leading batch axes; the last axis holds the
    stratum coordinates.
    """

    g1: np.ndarray
    g2: np.ndarray

    def __post_init__(self):
        g1 = np.atleast_1d(np.asarray(self.g1, dtype=float))
        g2 = np.atleast_1d(np.asarray(self.g2, dtype=float))
        g1.setflags(write=False)
        g2.setflags(write=False)
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)

    def flat(self) -> np.ndarray:
        return np.concatenate([self.g1, self.g2], axis=-1)


def _second_stratum_form(G: StepTwoGroup, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """The (n-m)-tuple 1/2 <B^(i) u, v>, batched over leading axes of u, v."""
    return 0.5 * np.einsum("imk,...k,...m->...i", G.B, u, v)


def step_two_multiply(G: StepTwoGroup, a: GroupElement, b: GroupElement) -> GroupElement:
    """Product a * b (a is the left factor)."""
    G._check(a)
    G._check(b)
    g2 = a.g2 + b.g2 + _second_stratum_form(G, a.g1, b.g1)
    return GroupElement(a.g1 + b.g1, g2)


def step_two_inverse(G: StepTwoGroup, a: GroupElement) -> GroupElement:
    """Inverse (-g1, -g2 + 1/2 <B g1, g1>)."""
    G._check(a)
    return GroupElement(-a.g1, -a.g2 + _second_stratum_form(G, a.g1, a.g1))


def step_two_dilate(G: StepTwoGroup, a: GroupElement, lam: float) -> GroupElement:
    """Dilation (lam g1, lam^2 g2)."""
    lam = float(lam)
    if not (lam > 0.0 and np.isfinite(lam)):
        raise ValueError("dilation parameter must be a positive real")
    return GroupElement(lam * a.g1, lam * lam * a.g2)


def in_horizontal_plane(G: StepTwoGroup, g: GroupElement, gp: GroupElement, tol: float = 1e-10):
    """Whether gp lies in the horizontal plane H_g through g.

    Membership is equivalent to the second stratum of g^-1 * gp vanishing;
    the test is |(g^-1 gp)^(2)|_inf <= tol.  Returns a bool (or a bool array
    for batched elements).
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    rel = step_two_multiply(G, step_two_inverse(G, g), gp)
    flat = np.max(np.abs(rel.g2), axis=-1) <= tol
    return bool(flat) if np.ndim(flat) == 0 else flat


def horizontal_point(G: StepTwoGroup, g: GroupElement, v) -> GroupElement:
    """The point of H_g reached from g along the first-stratum direction v.

    Explicitly (g1 + v, g2 + 1/2 <B g1, v>); this parametrizes all of H_g as
    v ranges over R^m.
    """
    v = np.asarray(v, dtype=float)
    return GroupElement(g.g1 + v, g.g2 + _second_stratum_form(G, g.g1, v))


def convex_combination(G: StepTwoGroup, g: GroupElement, gp: GroupElement, lam) -> GroupElement:
    """Anisotropic convex combination g_lam = g * delta_lam(g^-1 gp).

    For gp in H_g this reduces to the Euclidean combination
    (1-lam) g + lam gp, stratum by stratum.  lam may be a scalar or an array
    broadcastable against the batch axes of g and gp; values must lie in
    [0, 1] (the endpoint lam = 0 is taken as the dilation limit).
    """
    lam = np.asarray(lam, dtype=float)
    if not np.all((lam >= 0.0) & (lam <= 1.0)):
        raise ValueError("lambda must lie in [0, 1]")
    rel = step_two_multiply(G, step_two_inverse(G, g), gp)
    l1 = lam[..., None] if lam.ndim else lam
    scaled = GroupElement(l1 * rel.g1, l1 * l1 * rel.g2)
    return step_two_multiply(G, g, scaled)


def heisenberg_group(n: int) -> StepTwoGroup:
    """H^n encoded as a step-two group: m = 2n, one central coordinate.

    The first stratum is ordered (x_1..x_n, y_1..y_n) and the single B matrix
    has the block form [[0, -4I], [4I, 0]], which makes the step-two product
    agree exactly with `multiply`:
    1/2 <B a^(1), b^(1)> = 2 (x_a . y_b - y_a . x_b).
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    eye = np.eye(n)
    zero = np.zeros((n, n))
    B = np.block([[zero, -4.0 * eye], [4.0 * eye, zero]])[None, :, :]
    return StepTwoGroup(2 * n, 2 * n + 1, B)


def to_group_element(xi: HeisenbergPoint) -> GroupElement:
    """View a point of H^n as an element of the step-two encoding."""
    return GroupElement(np.concatenate([xi.x, xi.y]), np.array([xi.t]))


def to_heisenberg_point(g: GroupElement) -> HeisenbergPoint:
    """Inverse of `to_group_element`."""
    if g.g1.ndim != 1 or g.g2.shape != (1,) or g.g1.size % 2 != 0:
        raise ValueError("element is not a scalar H^n encoding")
    n = g.g1.size // 2
    return HeisenbergPoint(g.g1[:n], g.g1[n:], float(g.g2[0]))
