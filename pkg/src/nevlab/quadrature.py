"""Quadrature rules on the disk, the circle, and the unit sphere.

The disk rule is a polar product: Gauss-Legendre panels in t = r^2 for
the radial direction (graded toward the origin, optionally toward the
boundary) crossed with an equispaced angular average.  With the
normalized area measure the exact statement is

    integral_D F dA / pi = integral_0^1 avg_theta F(sqrt(t) e^{i theta}) dt,

so the radial weights sum to one and angular means are plain means.
Sphere sampling is Monte Carlo with a seeded generator so every run is
reproducible.
"""

import math

import numpy as np
from scipy.special import roots_legendre

from .errors import BadRadiusError, NoConvergenceError
from .numerics import MultiPolynomial, Polynomial


class DiskQuadrature:
    """Polar rule for normalized area integrals over the unit disk.

    ``r`` holds radial nodes in (0, 1), ``rw`` their weights (summing to
    one), ``n_theta`` the angular count.  ``t_edges`` keeps the panel
    boundaries in the t = r^2 variable for diagnostics.
    """

    def __init__(self, t_edges, panel_nodes: int, n_theta: int, theta_offset=0.0):
        t_edges = np.asarray(t_edges, dtype=np.float64)
        if t_edges[0] != 0.0 or t_edges[-1] != 1.0 or np.any(np.diff(t_edges) <= 0):
            raise ValueError("panel edges must increase from 0 to 1")
        if panel_nodes < 2 or n_theta < 4:
            raise ValueError("panel_nodes >= 2 and n_theta >= 4 required")
        self.theta_offset = float(theta_offset)
        x, w = roots_legendre(panel_nodes)
        ts = []
        tw = []
        for a, b in zip(t_edges[:-1], t_edges[1:]):
            ts.append(0.5 * (a + b) + 0.5 * (b - a) * x)
            tw.append(0.5 * (b - a) * w)
        t = np.concatenate(ts)
        self.t_edges = t_edges
        self.panel_nodes = int(panel_nodes)
        self.n_theta = int(n_theta)
        self.r = np.sqrt(t)
        self.rw = np.concatenate(tw)

    @classmethod
    def standard(cls, n_theta=64, origin_panels=36, panel_nodes=12, ratio=0.5):
        """Rule graded toward the origin (handles log(1/|w|) factors)."""
        edges = [0.0] + [ratio**k for k in range(origin_panels - 1, -1, -1)]
        return cls(np.array(edges), panel_nodes, n_theta)

    @classmethod
    def boundary_graded(
        cls,
        n_theta=64,
        origin_panels=24,
        boundary_panels=28,
        panel_nodes=12,
        ratio=0.5,
        theta_offset=0.5,
    ):
        """Rule graded at both ends, for mass piling up near |w| = 1.

        The angular grid is offset by half a step so no node falls on a
        boundary direction such as a singular atom of an inner function.
        """
        left = [0.0] + [0.5 * ratio**k for k in range(origin_panels - 1, -1, -1)]
        right = [1.0 - 0.5 * ratio**k for k in range(1, boundary_panels)]
        edges = np.array(left + right + [1.0])
        return cls(edges, panel_nodes, n_theta, theta_offset=theta_offset)

    @property
    def total_weight(self):
        return float(np.sum(self.rw))

    @property
    def log_moment(self):
        """Quadrature value of integral log(1/|w|) dA/pi (exact value 1/2)."""
        return float(np.dot(self.rw, -np.log(self.r)))

    def nodes(self):
        """Full polar grid of complex nodes, shape (n_radial, n_theta)."""
        k = np.arange(self.n_theta) + self.theta_offset
        theta = 2.0 * np.pi * k / self.n_theta
        return self.r[:, None] * np.exp(1j * theta)[None, :]

    def reduce(self, vals):
        """Combine values on the ``nodes()`` grid into the integral."""
        vals = np.asarray(vals)
        return float(np.dot(self.rw, np.mean(vals.real, axis=1)))

    def integrate(self, F):
        """Integrate a vectorized integrand over the disk (normalized area)."""
        return self.reduce(F(self.nodes()))

    def mean_over_disk(self, F, center, rho):
        """Average of F over the disk |w - center| < rho (normalized)."""
        return self.reduce(F(center + rho * self.nodes()))

    def integrate_radial(self, g):
        """Integrate a radius-only factor: sum_i rw_i g(r_i)."""
        return float(np.dot(self.rw, g(self.r)))


class SphereQuadrature:
    """Monte Carlo nodes and weights on the unit sphere in C^d."""

    __slots__ = ("d", "points", "weights", "seed")

    def __init__(self, d, points, weights, seed=None):
        points = np.asarray(points, dtype=np.complex128)
        weights = np.asarray(weights, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != d:
            raise ValueError("points must have shape (n, d)")
        if weights.shape != (points.shape[0],):
            raise ValueError("weights must have shape (n,)")
        self.d = int(d)
        self.points = points
        self.weights = weights
        self.seed = seed

    @property
    def n(self):
        return self.points.shape[0]


def sphere_uniform(d: int, n: int, seed=0) -> SphereQuadrature:
    """Uniform sphere sample: normalized 2d-dimensional Gaussian draws.

    Equal weights 1/n.  The same (d, n, seed) triple always produces the
    same nodes.  For d = 1 the points are uniform on the unit circle.
    """
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 2 * d))
    z = x[:, :d] + 1j * x[:, d:]
    nrm = np.sqrt(np.sum(np.abs(z) ** 2, axis=1))
    bad = nrm == 0.0
    if np.any(bad):
        z[bad, 0] = 1.0
        nrm[bad] = 1.0
    return SphereQuadrature(d, z / nrm[:, None], np.full(n, 1.0 / n), seed)


def _eval_on_points(g, pts, d):
    """Evaluate g on (n, d) points, flattening the d = 1 case."""
    if isinstance(g, MultiPolynomial):
        return np.asarray(g(pts), dtype=np.complex128)
    flat = pts[:, 0] if d == 1 else pts
    return np.asarray(g(flat), dtype=np.complex128)


def hardy_norm_ball(g, p, d, sphere: SphereQuadrature, r: float) -> float:
    """Hardy norm on the ball: sphere average of |g(r zeta)|^p, p-th root.

    ``r`` must lie strictly inside (0, 1).  ``g`` may be a Polynomial
    (d = 1), a MultiPolynomial, or a vectorized callable.
    """
    if not (0.0 < r < 1.0):
        raise BadRadiusError("radius must lie in (0, 1), got %r" % (r,))
    if sphere.d != d:
        raise ValueError("sphere quadrature dimension %d != %d" % (sphere.d, d))
    if isinstance(g, Polynomial) and d != 1:
        raise ValueError("univariate polynomial needs d = 1")
    vals = _eval_on_points(g, r * sphere.points, d)
    acc = float(np.dot(sphere.weights, np.abs(vals) ** p))
    return acc ** (1.0 / p)


def circle_mean(F, r: float, n: int) -> float:
    """Mean of a real-valued F over n equispaced points on |z| = r."""
    z = r * np.exp(2j * np.pi * np.arange(n) / n)
    return float(np.mean(np.real(F(z))))


def circle_mean_adaptive(
    F, r: float, start_n: int = 256, rel_tol: float = 1e-11, max_n: int = 1 << 20
) -> float:
    """Doubling trapezoid mean over a circle, stopping on relative agreement."""
    prev = None
    n = int(start_n)
    while n <= max_n:
        m = circle_mean(F, r, n)
        if prev is not None and abs(m - prev) <= rel_tol * (abs(m) + 1.0):
            return m
        prev = m
        n *= 2
    raise NoConvergenceError(
        "circle mean did not stabilize below %d nodes" % max_n
    )


def unit_interval_log_check(dq: DiskQuadrature):
    """Sanity numbers for a disk rule: (total weight, log moment)."""
    return dq.total_weight, dq.log_moment
