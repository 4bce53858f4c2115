"""Nevanlinna counting functions and the integral identities built on them.

A :class:`SelfMap` wraps a holomorphic map of the disk (d = 1) or of the
unit ball (d >= 2, polynomial components along slices) and certifies the
self-map property on a sampled net.  The counting function

    N_phi(w) = sum over preimages z of w in the disk of log(1 / |z|)

is computed by root extraction on numerator - w * denominator.  On the
ball the slice-averaged counting function replaces it: slices are
one-variable restrictions lambda -> phi(lambda zeta) along sphere
directions, and the average is taken with the sphere quadrature weights.

The identity checks (Littlewood-Paley, Stanton) integrate against the
counting function.  N_phi has a log(1/|w - phi(0)|) singularity at the
base point; the integrator subtracts the counting function of the
degree-one map moebius_b(z) = (b - z)/(1 - conj(b) z) with b = phi(0),
whose weighted integral is known in closed form through the same
identity, and handles only the smooth remainder numerically.  A small
disk around the base point is still excluded and patched with a locally
estimated constant; its contribution is reported.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .errors import (
    AtBasePointError,
    BasePointInDiskError,
    ConstantMapError,
    DiskNotInDomainError,
    NoConvergenceError,
)
from .inner import BlaschkeProduct
from .numerics import (
    MultiPolynomial,
    Polynomial,
    RationalFunction,
    hardy2_norm,
    poly_roots,
    power_series_divide,
    taylor_order_for,
)
from .quadrature import (
    DiskQuadrature,
    SphereQuadrature,
    circle_mean_adaptive,
    hardy_norm_ball,
    sphere_uniform,
)

logger = logging.getLogger(__name__)

BASE_GUARD = 1e-10
RIM = 1.0 - 1e-12
MERGE_RADIUS = 1e-7
EXCLUSION_RADIUS = 1e-4


@dataclass
class CountingSample:
    """Counting function value at one point, with the preimage list."""

    w: complex
    preimages: Tuple[Tuple[complex, int], ...]
    value: float
    discarded: int = 0


@dataclass
class LittlewoodReport:
    bound: float
    satisfied: bool
    margin: float
    value: float


@dataclass
class SubmeanReport:
    center_value: float
    mean_value: float
    satisfied: bool
    tolerance: float


@dataclass
class IdentityReport:
    """Two sides of an integral identity and their disagreement."""

    lhs: float
    rhs: float
    abs_error: float
    rel_error: float
    details: dict = field(default_factory=dict)


class SelfMap:
    """Holomorphic self-map of the disk or ball with a sampled certificate.

    ``body`` may be a univariate :class:`Polynomial`, a
    :class:`BlaschkeProduct`, or a :class:`MultiPolynomial` in d
    variables.  Construction rejects constant maps and maps whose
    modulus reaches 1 on a net of circles/spheres of radius 0.9, 0.99,
    0.999 (about 10^4 points).  ``certified_bound`` records the observed
    supremum when it stays below 1 - 1e-6, else None.
    """

    def __init__(self, body, *, seed=0, net_points=10_000,
                 net_radii=(0.9, 0.99, 0.999)):
        if isinstance(body, MultiPolynomial) and body.d == 1:
            coeffs = np.zeros(body.degree + 1, dtype=np.complex128)
            for alpha, c in body.terms.items():
                coeffs[alpha[0]] += c
            body = Polynomial(coeffs)
        self.body = body
        if isinstance(body, Polynomial):
            if body.degree < 1:
                raise ConstantMapError("polynomial map is constant")
            self.d = 1
            num = body.coeffs
            den = np.zeros_like(num)
            den[0] = 1.0
        elif isinstance(body, BlaschkeProduct):
            self.d = 1
            num = body.numerator().coeffs
            den = body.denominator().coeffs
        elif isinstance(body, MultiPolynomial):
            if body.degree < 1:
                raise ConstantMapError("polynomial map is constant")
            self.d = body.d
            num = den = None
        else:
            raise TypeError("unsupported map body %r" % type(body).__name__)
        if num is not None:
            m = max(num.shape[0], den.shape[0])
            self._num = np.zeros(m, dtype=np.complex128)
            self._den = np.zeros(m, dtype=np.complex128)
            self._num[: num.shape[0]] = num
            self._den[: den.shape[0]] = den
        else:
            self._num = self._den = None
        self.phi0 = complex(self(np.zeros(self.d, dtype=np.complex128))
                            if self.d > 1 else self(0.0))
        sup = 0.0
        per = max(32, int(net_points) // max(len(net_radii), 1))
        for k, r in enumerate(net_radii):
            if self.d == 1:
                pts = r * np.exp(2j * np.pi * (np.arange(per) + 0.5) / per)
                vals = np.abs(self(pts))
            else:
                sq = sphere_uniform(self.d, per, seed=seed + k)
                vals = np.abs(self(r * sq.points))
            sup = max(sup, float(vals.max()))
        if sup >= 1.0:
            raise ValueError(
                "map modulus reaches %.6f on the certification net" % sup
            )
        self.net_sup = sup
        self.certified_bound = sup if sup < 1.0 - 1e-6 else None

    def __call__(self, pts):
        if self.d == 1:
            pts = np.asarray(pts, dtype=np.complex128)
            return self.body(pts)
        return self.body(pts)

    def slice_matrix(self, zetas):
        """Ascending slice-polynomial coefficients for sphere directions."""
        if self.d == 1:
            raise ValueError("slice matrix is only defined for d >= 2")
        return self.body.slice_matrix(zetas)

    def __repr__(self):
        return "SelfMap(d=%d, body=%r)" % (self.d, self.body)


def _as_interior_point(w):
    w = complex(w)
    if abs(w) >= 1.0:
        raise ValueError("w must lie in the open unit disk, got |w| = %.6f"
                         % abs(w))
    return w


def counting(phi: SelfMap, w) -> CountingSample:
    """Nevanlinna counting function of a disk map at one point.

    Preimages are the roots of numerator - w * denominator that lie in
    |z| < 1 - 1e-12; roots in the rim band beyond that are discarded and
    logged.  Root clusters closer than 1e-7 are merged into a single
    preimage with summed multiplicity.  The base point w = phi(0) is
    excluded (the value there is +infinity).
    """
    if phi.d != 1:
        raise ValueError("counting needs a disk map; use counting_avg for d >= 2")
    w = _as_interior_point(w)
    if abs(w - phi.phi0) < BASE_GUARD:
        raise AtBasePointError(
            "w is within %.0e of the base point phi(0)" % BASE_GUARD
        )
    shifted = Polynomial(phi._num - w * phi._den)
    if shifted.degree < 1:
        return CountingSample(w=w, preimages=(), value=0.0)
    roots = poly_roots(shifted)
    mods = np.abs(roots)
    inside = roots[mods < RIM]
    discarded = int(np.sum((mods >= RIM) & (mods < 1.0)))
    if discarded:
        logger.debug(
            "counting at w=%r: discarded %d rim preimages", w, discarded
        )
    groups = []
    for z in inside:
        for g in groups:
            if abs(z - g[0] / g[1]) < MERGE_RADIUS:
                g[0] += z
                g[1] += 1
                break
        else:
            groups.append([z, 1])
    pre = tuple((complex(s / m), int(m)) for s, m in groups)
    value = float(sum(m * math.log(1.0 / abs(z)) for z, m in pre))
    return CountingSample(w=w, preimages=pre, value=value, discarded=discarded)


def counting_values(phi: SelfMap, ws) -> np.ndarray:
    """Vectorized counting sweep for a disk map (no preimage reporting)."""
    if phi.d != 1:
        raise ValueError("counting_values needs a disk map")
    ws = np.asarray(ws, dtype=np.complex128).ravel()
    return _kernels.counting_single(phi._num, phi._den, ws, RIM)


def _slice_nonconstant_fraction(sm, weights):
    nonconst = np.any(sm[:, 1:] != 0, axis=1)
    return float(np.dot(weights, nonconst.astype(np.float64)))


def counting_avg(
    phi: SelfMap,
    w,
    sphere: Optional[SphereQuadrature] = None,
    *,
    slice_matrix: Optional[np.ndarray] = None,
    sphere_weights: Optional[np.ndarray] = None,
) -> float:
    """Slice-averaged counting function on the ball.

    For d = 1 this is exactly :func:`counting`.  For d >= 2 each sphere
    direction contributes the counting function of its slice polynomial,
    weighted by the sphere quadrature; constant slices contribute zero.
    A precomputed ``slice_matrix`` (with matching ``sphere_weights``)
    lets sweeps reuse the slice coefficients.
    """
    if phi.d == 1:
        return counting(phi, w).value
    w = _as_interior_point(w)
    if abs(w - phi.phi0) < BASE_GUARD:
        raise AtBasePointError(
            "w is within %.0e of the base point phi(0)" % BASE_GUARD
        )
    if slice_matrix is None:
        if sphere is None:
            sphere = sphere_uniform(phi.d, 20_000, seed=0)
        if sphere.d != phi.d:
            raise ValueError("sphere dimension %d != map dimension %d"
                             % (sphere.d, phi.d))
        slice_matrix = phi.slice_matrix(sphere.points)
        sphere_weights = sphere.weights
    elif sphere_weights is None:
        if sphere is None:
            raise ValueError("slice_matrix needs sphere_weights or sphere")
        sphere_weights = sphere.weights
    dens = np.zeros_like(slice_matrix)
    dens[:, 0] = 1.0
    ws = np.full(slice_matrix.shape[0], w, dtype=np.complex128)
    vals = _kernels.counting_batch(slice_matrix, dens, ws, RIM)
    return float(np.dot(sphere_weights, vals))


def littlewood_bound(phi: SelfMap, w) -> LittlewoodReport:
    """Littlewood's inequality at one point of the disk.

    bound = log |(1 - conj(phi(0)) w) / (phi(0) - w)| >= N_phi(w), with
    equality exactly for degree-one maps.  ``satisfied`` allows a 1e-9
    slack so equality cases pass.
    """
    if phi.d != 1:
        raise ValueError("littlewood_bound needs a disk map")
    sample = counting(phi, w)
    b = phi.phi0
    w = complex(w)
    bound = float(math.log(abs(1.0 - np.conj(b) * w) / abs(b - w)))
    margin = bound - sample.value
    return LittlewoodReport(
        bound=bound,
        satisfied=bool(margin >= -1e-9),
        margin=float(margin),
        value=sample.value,
    )


def _counting_field(phi, sphere, slice_matrix=None):
    """Vectorized w -> counting (or slice-averaged counting) evaluator."""
    if phi.d == 1:
        num, den = phi._num, phi._den

        def vals(ws):
            return _kernels.counting_single(num, den, ws, RIM)

        return vals, 1.0
    if slice_matrix is None:
        slice_matrix = phi.slice_matrix(sphere.points)
    dens = np.zeros_like(slice_matrix)
    dens[:, 0] = 1.0
    weights = sphere.weights
    nrows = slice_matrix.shape[0]
    frac = _slice_nonconstant_fraction(slice_matrix, weights)

    def vals(ws):
        out = np.empty(ws.shape[0], dtype=np.float64)
        for i in range(ws.shape[0]):
            wfull = np.full(nrows, ws[i], dtype=np.complex128)
            out[i] = np.dot(
                weights, _kernels.counting_batch(slice_matrix, dens, wfull, RIM)
            )
        return out

    return vals, frac


def _moebius_counting(ws, b):
    """Counting function of z -> (b - z)/(1 - conj(b) z), in closed form."""
    return np.log(np.abs(1.0 - np.conj(b) * ws)) - np.log(np.abs(b - ws))


def _moebius_pushforward_norm_sq(f: Polynomial, b: complex) -> float:
    """Squared Hardy norm of f((b - z)/(1 - conj(b) z))."""
    if b == 0:
        return hardy2_norm(f) ** 2
    bb = abs(b)
    num = Polynomial([0.0])
    top = Polynomial([b, -1.0])
    bot = Polynomial([1.0, -np.conj(b)])
    tp = Polynomial([1.0])
    bp = [Polynomial([1.0])]
    for _ in range(f.degree):
        bp.append(bp[-1] * bot)
    for k, c in enumerate(f.coeffs):
        num = num + complex(c) * tp * bp[f.degree - k]
        tp = tp * top
    order = taylor_order_for(bb)
    den_coeffs = bp[-1].coeffs
    coef = power_series_divide(num.coeffs, den_coeffs, order)
    total = float(np.sum(np.abs(coef) ** 2))
    tail = float(np.sum(np.abs(coef[-16:]) ** 2))
    if tail > 1e-13 * (total + 1.0):
        coef = power_series_divide(num.coeffs, den_coeffs, 2 * order)
        total = float(np.sum(np.abs(coef) ** 2))
    return total


@dataclass
class _Panel:
    a: float
    b: float
    value: float
    error: float


class _RadialAdaptive:
    """Adaptive Gauss-Legendre integration of t -> ring_mean(sqrt(t)).

    ``ring_mean(r)`` must return the angular mean of the integrand on the
    circle of radius r.  Panels are bisected worst-error-first until the
    summed error estimate drops under the tolerance or the panel budget
    runs out.
    """

    def __init__(self, ring_mean, nodes=12):
        from scipy.special import roots_legendre

        self.ring_mean = ring_mean
        self.x, self.w = roots_legendre(nodes)
        self.x2, self.w2 = roots_legendre(2 * nodes)

    def _gl(self, a, b, x, w):
        t = 0.5 * (a + b) + 0.5 * (b - a) * x
        vals = np.array([self.ring_mean(math.sqrt(ti)) for ti in t])
        return 0.5 * (b - a) * float(np.dot(w, vals))

    def _panel(self, a, b):
        v1 = self._gl(a, b, self.x, self.w)
        v2 = self._gl(a, b, self.x2, self.w2)
        return _Panel(a, b, v2, abs(v2 - v1))

    def integrate(self, edges, abs_tol, rel_tol, max_panels):
        panels = [self._panel(a, b) for a, b in zip(edges[:-1], edges[1:])]
        while len(panels) < max_panels:
            total = sum(p.value for p in panels)
            err = sum(p.error for p in panels)
            if err <= abs_tol + rel_tol * abs(total):
                break
            worst = max(range(len(panels)), key=lambda i: (panels[i].error, -i))
            p = panels.pop(worst)
            mid = 0.5 * (p.a + p.b)
            if mid <= p.a or mid >= p.b:
                panels.append(p)
                break
            panels.insert(worst, self._panel(mid, p.b))
            panels.insert(worst, self._panel(p.a, mid))
        total = sum(p.value for p in panels)
        err = sum(p.error for p in panels)
        return total, err, len(panels)


def _weighted_counting_integral(
    phi: SelfMap,
    weight_fn,
    *,
    sphere: Optional[SphereQuadrature] = None,
    slice_matrix: Optional[np.ndarray] = None,
    n_theta: Optional[int] = None,
    abs_tol: Optional[float] = None,
    rel_tol: Optional[float] = None,
    max_panels: Optional[int] = None,
):
    """integral of weight(w) * N_phi(w) dA(w)/pi with singularity removal.

    ``weight_fn`` maps complex arrays to nonnegative reals (|f'|^2 in the
    identity checks).  Returns (integral, details).  The moebius part is
    handled in closed form; only the remainder is integrated adaptively.
    """
    d = phi.d
    if n_theta is None:
        n_theta = 256 if d == 1 else 16
    if abs_tol is None:
        abs_tol = 1e-10 if d == 1 else 1e-6
    if rel_tol is None:
        rel_tol = 1e-9 if d == 1 else 1e-5
    if max_panels is None:
        max_panels = 400 if d == 1 else 32
    panel_nodes = 12 if d == 1 else 6
    b = phi.phi0
    count_vals, frac = _counting_field(phi, sphere, slice_matrix)

    # constant patch for the excluded disk at the base point
    ring = b + 2.0 * EXCLUSION_RADIUS * np.exp(
        2j * np.pi * (np.arange(8) + 0.5) / 8
    )
    ring = ring[np.abs(ring) < 1.0]
    patch = float(np.mean(
        np.real(weight_fn(ring))
        * (count_vals(ring) - frac * _moebius_counting(ring, b))
    )) if ring.size else 0.0

    kang = (np.arange(n_theta) + 0.5) / n_theta
    phases = np.exp(2j * np.pi * kang)

    def ring_mean(r):
        ws = r * phases
        g = np.real(weight_fn(ws)) * (
            count_vals(ws) - frac * _moebius_counting(ws, b)
        )
        near = np.abs(ws - b) < EXCLUSION_RADIUS
        if np.any(near):
            g[near] = patch
        return float(np.mean(g))

    depth = 16 if d == 1 else 8
    left = [0.0] + [0.5 ** k for k in range(depth, 0, -1)]
    edges = [x * 0.5 for x in left] + [0.25 + 0.75 * j / 6 for j in range(1, 7)]
    integ = _RadialAdaptive(ring_mean, nodes=panel_nodes)
    smooth, err, used = integ.integrate(edges, abs_tol, rel_tol, max_panels)

    excluded = EXCLUSION_RADIUS ** 2 * patch

    details = {
        "panels": used,
        "radial_error": err,
        "smooth_part": smooth,
        "patch_value": patch,
        "excluded_contribution": excluded,
        "nonconstant_fraction": frac,
    }
    return smooth, frac, details


def littlewood_paley_verify(f: Polynomial, rule: Optional[DiskQuadrature] = None
                            ) -> IdentityReport:
    """Check ||f||^2 = |f(0)|^2 + 2 integral |f'|^2 log(1/|w|) dA/pi."""
    if rule is None:
        rule = DiskQuadrature.standard()
    lhs = hardy2_norm(f) ** 2
    fp = f.derivative()
    grid = rule.nodes()
    vals = np.abs(fp(grid)) ** 2
    radial = np.mean(vals, axis=1)
    integral = float(np.dot(rule.rw, radial * (-np.log(rule.r))))
    rhs = abs(f(0.0)) ** 2 + 2.0 * integral
    abs_err = abs(lhs - rhs)
    rel = abs_err / max(abs(lhs), 1e-300)
    return IdentityReport(lhs=lhs, rhs=rhs, abs_error=abs_err, rel_error=rel,
                          details={"integral": integral})


def stanton_verify(
    f: Polynomial,
    phi: SelfMap,
    sphere: Optional[SphereQuadrature] = None,
    **quad_opts,
) -> IdentityReport:
    """Check the change-of-variable identity for composition with phi.

    Disk case:   ||f o phi||^2 = |f(phi(0))|^2 + 2 integral |f'|^2 N_phi dA/pi.
    Ball case:   the slice-averaged counting function replaces N_phi and
    the left side is the sphere-averaged squared modulus near radius 1.

    The right side subtracts the moebius counting function at the base
    point (its weighted integral follows from the same identity applied
    to a degree-one map, so it is known in closed form) and integrates
    the continuous remainder adaptively.
    """
    d = phi.d
    if d >= 2 and sphere is None:
        sphere = sphere_uniform(d, 20_000, seed=0)
    b = phi.phi0
    fp = f.derivative()

    if d == 1:
        if isinstance(phi.body, Polynomial):
            lhs = hardy2_norm(f.compose(phi.body)) ** 2
        else:
            lhs = circle_mean_adaptive(
                lambda z: np.abs(f(phi(z))) ** 2, 1.0, start_n=512,
                rel_tol=1e-12,
            )
    else:
        lhs = hardy_norm_ball(
            lambda pts: f(phi(pts)), 2, d, sphere, 1.0 - 1e-9
        ) ** 2

    def weight(ws):
        return np.abs(fp(ws)) ** 2

    smooth, frac, details = _weighted_counting_integral(
        phi, weight, sphere=sphere, **quad_opts
    )
    moeb = _moebius_pushforward_norm_sq(f, b) - abs(f(b)) ** 2
    rhs = abs(f(b)) ** 2 + frac * moeb + 2.0 * smooth
    abs_err = abs(lhs - rhs)
    rel = abs_err / max(abs(lhs), 1e-300)
    details = dict(details)
    details["moebius_part"] = moeb
    details["lhs_rule"] = "exact" if (d == 1 and isinstance(phi.body, Polynomial)) else "quadrature"
    return IdentityReport(lhs=lhs, rhs=rhs, abs_error=abs_err, rel_error=rel,
                          details=details)


def submean_check(
    phi: SelfMap,
    w,
    rho: float,
    sphere: Optional[SphereQuadrature] = None,
    rule: Optional[DiskQuadrature] = None,
) -> SubmeanReport:
    """Sub-mean-value test: N(w) against its average over |u - w| < rho.

    The closed test disk must sit inside the unit disk and must not
    contain the base point phi(0).  The comparison allows the slack
    1e-6 + 1e-3 * mean, which covers quadrature error on the mean.
    """
    w = _as_interior_point(w)
    rho = float(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    if abs(w) + rho >= 1.0 - 1e-12:
        raise DiskNotInDomainError(
            "disk of radius %.3g at |w| = %.3g leaves the unit disk"
            % (rho, abs(w))
        )
    if abs(phi.phi0 - w) <= rho + BASE_GUARD:
        raise BasePointInDiskError(
            "base point phi(0) lies in (or touches) the test disk"
        )
    if rule is None:
        rule = DiskQuadrature.standard(n_theta=32, origin_panels=16,
                                       panel_nodes=8)
    if phi.d == 1:
        center = counting(phi, w).value
        nodes = (w + rho * rule.nodes()).ravel()
        vals = counting_values(phi, nodes).reshape(rule.r.shape[0], -1)
    else:
        if sphere is None:
            sphere = sphere_uniform(phi.d, 2000, seed=0)
        sm = phi.slice_matrix(sphere.points)
        center = counting_avg(phi, w, sphere, slice_matrix=sm,
                              sphere_weights=sphere.weights)
        grid = w + rho * rule.nodes()
        flat = grid.ravel()
        dens = np.zeros_like(sm)
        dens[:, 0] = 1.0
        out = np.empty(flat.shape[0])
        for i in range(flat.shape[0]):
            wfull = np.full(sm.shape[0], flat[i], dtype=np.complex128)
            out[i] = np.dot(sphere.weights,
                            _kernels.counting_batch(sm, dens, wfull, RIM))
        vals = out.reshape(rule.r.shape[0], -1)
    mean = float(np.dot(rule.rw, np.mean(vals, axis=1)))
    tol = 1e-6 + 1e-3 * abs(mean)
    return SubmeanReport(
        center_value=float(center),
        mean_value=mean,
        satisfied=bool(center <= mean + tol),
        tolerance=tol,
    )
