"""Radial compactness criterion and the one-component grid probe.

The quantity under study is the sphere-averaged counting function of a
self-map phi, weighted by how fast the inner function Theta degenerates:

    I(w) = counting_avg(phi, w) * (1 - |Theta(w)|) / (1 - |w|).

Compactness of the composition operator on K_Theta corresponds to
I(w) -> 0 as |w| -> 1.  A profile records sup I over circles of
increasing radius; the verdict classifies the tail of that profile and
is explicitly a numerical indicator, not a proof.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .errors import InsufficientProfileError, SequenceViolationError
from .nevanlinna import RIM, SelfMap, counting_values
from .quadrature import SphereQuadrature, sphere_uniform

PROFILE_SKIP = 1e-8


@dataclass
class CriterionProfile:
    """Sup of the criterion integrand over circles |w| = r."""

    radii: Tuple[float, ...]
    sup_values: Tuple[float, ...]
    angular_count: int
    quadrature: Optional[dict] = None
    phi_label: str = ""
    theta_label: str = ""

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        sups = tuple(float(v) for v in self.sup_values)
        if len(radii) != len(sups):
            raise ValueError("radii and sup_values must have equal length")
        if any(not (0.0 < r < 1.0) for r in radii):
            raise SequenceViolationError("profile radii must lie in (0, 1)")
        if any(b <= a for a, b in zip(radii[:-1], radii[1:])):
            raise SequenceViolationError("profile radii must strictly increase")
        if any(v < 0 for v in sups):
            raise ValueError("sup_values must be nonnegative")
        self.radii = radii
        self.sup_values = sups
        self.angular_count = int(self.angular_count)

    def to_dict(self):
        return {
            "radii": list(self.radii),
            "sup_values": list(self.sup_values),
            "angular_count": self.angular_count,
            "quadrature": self.quadrature,
            "phi_label": self.phi_label,
            "theta_label": self.theta_label,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            radii=tuple(data["radii"]),
            sup_values=tuple(data["sup_values"]),
            angular_count=data["angular_count"],
            quadrature=data.get("quadrature"),
            phi_label=data.get("phi_label", ""),
            theta_label=data.get("theta_label", ""),
        )


@dataclass
class VerdictReport:
    verdict: str
    diagnostics: dict = field(default_factory=dict)


@dataclass
class ProbeReport:
    connected: bool
    component_count: int
    caveat: str
    grid_n: int
    level: float


def _integrand_values(phi: SelfMap, theta, ws, sphere, slice_matrix):
    """Criterion integrand on an array of points (all != phi(0))."""
    ws = np.asarray(ws, dtype=np.complex128)
    if phi.d == 1:
        nav = counting_values(phi, ws)
    else:
        dens = np.zeros_like(slice_matrix)
        dens[:, 0] = 1.0
        nav = np.empty(ws.shape[0])
        for i in range(ws.shape[0]):
            wfull = np.full(slice_matrix.shape[0], ws[i], dtype=np.complex128)
            nav[i] = np.dot(
                sphere.weights,
                _kernels.counting_batch(slice_matrix, dens, wfull, RIM),
            )
    weight = (1.0 - np.abs(theta(ws))) / (1.0 - np.abs(ws))
    return nav * weight


def criterion_integrand(phi: SelfMap, theta, w,
                        sq: Optional[SphereQuadrature] = None) -> float:
    """counting_avg(phi, w) * (1 - |Theta(w)|) / (1 - |w|) at one point."""
    from .nevanlinna import counting_avg

    w = complex(w)
    if abs(w) >= 1.0:
        raise ValueError("w must lie in the open unit disk")
    nav = counting_avg(phi, w, sq)
    weight = (1.0 - abs(complex(theta(w)))) / (1.0 - abs(w))
    return float(nav * weight)


def criterion_profile(
    phi: SelfMap,
    theta,
    radii,
    angular_count: int = 256,
    sq: Optional[SphereQuadrature] = None,
) -> CriterionProfile:
    """Sup of the integrand over equispaced angular samples per radius.

    Points within 1e-8 of the base point phi(0) are skipped.  Each circle
    gets one refinement pass at triple density; if that moves the max by
    more than 10% a second pass at nine-fold density is taken.
    """
    radii = tuple(float(r) for r in radii)
    if any(not (0.0 < r < 1.0) for r in radii):
        raise SequenceViolationError("radii must lie in (0, 1)")
    if any(b <= a for a, b in zip(radii[:-1], radii[1:])):
        raise SequenceViolationError("radii must strictly increase")
    angular_count = int(angular_count)
    if angular_count < 8:
        raise ValueError("angular_count must be at least 8")
    if phi.d >= 2 and sq is None:
        sq = sphere_uniform(phi.d, 20_000, seed=0)
    slice_matrix = phi.slice_matrix(sq.points) if phi.d >= 2 else None
    b = phi.phi0

    def sup_at(r, count):
        ws = r * np.exp(2j * np.pi * np.arange(count) / count)
        keep = np.abs(ws - b) > PROFILE_SKIP
        ws = ws[keep]
        if ws.size == 0:
            return 0.0
        vals = _integrand_values(phi, theta, ws, sq, slice_matrix)
        return float(np.max(vals))

    sups = []
    for r in radii:
        s1 = sup_at(r, angular_count)
        s3 = sup_at(r, 3 * angular_count)
        if s3 - s1 > 0.10 * max(s3, 1e-300):
            s3 = sup_at(r, 9 * angular_count)
        sups.append(s3)
    quad_desc = None
    if sq is not None:
        quad_desc = {"d": sq.d, "n": sq.n, "seed": sq.seed}
    return CriterionProfile(
        radii=radii,
        sup_values=tuple(sups),
        angular_count=angular_count,
        quadrature=quad_desc,
        phi_label=repr(phi.body),
        theta_label=repr(theta),
    )


def compactness_verdict(profile: CriterionProfile, tol: float) -> VerdictReport:
    """Classify the profile tail: Compact / NonCompact / Inconclusive.

    Needs at least 4 radii reaching 0.99.  Compact: last three sups all
    below tol and non-increasing.  NonCompact: last three all above
    10 * tol and non-decreasing within 5%.  Anything else is
    Inconclusive, with the tail trend reported.
    """
    tol = float(tol)
    if len(profile.radii) < 4 or max(profile.radii) < 0.99:
        raise InsufficientProfileError(
            "need >= 4 radii with max >= 0.99 (got %d radii, max %.4g)"
            % (len(profile.radii), max(profile.radii) if profile.radii else 0.0)
        )
    tail = profile.sup_values[-3:]
    ratios = [
        (b / a) if a > 0 else math.inf if b > 0 else 1.0
        for a, b in zip(tail[:-1], tail[1:])
    ]
    diag = {
        "tail_radii": list(profile.radii[-3:]),
        "tail_values": list(tail),
        "tail_ratios": ratios,
        "tol": tol,
    }
    small = all(v < tol for v in tail)
    nonincreasing = all(b <= a for a, b in zip(tail[:-1], tail[1:]))
    large = all(v > 10.0 * tol for v in tail)
    nondecreasing = all(b >= 0.95 * a for a, b in zip(tail[:-1], tail[1:]))
    if small and nonincreasing:
        return VerdictReport("Compact", diag)
    if large and nondecreasing:
        return VerdictReport("NonCompact", diag)
    return VerdictReport("Inconclusive", diag)


def one_component_probe(theta, level: float, grid_n: int = 256) -> ProbeReport:
    """Count 4-connected components of {|Theta| < level} on a raster grid.

    Cell centers cover [-1, 1]^2; only cells with |z| < 1 - 1.5/grid_n
    are kept, which trims a thin boundary ring (singular atoms sit on the
    boundary and must not be evaluated).  Resolution-dependent heuristic:
    thin channels below the cell size disconnect, small components below
    it vanish.
    """
    grid_n = int(grid_n)
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    level = float(level)
    if not (0.0 < level < 1.0):
        raise ValueError("level must lie in (0, 1)")
    xs = -1.0 + 2.0 * (np.arange(grid_n) + 0.5) / grid_n
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    Z = X + 1j * Y
    inside = np.abs(Z) < 1.0 - 1.5 / grid_n
    mod = np.ones(Z.shape, dtype=np.float64)
    mod[inside] = np.abs(theta(Z[inside]))
    mask = inside & (mod < level)
    count = int(_kernels.label_count(mask))
    return ProbeReport(
        connected=bool(count == 1),
        component_count=count,
        caveat=(
            "heuristic raster probe at %dx%d; features thinner than %.4f "
            "are unresolved and a ring of width %.4f at the boundary is "
            "excluded" % (grid_n, grid_n, 2.0 / grid_n, 1.5 / grid_n)
        ),
        grid_n=grid_n,
        level=level,
    )
