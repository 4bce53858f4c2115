"""Model spaces K_Theta: kernels, finite bases, projectors, Cohn integrals.

For an inner function Theta the reproducing kernel of K_Theta is

    k_w(z) = (1 - Theta(z) conj(Theta(w))) / (1 - z conj(w)),
    ||k_w||^2 = (1 - |Theta(w)|^2) / (1 - |w|^2).

Only finite Blaschke products give a finite-dimensional K_B; those get a
concrete orthonormal basis in Takenaka-Malmquist form, stored as
numerator/denominator polynomial pairs.  Hardy-space pairings between
rational functions are evaluated through Taylor expansion at the origin
with a geometric tail check; the expansion order grows as the basis
zeros approach the boundary.
"""

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from .errors import SequenceViolationError
from .inner import BlaschkeProduct
from .numerics import (
    Polynomial,
    RationalFunction,
    power_series_divide,
    taylor_order_for,
)
from .quadrature import DiskQuadrature


@dataclass(frozen=True)
class KernelPoint:
    """A kernel anchor: the point, the inner function, and the norm."""

    w: complex
    theta: object
    norm: float
    theta_w: complex


def _check_disk(label, z):
    if abs(z) >= 1.0:
        raise ValueError("%s must lie in the open unit disk" % label)


def kernel_eval(theta, w, z):
    """Reproducing kernel k_w(z) of K_Theta, vectorized in z."""
    w = complex(w)
    _check_disk("w", w)
    z = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("z must lie in the open unit disk")
    tw = complex(theta(w))
    out = (1.0 - np.asarray(theta(z)) * np.conj(tw)) / (1.0 - z * np.conj(w))
    if out.ndim == 0:
        return complex(out)
    return out


def kernel_norm(theta, w) -> float:
    """Norm of the reproducing kernel at w."""
    w = complex(w)
    _check_disk("w", w)
    tw = complex(theta(w))
    return math.sqrt((1.0 - abs(tw) ** 2) / (1.0 - abs(w) ** 2))


def kernel_point(theta, w) -> KernelPoint:
    w = complex(w)
    _check_disk("w", w)
    tw = complex(theta(w))
    nrm = math.sqrt((1.0 - abs(tw) ** 2) / (1.0 - abs(w) ** 2))
    return KernelPoint(w=w, theta=theta, norm=nrm, theta_w=tw)


def kernel_derivative(theta, w, z):
    """d/dz of kernel_eval(theta, w, z); needs theta.derivative."""
    w = complex(w)
    _check_disk("w", w)
    z = np.asarray(z, dtype=np.complex128)
    tw = np.conj(complex(theta(w)))
    den = 1.0 - z * np.conj(w)
    out = (-np.asarray(theta.derivative(z)) * tw * den
           + np.conj(w) * (1.0 - np.asarray(theta(z)) * tw)) / den**2
    if out.ndim == 0:
        return complex(out)
    return out


class ReproduceResult(NamedTuple):
    pairing_value: complex
    point_value: complex
    abs_error: float


class ModelSpaceBasis:
    """Orthonormal basis of K_B for a finite Blaschke product B.

    ``functions[k]`` is a rational function; ``gram`` holds the numerical
    Gram matrix (identity up to pairing error).  Instances are immutable
    in practice: nothing mutates them after construction.
    """

    def __init__(self, blaschke: BlaschkeProduct,
                 functions: Sequence[RationalFunction]):
        self.blaschke = blaschke
        self.functions = tuple(functions)
        self._zero_moduli = [abs(a) for a, _ in blaschke.zeros]
        self._taylor_cache = {}
        self.gram = self._compute_gram()

    @property
    def dim(self):
        return len(self.functions)

    def _base_order(self, extra_radius=0.0):
        rho = max(self._zero_moduli + [extra_radius])
        return max(200, taylor_order_for(rho, tol=1e-24))

    def taylor_matrix(self, order: int) -> np.ndarray:
        """Rows of ascending Taylor coefficients, one per basis element."""
        cached = self._taylor_cache.get(order)
        if cached is not None:
            return cached
        mat = np.zeros((self.dim, order + 1), dtype=np.complex128)
        for k, rf in enumerate(self.functions):
            mat[k] = power_series_divide(rf.num.coeffs, rf.den.coeffs, order)
        self._taylor_cache[order] = mat
        return mat

    def _compute_gram(self):
        order = self._base_order()
        mat = self.taylor_matrix(order)
        gram = mat @ mat.conj().T
        tail = float(np.max(np.sum(np.abs(mat[:, -16:]) ** 2, axis=1)))
        if tail > 1e-14:
            mat = self.taylor_matrix(2 * order)
            gram = mat @ mat.conj().T
        return gram

    def evaluate(self, coeffs, z):
        """Value of sum_k coeffs[k] * e_k at z (vectorized in z)."""
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        z = np.asarray(z, dtype=np.complex128)
        out = np.zeros(z.shape, dtype=np.complex128)
        for c, rf in zip(coeffs, self.functions):
            if c != 0:
                out = out + c * rf(z)
        if out.ndim == 0:
            return complex(out)
        return out

    def membership_defects(self, kmax: Optional[int] = None) -> float:
        """max over k <= kmax of |<e_j, B z^k>| (should vanish on K_B)."""
        if kmax is None:
            kmax = 2 * self.blaschke.degree
        order = self._base_order() + kmax
        mat = self.taylor_matrix(order)
        bnum = self.blaschke.numerator().coeffs
        bden = self.blaschke.denominator().coeffs
        btay = power_series_divide(bnum, bden, order)
        worst = 0.0
        for k in range(kmax + 1):
            shifted = np.zeros(order + 1, dtype=np.complex128)
            shifted[k:] = btay[: order + 1 - k]
            vals = mat @ np.conj(shifted)
            worst = max(worst, float(np.max(np.abs(vals))))
        return worst

    def __repr__(self):
        return "ModelSpaceBasis(dim=%d)" % self.dim


def tm_basis(blaschke: BlaschkeProduct) -> ModelSpaceBasis:
    """Takenaka-Malmquist orthonormal basis of K_B.

    With zeros a_1, ..., a_m (multiplicities expanded, kept in stored
    order) the k-th element is

        e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) *
                 prod_{j < k} b_{a_j}(z),

    using the same per-factor normalization as BlaschkeProduct (zeros at
    the origin contribute the factor z).
    """
    flat = []
    for a, m in blaschke.zeros:
        flat.extend([a] * m)
    funcs: List[RationalFunction] = []
    prefix_num = Polynomial([1.0])
    prefix_den = Polynomial([1.0])
    for a in flat:
        scale = math.sqrt(1.0 - abs(a) ** 2)
        num = prefix_num * scale
        if a == 0:
            den = prefix_den
            fac_num = Polynomial([0.0, 1.0])
            fac_den = Polynomial([1.0])
        else:
            den = prefix_den * Polynomial([1.0, -np.conj(a)])
            fac_num = Polynomial([(abs(a) / a) * a, -(abs(a) / a)])
            fac_den = Polynomial([1.0, -np.conj(a)])
        funcs.append(RationalFunction(num, den))
        prefix_num = prefix_num * fac_num
        prefix_den = prefix_den * fac_den
    return ModelSpaceBasis(blaschke, funcs)


def _kernel_taylor(basis: ModelSpaceBasis, w: complex, order: int):
    """Taylor coefficients of k_w for Theta = basis.blaschke."""
    bnum = basis.blaschke.numerator()
    bden = basis.blaschke.denominator()
    tw = complex(basis.blaschke(w))
    num = bden - np.conj(tw) * bnum
    den = bden * Polynomial([1.0, -np.conj(w)])
    return power_series_divide(num.coeffs, den.coeffs, order)


def reproduce_check(basis: ModelSpaceBasis, coeffs, w) -> ReproduceResult:
    """Reproducing-property check in basis coordinates.

    pairing_value is <f, k_w> computed through Taylor-coefficient sums;
    point_value is the direct evaluation f(w).  The two agree for
    elements of K_B up to pairing truncation error.
    """
    w = complex(w)
    _check_disk("w", w)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.shape != (basis.dim,):
        raise ValueError("need exactly %d coefficients" % basis.dim)
    order = basis._base_order(extra_radius=abs(w))
    mat = basis.taylor_matrix(order)
    kw = _kernel_taylor(basis, w, order)
    pairings = mat @ np.conj(kw)
    pairing_value = complex(np.dot(coeffs, pairings))
    point_value = complex(basis.evaluate(coeffs, w))
    return ReproduceResult(
        pairing_value=pairing_value,
        point_value=point_value,
        abs_error=abs(pairing_value - point_value),
    )


def pn_project(basis: ModelSpaceBasis, coeffs, n: int) -> np.ndarray:
    """Project onto elements of K_B vanishing to order n at the origin.

    Works in basis coordinates with the stored Gram geometry:
    P = I - G^{-1} T^H (T G^{-1} T^H)^+ T, where T collects the first n
    Taylor rows of the basis.  n = 0 is the identity.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.shape != (basis.dim,):
        raise ValueError("need exactly %d coefficients" % basis.dim)
    n = int(n)
    if n < 0:
        raise ValueError("vanishing order must be nonnegative")
    if n == 0:
        return coeffs.copy()
    order = max(n - 1, 1)
    mat = basis.taylor_matrix(max(basis._base_order(), order))
    T = mat[:, :n].T.copy()
    G = basis.gram
    Ginv_TH = np.linalg.solve(G, T.conj().T)
    M = T @ Ginv_TH
    lam = np.linalg.pinv(M, rcond=1e-12) @ (T @ coeffs)
    return coeffs - Ginv_TH @ lam


class CohnReport(NamedTuple):
    value: float
    converged: bool
    increments: tuple


def _refine_boundary(rule: DiskQuadrature) -> DiskQuadrature:
    """Split the outermost radial panel in half (in the t variable)."""
    edges = list(rule.t_edges)
    mid = 0.5 * (edges[-2] + edges[-1])
    edges = edges[:-1] + [mid, edges[-1]]
    return DiskQuadrature(np.array(edges), rule.panel_nodes, rule.n_theta,
                          theta_offset=rule.theta_offset)


def cohn_functional(f, theta, p: float, dq: Optional[DiskQuadrature] = None
                    ) -> CohnReport:
    """Weighted derivative functional |f(0)|^2 + int |f'|^2 (1-|Theta|)^{-p} log(1/|w|) dA/pi.

    ``p`` must lie in (0, 1).  The integral is evaluated on the supplied
    graded rule and then re-evaluated on boundary-refined rules until the
    relative change drops below 1e-6 (or a pass budget runs out).  If the
    values never stabilize to relative 1e-4 the report carries
    ``converged=False``; the integral may genuinely be infinite for
    functions outside K_Theta^p.
    """
    p = float(p)
    if not (0.0 < p < 1.0):
        raise ValueError("p must lie in (0, 1), got %r" % p)
    if dq is None:
        dq = DiskQuadrature.boundary_graded()
    fp = f.derivative()
    f0 = complex(f(0.0))

    def value_on(rule):
        grid = rule.nodes()
        weight = (1.0 - np.abs(theta(grid))) ** (-p)
        vals = np.abs(fp(grid)) ** 2 * weight
        radial = np.mean(vals, axis=1)
        return float(np.dot(rule.rw, radial * (-np.log(rule.r))))

    vals = [value_on(dq)]
    increments = []
    rule = dq
    converged = False
    for _ in range(10):
        rule = _refine_boundary(rule)
        vals.append(value_on(rule))
        inc = abs(vals[-1] - vals[-2]) / (abs(vals[-1]) + 1e-300)
        increments.append(inc)
        if inc <= 1e-6:
            converged = True
            break
    if not converged:
        converged = bool(increments and increments[-1] <= 1e-4)
    return CohnReport(
        value=abs(f0) ** 2 + vals[-1],
        converged=converged,
        increments=tuple(increments),
    )


def pseudo_disk_contains(w, eps: float, z) -> bool:
    """Strict pseudohyperbolic disk test |z - w| < eps |1 - z conj(w)|."""
    w = complex(w)
    z = complex(z)
    _check_disk("w", w)
    _check_disk("z", z)
    eps = float(eps)
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must lie in (0, 1)")
    return bool(abs(z - w) < eps * abs(1.0 - z * np.conj(w)))


@dataclass
class DerivativeBoundRecord:
    w: complex
    theta_mod: float
    min_derivative: float
    empirical_c: float
    meets_reference: Optional[bool]


def kernel_derivative_bound_check(
    theta,
    w_seq,
    a: float,
    eps: float,
    c_ref: Optional[float] = None,
) -> List[DerivativeBoundRecord]:
    """Empirical kernel-derivative lower bounds along a sequence.

    Every w_n must satisfy |Theta(w_n)| < a (SequenceViolationError
    otherwise).  For each n the pseudohyperbolic eps-disk around w_n is
    sampled (including its center), |k'_{w_n}| is minimized over the
    mesh, and the minimum is scaled by (1 - |w_n|^2)^2 to give an
    empirical constant.  There is no pass/fail: with ``c_ref`` given the
    record notes whether the empirical constant meets it.
    """
    a = float(a)
    eps = float(eps)
    if not (0.0 < a < 1.0):
        raise ValueError("a must lie in (0, 1)")
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must lie in (0, 1)")
    radii = np.array([0.0, eps / 3.0, 2.0 * eps / 3.0, 0.95 * eps])
    angles = np.exp(2j * np.pi * (np.arange(16) + 0.5) / 16)
    records = []
    for idx, w in enumerate(np.asarray(w_seq, dtype=np.complex128).ravel()):
        w = complex(w)
        _check_disk("w_seq[%d]" % idx, w)
        tmod = abs(complex(theta(w)))
        if tmod >= a:
            raise SequenceViolationError(
                "|Theta(w_%d)| = %.6f >= a = %.6f" % (idx, tmod, a)
            )
        u = (radii[:, None] * angles[None, :]).ravel()
        u = np.concatenate([[0.0 + 0.0j], u])
        mesh = (w - u) / (1.0 - np.conj(w) * u)
        dvals = np.abs(kernel_derivative(theta, w, mesh))
        mn = float(np.min(dvals))
        emp = mn * (1.0 - abs(w) ** 2) ** 2
        records.append(
            DerivativeBoundRecord(
                w=w,
                theta_mod=tmod,
                min_derivative=mn,
                empirical_c=emp,
                meets_reference=(None if c_ref is None else bool(emp >= c_ref)),
            )
        )
    return records
