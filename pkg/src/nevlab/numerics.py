"""Polynomial arithmetic, root finding, power series, and winding counts.

Univariate polynomials are dense complex arrays in ascending order.
Polynomials in several variables are sparse multi-index maps; their main
job here is producing slice polynomials along directions on the unit
sphere.  Root finding delegates to the compiled kernels and enforces a
residual contract on the results.
"""

import math
from typing import Callable, Dict, Mapping, Tuple

import numpy as np

from . import _kernels
from .errors import (
    ConstantPolynomialError,
    NoConvergenceError,
    NonIntegerWindingError,
    NotUnitVectorError,
    ZeroNearContourError,
)


class Polynomial:
    """Dense univariate polynomial with complex coefficients.

    ``coeffs[k]`` multiplies ``z**k``.  Trailing exact zeros are trimmed
    on construction, so ``degree`` always reflects a nonzero leading
    coefficient (the zero polynomial has degree 0 and coeffs ``[0]``).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128)).ravel()
        nz = np.nonzero(arr)[0]
        if nz.size:
            arr = arr[: nz[-1] + 1]
        else:
            arr = np.zeros(1, dtype=np.complex128)
        self.coeffs = arr

    @classmethod
    def from_roots(cls, roots, lead=1.0):
        acc = np.array([complex(lead)], dtype=np.complex128)
        for r in np.atleast_1d(np.asarray(roots, dtype=np.complex128)):
            acc = np.convolve(acc, np.array([-r, 1.0], dtype=np.complex128))
        return cls(acc)

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        acc = np.full(z.shape, self.coeffs[-1])
        for k in range(self.coeffs.shape[0] - 2, -1, -1):
            acc = acc * z + self.coeffs[k]
        if acc.ndim == 0:
            return complex(acc)
        return acc

    def derivative(self):
        if self.degree == 0:
            return Polynomial([0.0])
        return Polynomial(self.coeffs[1:] * np.arange(1, self.coeffs.shape[0]))

    def conjugate(self):
        """Coefficient-wise conjugate, i.e. z -> conj(p(conj z))."""
        return Polynomial(np.conj(self.coeffs))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, float, complex)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        out = np.zeros(n, dtype=np.complex128)
        out[: self.coeffs.shape[0]] += self.coeffs
        out[: other.coeffs.shape[0]] += other.coeffs
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def compose(self, inner):
        """Polynomial composition self(inner(z))."""
        inner = self._coerce(inner)
        acc = Polynomial([self.coeffs[-1]])
        for k in range(self.coeffs.shape[0] - 2, -1, -1):
            acc = acc * inner + Polynomial([self.coeffs[k]])
        return acc

    def __repr__(self):
        return "Polynomial(%s)" % np.array2string(self.coeffs, separator=", ")


class MultiPolynomial:
    """Polynomial in ``d`` complex variables as a sparse multi-index map.

    ``terms`` maps exponent tuples of length ``d`` to coefficients; zero
    coefficients are dropped.  Evaluation broadcasts over trailing point
    axes of shape ``(..., d)``.
    """

    def __init__(self, d: int, terms: Mapping[Tuple[int, ...], complex]):
        if not isinstance(d, int) or d < 1:
            raise ValueError("dimension d must be a positive integer")
        clean: Dict[Tuple[int, ...], complex] = {}
        for alpha, c in terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != d:
                raise ValueError(
                    "multi-index %r has length %d, expected %d"
                    % (alpha, len(alpha), d)
                )
            if any(a < 0 for a in alpha):
                raise ValueError("multi-index %r has a negative entry" % (alpha,))
            c = complex(c)
            if c != 0:
                clean[alpha] = clean.get(alpha, 0.0) + c
        self.d = d
        self.terms = {a: c for a, c in sorted(clean.items()) if c != 0}
        if self.terms:
            self._alphas = np.array(list(self.terms.keys()), dtype=np.int64)
            self._coefs = np.array(list(self.terms.values()), dtype=np.complex128)
        else:
            self._alphas = np.zeros((0, d), dtype=np.int64)
            self._coefs = np.zeros(0, dtype=np.complex128)

    @classmethod
    def from_univariate(cls, p: Polynomial):
        return cls(1, {(k,): c for k, c in enumerate(p.coeffs)})

    @property
    def degree(self):
        if not self.terms:
            return 0
        return int(self._alphas.sum(axis=1).max())

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=np.complex128)
        if pts.shape[-1] != self.d:
            raise ValueError("points must have trailing dimension %d" % self.d)
        out = np.zeros(pts.shape[:-1], dtype=np.complex128)
        for alpha, c in zip(self._alphas, self._coefs):
            mono = np.ones(pts.shape[:-1], dtype=np.complex128)
            for i in range(self.d):
                if alpha[i]:
                    mono = mono * pts[..., i] ** alpha[i]
            out = out + c * mono
        return out

    def slice(self, zeta):
        """Restriction to the complex line through ``zeta`` on the sphere.

        Returns the univariate polynomial ``lambda -> self(lambda * zeta)``.
        ``zeta`` must be a unit vector to within 1e-10.
        """
        zeta = np.asarray(zeta, dtype=np.complex128).ravel()
        if zeta.shape[0] != self.d:
            raise ValueError("direction must have length %d" % self.d)
        nrm = math.sqrt(float(np.sum(np.abs(zeta) ** 2)))
        if abs(nrm - 1.0) > 1e-10:
            raise NotUnitVectorError(
                "direction has norm %.3e, expected 1" % nrm
            )
        coefs = np.zeros(self.degree + 1, dtype=np.complex128)
        for alpha, c in zip(self._alphas, self._coefs):
            mono = 1.0 + 0.0j
            for i in range(self.d):
                if alpha[i]:
                    mono *= zeta[i] ** alpha[i]
            coefs[int(alpha.sum())] += c * mono
        return Polynomial(coefs)

    def slice_matrix(self, zetas):
        """Slice coefficients for many directions at once.

        ``zetas`` has shape (n, d); row i of the result holds the
        ascending coefficients of the slice polynomial along ``zetas[i]``.
        Directions are trusted to be unit vectors here; the per-direction
        ``slice`` method is the validating entry point.
        """
        zetas = np.asarray(zetas, dtype=np.complex128)
        n = zetas.shape[0]
        out = np.zeros((n, self.degree + 1), dtype=np.complex128)
        for alpha, c in zip(self._alphas, self._coefs):
            mono = np.full(n, c, dtype=np.complex128)
            for i in range(self.d):
                if alpha[i]:
                    mono = mono * zetas[:, i] ** alpha[i]
            out[:, int(alpha.sum())] += mono
        return out

    def __repr__(self):
        return "MultiPolynomial(d=%d, %d terms, degree %d)" % (
            self.d,
            len(self.terms),
            self.degree,
        )


class RationalFunction:
    """Quotient of two polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        self.num = num
        self.den = den

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def derivative(self):
        n, d = self.num, self.den
        return RationalFunction(
            n.derivative() * d - n * d.derivative(), d * d
        )

    def taylor(self, order: int):
        """Ascending Taylor coefficients at 0 through ``order``."""
        return power_series_divide(self.num.coeffs, self.den.coeffs, order)


def power_series_divide(num, den, order: int):
    """Coefficients of num/den as a power series at 0, through ``order``."""
    num = np.asarray(num, dtype=np.complex128)
    den = np.asarray(den, dtype=np.complex128)
    if den[0] == 0:
        raise ZeroDivisionError("series division needs den(0) != 0")
    out = np.zeros(order + 1, dtype=np.complex128)
    b0 = den[0]
    for k in range(order + 1):
        acc = num[k] if k < num.shape[0] else 0.0
        jmax = min(k, den.shape[0] - 1)
        if jmax >= 1:
            acc = acc - np.dot(den[1 : jmax + 1], out[k - 1 :: -1][:jmax])
        out[k] = acc / b0
    return out


def taylor_order_for(radius: float, tol: float = 1e-18) -> int:
    """Order needed so the geometric tail of |a_k|^2 ~ radius^(2k) is < tol."""
    if radius <= 1e-12:
        return 16
    if radius >= 1.0 - 1e-12:
        return 200_000
    k = math.log(tol * (1.0 - radius * radius)) / (2.0 * math.log(radius))
    return int(min(max(64, math.ceil(k)), 200_000))


def hardy2_norm(p: Polynomial) -> float:
    """Hardy space H^2 norm of a polynomial: sqrt of the coefficient sum."""
    return float(np.sqrt(np.sum(np.abs(p.coeffs) ** 2)))


def poly_roots(p: Polynomial) -> np.ndarray:
    """All roots of ``p``, with multiplicity, as a sorted complex array.

    Raises :class:`ConstantPolynomialError` for degree < 1 and
    :class:`NoConvergenceError` when any root violates the residual
    contract |p(root)| <= 1e-8 * (1 + max |coeff|).
    """
    if p.degree < 1:
        raise ConstantPolynomialError(
            "cannot extract roots from a constant polynomial"
        )
    roots = _kernels.aberth_roots(p.coeffs)
    residuals = np.abs(p(roots))
    bound = 1e-8 * (1.0 + float(np.max(np.abs(p.coeffs))))
    if residuals.size and float(np.max(residuals)) > bound:
        raise NoConvergenceError(
            "root residual %.3e exceeds contract %.3e"
            % (float(np.max(residuals)), bound)
        )
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def zeros_in_disk(
    f: Callable,
    df: Callable,
    center: complex = 0.0,
    radius: float = 1.0,
    *,
    zero_tol: float = 1e-9,
    start_n: int = 64,
    max_n: int = 1 << 17,
    stable_tol: float = 1e-3,
) -> int:
    """Zero count of ``f`` in |z - center| < radius by the argument principle.

    ``f`` and ``df`` must accept numpy arrays.  The contour integral of
    f'/f is evaluated by the trapezoid rule with doubling until two
    successive levels agree to ``stable_tol``; the result must then sit
    within 0.1 of an integer.  If |f| dips below ``zero_tol`` anywhere on
    the contour the count is ill-conditioned and
    :class:`ZeroNearContourError` is raised.
    """
    center = complex(center)
    radius = float(radius)
    prev = None
    n = int(start_n)
    while n <= max_n:
        t = 2.0 * np.pi * np.arange(n) / n
        e = np.exp(1j * t)
        z = center + radius * e
        fz = np.asarray(f(z), dtype=np.complex128)
        if float(np.min(np.abs(fz))) < zero_tol:
            raise ZeroNearContourError(
                "min |f| on contour is %.3e (< %.1e)"
                % (float(np.min(np.abs(fz))), zero_tol)
            )
        val = complex(np.mean(np.asarray(df(z)) / fz * radius * e))
        if prev is not None and abs(val - prev) < stable_tol:
            k = round(val.real)
            if abs(val - k) > 0.1:
                raise NonIntegerWindingError(
                    "winding integral %.6f%+.6fj is not near an integer"
                    % (val.real, val.imag)
                )
            return int(k)
        prev = val
        n *= 2
    raise NoConvergenceError(
        "winding integral did not stabilize below %d nodes" % max_n
    )
