"""Inner functions on the unit disk.

Finite Blaschke products, atomic singular inner functions, and products
of the two.  A Blaschke factor for a zero ``a != 0`` is normalized as

    (|a| / a) * (a - z) / (1 - conj(a) z),

which is positive at the origin; zeros at the origin contribute a plain
monomial ``z**m``.  Singular parts are exp(-sum_j s_j (zeta_j + z) /
(zeta_j - z)) with unimodular atoms ``zeta_j`` and masses ``s_j > 0``.
"""

import numpy as np

from .errors import AtomSingularityError
from .numerics import Polynomial

_ATOM_GUARD = 1e-12


def _as_zero_list(zeros):
    out = []
    for item in zeros:
        if isinstance(item, tuple):
            a, m = item
        else:
            a, m = item, 1
        a = complex(a)
        m = int(m)
        if abs(a) >= 1.0:
            raise ValueError("Blaschke zero %r is not in the open disk" % (a,))
        if m < 1:
            raise ValueError("multiplicity must be >= 1, got %d" % m)
        out.append((a, m))
    return tuple(out)


class BlaschkeProduct:
    """Finite Blaschke product with unimodular front factor ``gamma``.

    ``zeros`` is a sequence of complex zeros or (zero, multiplicity)
    pairs, all strictly inside the disk.  At least one zero is required;
    a zero-free product would be a unimodular constant, which is not
    inner in the sense used here.
    """

    def __init__(self, zeros, gamma=1.0):
        self.zeros = _as_zero_list(zeros)
        if not self.zeros:
            raise ValueError("a Blaschke product needs at least one zero")
        gamma = complex(gamma)
        if abs(abs(gamma) - 1.0) > 1e-12:
            raise ValueError("|gamma| must equal 1 within 1e-12")
        self.gamma = gamma / abs(gamma)
        self._num = None
        self._den = None

    @property
    def degree(self):
        return sum(m for _, m in self.zeros)

    def _factor_values(self, z):
        """Values of each distinct factor (without multiplicity) at z."""
        vals = []
        for a, _ in self.zeros:
            if a == 0:
                vals.append(z)
            else:
                vals.append((abs(a) / a) * (a - z) / (1.0 - np.conj(a) * z))
        return vals

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.full(z.shape, self.gamma, dtype=np.complex128)
        for (a, m), f in zip(self.zeros, self._factor_values(z)):
            out = out * f**m
        if out.ndim == 0:
            return complex(out)
        return out

    def derivative(self, z):
        """B'(z) via the product rule; finite at the zeros of B."""
        z = np.asarray(z, dtype=np.complex128)
        facs = self._factor_values(z)
        dfacs = []
        for a, _ in self.zeros:
            if a == 0:
                dfacs.append(np.ones(z.shape, dtype=np.complex128))
            else:
                # d/dz of (|a|/a)(a - z)/(1 - conj(a) z)
                dfacs.append(
                    (abs(a) / a)
                    * (abs(a) ** 2 - 1.0)
                    / (1.0 - np.conj(a) * z) ** 2
                )
        out = np.zeros(z.shape, dtype=np.complex128)
        for k, (ak, mk) in enumerate(self.zeros):
            term = mk * dfacs[k] * facs[k] ** (mk - 1)
            for j, (aj, mj) in enumerate(self.zeros):
                if j != k:
                    term = term * facs[j] ** mj
            out = out + term
        out = out * self.gamma
        if out.ndim == 0:
            return complex(out)
        return out

    def _build_fraction(self):
        num = Polynomial([self.gamma])
        den = Polynomial([1.0])
        for a, m in self.zeros:
            if a == 0:
                fn = Polynomial([0.0, 1.0])
                fd = Polynomial([1.0])
            else:
                fn = Polynomial([(abs(a) / a) * a, -(abs(a) / a)])
                fd = Polynomial([1.0, -np.conj(a)])
            for _ in range(m):
                num = num * fn
                den = den * fd
        self._num, self._den = num, den

    def numerator(self) -> Polynomial:
        if self._num is None:
            self._build_fraction()
        return self._num

    def denominator(self) -> Polynomial:
        if self._den is None:
            self._build_fraction()
        return self._den

    def __repr__(self):
        return "BlaschkeProduct(degree=%d, zeros=%r)" % (self.degree, self.zeros)


class SingularInner:
    """Atomic singular inner function with finitely many boundary atoms."""

    def __init__(self, atoms):
        clean = []
        for item in atoms:
            zeta, s = item
            zeta = complex(zeta)
            s = float(s)
            if abs(abs(zeta) - 1.0) > 1e-12:
                raise ValueError("atom %r is not on the unit circle" % (zeta,))
            if s <= 0:
                raise ValueError("atom mass must be positive, got %r" % s)
            clean.append((zeta, s))
        for i in range(len(clean)):
            for j in range(i + 1, len(clean)):
                if abs(clean[i][0] - clean[j][0]) <= _ATOM_GUARD:
                    raise ValueError("atoms %d and %d coincide" % (i, j))
        if not clean:
            raise ValueError("a singular inner function needs at least one atom")
        self.atoms = tuple(clean)

    @property
    def total_mass(self):
        return sum(s for _, s in self.atoms)

    def _guard(self, z):
        for zeta, _ in self.atoms:
            dist = np.abs(z - zeta)
            if np.any(dist < _ATOM_GUARD):
                raise AtomSingularityError(
                    "evaluation within %.0e of atom %r" % (_ATOM_GUARD, zeta)
                )

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        self._guard(z)
        expo = np.zeros(z.shape, dtype=np.complex128)
        for zeta, s in self.atoms:
            expo = expo - s * (zeta + z) / (zeta - z)
        out = np.exp(expo)
        if out.ndim == 0:
            return complex(out)
        return out

    def log_derivative(self, z):
        """(S'/S)(z) = -sum_j 2 s_j zeta_j / (zeta_j - z)^2."""
        z = np.asarray(z, dtype=np.complex128)
        self._guard(z)
        out = np.zeros(z.shape, dtype=np.complex128)
        for zeta, s in self.atoms:
            out = out - 2.0 * s * zeta / (zeta - z) ** 2
        return out

    def derivative(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = self(z) * self.log_derivative(z)
        if np.ndim(out) == 0:
            return complex(out)
        return out

    def __repr__(self):
        return "SingularInner(atoms=%r)" % (self.atoms,)


class InnerFunction:
    """Product of an optional Blaschke part and an optional singular part."""

    def __init__(self, blaschke: BlaschkeProduct = None, singular: SingularInner = None):
        if blaschke is None and singular is None:
            raise ValueError("need a Blaschke part, a singular part, or both")
        self.blaschke = blaschke
        self.singular = singular

    @classmethod
    def from_blaschke(cls, zeros, gamma=1.0):
        return cls(blaschke=BlaschkeProduct(zeros, gamma))

    @classmethod
    def from_atoms(cls, atoms):
        return cls(singular=SingularInner(atoms))

    @property
    def atoms(self):
        return self.singular.atoms if self.singular is not None else ()

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.ones(z.shape, dtype=np.complex128)
        if self.blaschke is not None:
            out = out * self.blaschke(z)
        if self.singular is not None:
            out = out * self.singular(z)
        if out.ndim == 0:
            return complex(out)
        return out

    def derivative(self, z):
        z = np.asarray(z, dtype=np.complex128)
        b, s = self.blaschke, self.singular
        if s is None:
            out = b.derivative(z)
        elif b is None:
            out = s.derivative(z)
        else:
            out = b.derivative(z) * s(z) + b(z) * s.derivative(z)
        if np.ndim(out) == 0:
            return complex(out)
        return out

    def __repr__(self):
        return "InnerFunction(blaschke=%r, singular=%r)" % (
            self.blaschke,
            self.singular,
        )


def _domain_guard(z, open_disk=False):
    z = np.asarray(z, dtype=np.complex128)
    r = np.abs(z)
    if open_disk:
        if np.any(r >= 1.0):
            raise ValueError("evaluation point must lie in the open unit disk")
    else:
        if np.any(r > 1.0 + 1e-10):
            raise ValueError("evaluation point must lie in the closed unit disk")
    return z


def inner_eval(theta, z):
    """Evaluate an inner function on the closed disk (atoms excluded)."""
    return theta(_domain_guard(z))


def inner_derivative(theta, z):
    """Derivative of an inner function at points of the open disk."""
    return theta.derivative(_domain_guard(z, open_disk=True))


def radial_modulus_report(theta, radii=(0.9, 0.99, 0.999), n=512):
    """Max and min of |theta| on a few circles, as a diagnostics dict.

    Inner functions must stay below 1 in modulus inside the disk; the
    max creeping toward 1 as r -> 1 is the expected picture.
    """
    report = {}
    for r in radii:
        z = r * np.exp(2j * np.pi * (np.arange(n) + 0.5) / n)
        vals = np.abs(theta(z))
        report[float(r)] = (float(vals.min()), float(vals.max()))
    return report
