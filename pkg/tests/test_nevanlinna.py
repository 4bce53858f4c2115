import numpy as np
import pytest

from nevlab.errors import (
    AtBasePointError,
    BasePointInDiskError,
    ConstantMapError,
    DiskNotInDomainError,
)
from nevlab.inner import BlaschkeProduct
from nevlab.nevanlinna import (
    SelfMap,
    counting,
    counting_avg,
    counting_values,
    littlewood_bound,
    littlewood_paley_verify,
    stanton_verify,
    submean_check,
)
from nevlab.numerics import MultiPolynomial, Polynomial, hardy2_norm
from nevlab.quadrature import sphere_uniform


def _blaschke_counting_oracle(b: BlaschkeProduct, w: complex) -> float:
    # Vieta: sum of log(1/|root|) of num - w*den equals
    # log|leading coeff| - log|constant coeff|, and the constant
    # coefficient is B(0) - w since den(0) = 1
    c = (b.numerator().coeffs.copy(), b.denominator().coeffs.copy())
    n = max(len(c[0]), len(c[1]))
    num = np.zeros(n, dtype=np.complex128)
    den = np.zeros(n, dtype=np.complex128)
    num[: len(c[0])] = c[0]
    den[: len(c[1])] = c[1]
    shifted = num - w * den
    return float(np.log(np.abs(shifted[-1])) - np.log(np.abs(shifted[0])))


class TestSelfMap:
    def test_rejects_constant(self):
        with pytest.raises(ConstantMapError):
            SelfMap(Polynomial([0.5]))

    def test_rejects_expanding_map(self):
        with pytest.raises(ValueError):
            SelfMap(Polynomial([0.0, 2.0]))

    def test_certified_bound(self):
        phi = SelfMap(Polynomial([0.0, 0.5]))
        assert phi.certified_bound == pytest.approx(0.4995, abs=1e-6)
        # a zero hugging the boundary pushes the net supremum past the
        # certification cutoff 1 - 1e-6
        b = SelfMap(BlaschkeProduct([(0.9995, 1)]))
        assert b.certified_bound is None
        assert b.net_sup < 1.0

    def test_base_point(self):
        phi = SelfMap(Polynomial([0.3, 0.5]))
        assert phi.phi0 == pytest.approx(0.3)

    def test_univariate_multipolynomial_coerced(self):
        mp = MultiPolynomial(1, {(1,): 0.5})
        phi = SelfMap(mp)
        assert phi.d == 1
        assert isinstance(phi.body, Polynomial)


class TestCounting:
    def test_monomials_closed_form(self, rng):
        for k in (1, 2, 3, 5):
            phi = SelfMap(Polynomial([0.0] * k + [1.0]))
            for _ in range(25):
                w = 0.9 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
                got = counting(phi, w).value
                assert got == pytest.approx(np.log(1.0 / abs(w)), abs=1e-10)

    def test_monomial_preimage_count(self):
        phi = SelfMap(Polynomial([0.0, 0.0, 0.0, 1.0]))
        sample = counting(phi, 0.5)
        assert len(sample.preimages) == 3
        assert sum(m for _, m in sample.preimages) == 3

    def test_blaschke_vs_vieta_oracle(self, rng):
        zeros = [(0.4 + 0.1j, 1), (-0.3, 1), (0.2j, 1)]
        b = BlaschkeProduct(zeros, gamma=np.exp(0.2j))
        phi = SelfMap(b)
        for _ in range(25):
            w = 0.95 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
            if abs(w - phi.phi0) < 1e-3:
                continue
            got = counting(phi, w).value
            assert got == pytest.approx(_blaschke_counting_oracle(b, w),
                                        abs=1e-10)

    def test_base_point_rejected(self):
        phi = SelfMap(Polynomial([0.3, 0.5]))
        with pytest.raises(AtBasePointError):
            counting(phi, 0.3)

    def test_outside_disk_rejected(self):
        phi = SelfMap(Polynomial([0.0, 0.5]))
        with pytest.raises(ValueError):
            counting(phi, 1.0)

    def test_merged_double_preimage(self):
        # B(z) = z (1/2 - z) / (1 - z/2) has its interior critical point
        # at 2 - sqrt(3); the critical value has one preimage of
        # multiplicity two, which the cluster merge must report as such
        b = BlaschkeProduct([(0.0, 1), (0.5, 1)])
        phi = SelfMap(b)
        zc = 2.0 - np.sqrt(3.0)
        wc = complex(b(zc))
        sample = counting(phi, wc)
        assert len(sample.preimages) == 1
        z, m = sample.preimages[0]
        assert m == 2
        assert z == pytest.approx(zc, abs=1e-7)
        assert sample.value == pytest.approx(2 * np.log(1 / zc), rel=1e-6)

    def test_counting_values_matches_scalar(self, rng):
        phi = SelfMap(Polynomial([0.1, 0.0, 0.8]))
        ws = 0.7 * np.exp(2j * np.pi * rng.random(40))
        batch = counting_values(phi, ws)
        for w, v in zip(ws, batch):
            assert v == pytest.approx(counting(phi, w).value, abs=1e-12)

    def test_no_preimages_is_zero(self):
        phi = SelfMap(Polynomial([0.0, 0.5]))  # range is |w| < 1/2
        assert counting(phi, 0.9).value == 0.0


class TestCountingAvg:
    def test_d1_delegates(self):
        phi = SelfMap(Polynomial([0.0, 0.0, 1.0]))
        assert counting_avg(phi, 0.5) == pytest.approx(np.log(2.0), abs=1e-12)

    def test_first_coordinate_closed_form(self):
        # phi(z1, z2) = z1: slice counting log(|zeta_1|/|w|) when
        # |w| < |zeta_1|; averaging gives (u - 1 - log u)/2 with u = |w|^2
        phi = SelfMap(MultiPolynomial(2, {(1, 0): 1.0}))
        sph = sphere_uniform(2, 50_000, seed=0)
        for w in (0.3, 0.5 + 0.2j, 0.8j):
            u = abs(w) ** 2
            expected = (u - 1 - np.log(u)) / 2.0
            got = counting_avg(phi, w, sph)
            assert got == pytest.approx(expected, abs=5e-3)


class TestLittlewood:
    def test_inner_map_equality(self):
        # automorphisms meet the Littlewood bound with equality
        phi = SelfMap(BlaschkeProduct([(0.5, 1)]))
        for w in (0.3, -0.2 + 0.4j, 0.7j):
            rep = littlewood_bound(phi, w)
            assert rep.satisfied
            assert rep.margin == pytest.approx(0.0, abs=1e-10)

    def test_strict_inequality_non_inner(self):
        phi = SelfMap(Polynomial([0.2, 0.5]))
        rep = littlewood_bound(phi, 0.4)
        assert rep.satisfied
        assert rep.margin > 1e-3


class TestIdentities:
    def test_littlewood_paley_random(self, rng):
        for _ in range(5):
            c = rng.normal(size=7) + 1j * rng.normal(size=7)
            rep = littlewood_paley_verify(Polynomial(c))
            assert rep.rel_error < 1e-8

    def test_stanton_half_map(self):
        f = Polynomial([1.0, 2.0, 0.0, 1.0])
        phi = SelfMap(Polynomial([0.0, 0.5]))
        rep = stanton_verify(f, phi)
        assert rep.rel_error < 1e-8
        # lhs is the exact composition norm
        assert rep.lhs == pytest.approx(hardy2_norm(f.compose(phi.body)) ** 2,
                                        rel=1e-14)

    def test_stanton_blaschke(self):
        f = Polynomial([0.0, 1.0, 0.5j])
        phi = SelfMap(BlaschkeProduct([(0.4, 1), (-0.2 + 0.3j, 1)]))
        rep = stanton_verify(f, phi)
        assert rep.rel_error < 1e-6

    def test_stanton_composition_norm_grows(self):
        # sanity: ||f o phi|| >= |f(phi(0))|
        f = Polynomial([0.3, 1.0])
        phi = SelfMap(Polynomial([0.1, 0.0, 0.7]))
        rep = stanton_verify(f, phi)
        assert rep.lhs >= abs(f(phi.phi0)) ** 2 - 1e-12


class TestSubmean:
    def test_harmonic_region_equality(self):
        # counting function of z^2 is -log|w|, harmonic away from 0
        phi = SelfMap(Polynomial([0.0, 0.0, 1.0]))
        rep = submean_check(phi, 0.5, 0.2)
        assert rep.satisfied
        assert rep.mean_value == pytest.approx(rep.center_value,
                                               abs=1e-6)

    def test_blaschke_submean(self):
        phi = SelfMap(BlaschkeProduct([(0.3, 1), (-0.4j, 1)]))
        rep = submean_check(phi, 0.5 + 0.1j, 0.15)
        assert rep.satisfied

    def test_disk_must_stay_inside(self):
        phi = SelfMap(Polynomial([0.0, 0.0, 1.0]))
        with pytest.raises(DiskNotInDomainError):
            submean_check(phi, 0.9, 0.2)

    def test_disk_must_avoid_base_point(self):
        phi = SelfMap(Polynomial([0.0, 0.0, 1.0]))
        with pytest.raises(BasePointInDiskError):
            submean_check(phi, 0.1, 0.2)
