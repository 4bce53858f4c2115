import numpy as np
import pytest

from nevlab.errors import AtomSingularityError
from nevlab.inner import (
    BlaschkeProduct,
    InnerFunction,
    SingularInner,
    inner_derivative,
    inner_eval,
    radial_modulus_report,
)


def _num_deriv(f, z, h=1e-6):
    return (f(z + h) - f(z - h)) / (2 * h)


class TestBlaschke:
    def test_zeros_map_to_zero(self):
        b = BlaschkeProduct([(0.3 + 0.2j, 1), (-0.5j, 2)])
        assert abs(b(0.3 + 0.2j)) < 1e-14
        assert abs(b(-0.5j)) < 1e-14
        assert b.degree == 3

    def test_unimodular_on_circle(self, rng):
        b = BlaschkeProduct([(0.4, 1), (0.1 - 0.6j, 1)], gamma=np.exp(0.7j))
        z = np.exp(2j * np.pi * rng.random(50))
        assert np.allclose(np.abs(b(z)), 1.0, atol=1e-12)

    def test_contraction_inside(self, rng):
        b = BlaschkeProduct([(0.4, 1), (0.1 - 0.6j, 1)])
        z = 0.95 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
        assert np.all(np.abs(b(z)) < 1.0)

    def test_monomial(self):
        b = BlaschkeProduct([(0.0, 3)])
        z = 0.3 + 0.4j
        assert b(z) == pytest.approx(z ** 3)

    def test_derivative_matches_numeric(self, rng):
        b = BlaschkeProduct([(0.3 + 0.2j, 2), (-0.4, 1)], gamma=1j)
        for z in (0.1, -0.2 + 0.3j, 0.5j):
            assert b.derivative(z) == pytest.approx(_num_deriv(b, z),
                                                    rel=1e-7)

    def test_rational_form_consistent(self, rng):
        b = BlaschkeProduct([(0.3 + 0.2j, 1), (-0.4, 2)], gamma=np.exp(0.3j))
        num, den = b.numerator(), b.denominator()
        z = 0.6 * (rng.normal(size=20) + 1j * rng.normal(size=20))
        z = z / np.maximum(1.0, np.abs(z) / 0.9)
        assert np.allclose(num(z) / den(z), b(z), rtol=1e-12)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            BlaschkeProduct([])
        with pytest.raises(ValueError):
            BlaschkeProduct([(1.2, 1)])
        with pytest.raises(ValueError):
            BlaschkeProduct([(0.3, 0)])
        with pytest.raises(ValueError):
            BlaschkeProduct([(0.3, 1)], gamma=2.0)


class TestSingular:
    def test_modulus_below_one_inside(self, rng):
        s = SingularInner([(1.0, 1.0)])
        z = 0.99 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
        assert np.all(np.abs(s(z)) < 1.0)

    def test_value_at_origin(self):
        # exp(-s) at the origin for a single atom of mass s
        s = SingularInner([(1.0, 1.0)])
        assert s(0.0) == pytest.approx(np.exp(-1.0))

    def test_radial_decay_toward_atom(self):
        s = SingularInner([(1.0, 2.0)])
        mods = [abs(s(r)) for r in (0.9, 0.99, 0.999)]
        assert mods[0] > mods[1] > mods[2]
        assert mods[2] < 1e-100

    def test_radial_limit_away_from_atom(self):
        s = SingularInner([(1.0, 1.0)])
        assert abs(s(-0.999999)) == pytest.approx(1.0, abs=1e-5)

    def test_derivative_matches_numeric(self):
        s = SingularInner([(1.0, 0.5), (-1j, 1.5)])
        for z in (0.2, -0.3 + 0.1j):
            assert s.derivative(z) == pytest.approx(_num_deriv(s, z), rel=1e-7)

    def test_atom_guard(self):
        s = SingularInner([(1.0, 1.0)])
        with pytest.raises(AtomSingularityError):
            s(1.0)
        with pytest.raises(AtomSingularityError):
            s(1.0 - 5e-13)

    def test_rejects_bad_atoms(self):
        with pytest.raises(ValueError):
            SingularInner([])
        with pytest.raises(ValueError):
            SingularInner([(0.5, 1.0)])
        with pytest.raises(ValueError):
            SingularInner([(1.0, -1.0)])
        with pytest.raises(ValueError):
            SingularInner([(1.0, 1.0), (1.0, 2.0)])


class TestInnerFunction:
    def test_product_of_parts(self):
        b = BlaschkeProduct([(0.5, 1)])
        s = SingularInner([(1.0, 1.0)])
        f = InnerFunction(blaschke=b, singular=s)
        z = 0.2 - 0.3j
        assert f(z) == pytest.approx(b(z) * s(z), rel=1e-14)

    def test_derivative_product_rule(self):
        b = BlaschkeProduct([(0.5, 1)])
        s = SingularInner([(1.0, 1.0)])
        f = InnerFunction(blaschke=b, singular=s)
        z = 0.2 - 0.3j
        assert f.derivative(z) == pytest.approx(_num_deriv(f, z), rel=1e-7)

    def test_requires_a_part(self):
        with pytest.raises(ValueError):
            InnerFunction()

    def test_inner_eval_boundary(self):
        b = BlaschkeProduct([(0.5, 1)])
        assert abs(inner_eval(b, 1.0)) == pytest.approx(1.0, abs=1e-14)
        with pytest.raises(ValueError):
            inner_eval(b, 1.1)

    def test_inner_derivative_open_disk_only(self):
        b = BlaschkeProduct([(0.5, 1)])
        inner_derivative(b, 0.99)
        with pytest.raises(ValueError):
            inner_derivative(b, 1.0)

    def test_radial_modulus_report(self):
        s = SingularInner([(1.0, 1.0)])
        rep = radial_modulus_report(s, radii=(0.9, 0.99))
        assert set(rep) == {0.9, 0.99}
        for lo, hi in rep.values():
            assert 0 <= lo <= hi < 1
        # the circle max approaches 1 with r
        assert rep[0.99][1] > rep[0.9][1]
