import pytest

from nevlab.catalog import catalog, catalog_entry
from nevlab.config import build_experiment, build_phi, build_theta
from nevlab.errors import ConfigError
from nevlab.inner import BlaschkeProduct, InnerFunction, SingularInner


def _base(task, **extra):
    cfg = {"version": "1", "task": task}
    cfg.update(extra)
    return cfg


class TestValidation:
    def test_missing_version(self):
        with pytest.raises(ConfigError) as e:
            build_experiment({"task": "verify-lp", "f": [1.0]})
        assert e.value.field == "version"

    def test_unknown_task(self):
        with pytest.raises(ConfigError) as e:
            build_experiment(_base("frobnicate"))
        assert e.value.field == "task"

    def test_missing_required_field_path(self):
        with pytest.raises(ConfigError) as e:
            build_experiment(_base("verify-lp"))
        assert e.value.field == "f"

    def test_nested_field_path(self):
        cfg = _base("verify-lp", f=[1.0, [0.5], 2.0])
        with pytest.raises(ConfigError) as e:
            build_experiment(cfg)
        assert e.value.field == "f[1]"

    def test_phi_term_path(self):
        cfg = _base("counting", points=[[0.1, 0.0]],
                    phi={"kind": "polynomial", "d": 2,
                         "terms": [{"alpha": [1], "coeff": 1.0}]})
        with pytest.raises(ConfigError) as e:
            build_experiment(cfg)
        assert e.value.field == "phi.terms[0].alpha"

    def test_task_cli_conflict(self):
        cfg = _base("verify-lp", f=[0.0, 1.0])
        with pytest.raises(ConfigError) as e:
            build_experiment(cfg, task_override="cohn")
        assert e.value.field == "task"

    def test_radii_must_increase(self):
        cfg = _base("criterion", radii=[0.9, 0.8, 0.99, 0.995],
                    phi={"kind": "polynomial", "coefficients": [0.0, 0.5]},
                    theta={"atoms": [[[1.0, 0.0], 1.0]]})
        with pytest.raises(ConfigError) as e:
            build_experiment(cfg)
        assert e.value.field == "radii"

    def test_bad_expect(self):
        cfg = catalog_entry("half-map-atom").config.copy()
        cfg["expect"] = "Maybe"
        with pytest.raises(ConfigError) as e:
            build_experiment(cfg)
        assert e.value.field == "expect"

    def test_basis_needs_pure_blaschke(self):
        cfg = _base("basis", theta={"atoms": [[[1.0, 0.0], 1.0]]})
        with pytest.raises(ConfigError) as e:
            build_experiment(cfg)
        assert e.value.field == "theta"

    def test_kernel_point_in_disk(self):
        cfg = _base("kernel", w=[1.0, 0.0],
                    theta={"blaschke": {"zeros": [[0.5, 0.0]]}})
        with pytest.raises(ConfigError) as e:
            build_experiment(cfg)
        assert e.value.field == "w"

    def test_cohn_p_range(self):
        cfg = _base("cohn", p=1.0, f=[0.0, 1.0],
                    theta={"blaschke": {"zeros": [[0.5, 0.0]]}})
        with pytest.raises(ConfigError) as e:
            build_experiment(cfg)
        assert e.value.field == "p"


class TestBuilders:
    def test_theta_forms(self):
        t = build_theta({"blaschke": {"zeros": [[0.5, 0.0]]}})
        assert isinstance(t, BlaschkeProduct)
        t = build_theta({"atoms": [[[1.0, 0.0], 1.0]]})
        assert isinstance(t, SingularInner)
        t = build_theta({"blaschke": {"zeros": [[0.5, 0.0]]},
                         "atoms": [[[0.0, 1.0], 0.5]]})
        assert isinstance(t, InnerFunction)

    def test_zero_multiplicity(self):
        t = build_theta({"blaschke": {
            "zeros": [{"zero": [0.0, 0.0], "multiplicity": 4}]}})
        assert t.degree == 4

    def test_scalar_complex_shorthand(self):
        t = build_theta({"blaschke": {"zeros": [0.5]}})
        assert t.degree == 1

    def test_phi_kinds(self):
        p = build_phi({"kind": "polynomial", "coefficients": [0.0, 0.5]})
        assert p.d == 1
        b = build_phi({"kind": "blaschke", "zeros": [[0.5, 0.0]]})
        assert b.d == 1
        m = build_phi({"kind": "polynomial", "d": 2,
                       "terms": [{"alpha": [1, 0], "coeff": 1.0}]})
        assert m.d == 2

    def test_overrides(self):
        cfg = _base("verify-lp", f=[0.0, 1.0], tol=1e-8, seed=5)
        exp = build_experiment(cfg, seed_override=9, tol_override=0.5,
                               out_override="x.json")
        assert exp.params["seed"] == 9
        assert exp.params["tol"] == 0.5
        assert exp.out == "x.json"

    def test_defaults(self):
        cfg = _base("criterion",
                    phi={"kind": "polynomial", "coefficients": [0.0, 0.5]},
                    theta={"atoms": [[[1.0, 0.0], 1.0]]})
        exp = build_experiment(cfg)
        assert exp.params["radii"] == [0.9, 0.99, 0.995, 0.999]
        assert exp.params["angular_count"] == 256
        assert exp.params["tol"] == 0.05


class TestCatalog:
    def test_all_entries_build(self):
        for entry in catalog():
            exp = build_experiment(dict(entry.config))
            assert exp.task == "criterion"
            assert exp.params["expect"] == entry.expect

    def test_names_unique(self):
        names = [e.name for e in catalog()]
        assert len(names) == len(set(names))

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            catalog_entry("no-such-entry")
