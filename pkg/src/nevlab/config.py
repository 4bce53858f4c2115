"""Experiment configuration: load, validate with field paths, build objects.

Configs are JSON documents with a ``version`` field ("1").  A TOML
reader is used for ``.toml`` paths when the interpreter ships
``tomllib``; JSON is the primary format.  Validation follows
parse-then-validate: every constructed object passes its own type
invariants before any computation starts, and every rejection names the
offending field path.
"""

import json
import os
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConfigError, NevlabError
from .inner import BlaschkeProduct, InnerFunction, SingularInner
from .nevanlinna import SelfMap
from .numerics import MultiPolynomial, Polynomial

TASKS = (
    "verify-lp",
    "verify-stanton",
    "counting",
    "criterion",
    "kernel",
    "basis",
    "cohn",
    "probe",
)

VERDICTS = ("Compact", "NonCompact", "Inconclusive")


def load_config_file(path: str) -> dict:
    """Read a JSON (or, where supported, TOML) config document."""
    if not os.path.exists(path):
        raise ConfigError("config file not found: %s" % path, field="--config")
    if path.endswith(".toml"):
        try:
            import tomllib
        except ImportError:
            raise ConfigError(
                "TOML configs need Python >= 3.11; use JSON", field="--config"
            )
        with open(path, "rb") as fh:
            try:
                return tomllib.load(fh)
            except tomllib.TOMLDecodeError as exc:
                raise ConfigError("invalid TOML: %s" % exc, field="--config")
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("invalid JSON: %s" % exc, field="--config")


def _as_complex(value, path):
    if isinstance(value, (int, float)):
        return complex(value)
    if (isinstance(value, (list, tuple)) and len(value) == 2
            and all(isinstance(x, (int, float)) for x in value)):
        return complex(value[0], value[1])
    raise ConfigError("expected a number or [re, im] pair", field=path)


def _as_float(value, path, lo=None, hi=None, lo_open=False, hi_open=False):
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError("expected a real number", field=path)
    v = float(value)
    if lo is not None and (v <= lo if lo_open else v < lo):
        raise ConfigError("value %g out of range" % v, field=path)
    if hi is not None and (v >= hi if hi_open else v > hi):
        raise ConfigError("value %g out of range" % v, field=path)
    return v


def _as_int(value, path, lo=None, hi=None):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError("expected an integer", field=path)
    if lo is not None and value < lo:
        raise ConfigError("integer %d below minimum %d" % (value, lo), field=path)
    if hi is not None and value > hi:
        raise ConfigError("integer %d above maximum %d" % (value, hi), field=path)
    return value


def _require(data, key, path):
    if key not in data:
        raise ConfigError("missing required field", field="%s.%s" % (path, key)
                          if path else key)
    return data[key]


def _build_polynomial(value, path):
    if isinstance(value, dict):
        value = _require(value, "coefficients", path)
        path = "%s.coefficients" % path
    if not isinstance(value, list) or not value:
        raise ConfigError("expected a nonempty coefficient list", field=path)
    return Polynomial([_as_complex(c, "%s[%d]" % (path, i))
                       for i, c in enumerate(value)])


def _build_blaschke(data, path):
    if not isinstance(data, dict):
        raise ConfigError("expected an object with 'zeros'", field=path)
    zeros_raw = _require(data, "zeros", path)
    if not isinstance(zeros_raw, list) or not zeros_raw:
        raise ConfigError("expected a nonempty list", field="%s.zeros" % path)
    zeros = []
    for i, item in enumerate(zeros_raw):
        zpath = "%s.zeros[%d]" % (path, i)
        if isinstance(item, dict):
            a = _as_complex(_require(item, "zero", zpath), "%s.zero" % zpath)
            m = _as_int(item.get("multiplicity", 1), "%s.multiplicity" % zpath,
                        lo=1)
        else:
            a = _as_complex(item, zpath)
            m = 1
        zeros.append((a, m))
    gamma = _as_complex(data.get("gamma", 1.0), "%s.gamma" % path)
    try:
        return BlaschkeProduct(zeros, gamma)
    except ValueError as exc:
        raise ConfigError(str(exc), field="%s.zeros" % path)


def _build_singular(atoms_raw, path):
    if not isinstance(atoms_raw, list) or not atoms_raw:
        raise ConfigError("expected a nonempty list of [point, mass] pairs",
                          field=path)
    atoms = []
    for i, item in enumerate(atoms_raw):
        apath = "%s[%d]" % (path, i)
        if isinstance(item, dict):
            zeta = _as_complex(_require(item, "point", apath),
                               "%s.point" % apath)
            s = _as_float(_require(item, "mass", apath), "%s.mass" % apath,
                          lo=0.0, lo_open=True)
        elif isinstance(item, (list, tuple)) and len(item) == 2:
            zeta = _as_complex(item[0], "%s[0]" % apath)
            s = _as_float(item[1], "%s[1]" % apath, lo=0.0, lo_open=True)
        else:
            raise ConfigError("expected [point, mass] or {point, mass}",
                              field=apath)
        atoms.append((zeta, s))
    try:
        return SingularInner(atoms)
    except ValueError as exc:
        raise ConfigError(str(exc), field=path)


def build_theta(data, path="theta"):
    """Inner function from {'blaschke': {...}?, 'atoms': [...]?}."""
    if not isinstance(data, dict):
        raise ConfigError("expected an object", field=path)
    blaschke = None
    singular = None
    if data.get("blaschke") is not None:
        blaschke = _build_blaschke(data["blaschke"], "%s.blaschke" % path)
    if data.get("atoms") is not None:
        singular = _build_singular(data["atoms"], "%s.atoms" % path)
    if blaschke is None and singular is None:
        raise ConfigError("need 'blaschke' zeros, 'atoms', or both", field=path)
    if singular is None:
        return blaschke
    if blaschke is None:
        return singular
    return InnerFunction(blaschke=blaschke, singular=singular)


def build_phi(data, path="phi", seed=0):
    """SelfMap from {'kind': 'polynomial'|'blaschke', ...}."""
    if not isinstance(data, dict):
        raise ConfigError("expected an object", field=path)
    kind = _require(data, "kind", path)
    if kind == "polynomial":
        d = _as_int(data.get("d", 1), "%s.d" % path, lo=1)
        if d == 1:
            body = _build_polynomial(
                _require(data, "coefficients", path),
                "%s.coefficients" % path,
            )
        else:
            terms_raw = _require(data, "terms", path)
            if not isinstance(terms_raw, list) or not terms_raw:
                raise ConfigError("expected a nonempty term list",
                                  field="%s.terms" % path)
            terms = {}
            for i, item in enumerate(terms_raw):
                tpath = "%s.terms[%d]" % (path, i)
                if not isinstance(item, dict):
                    raise ConfigError("expected {alpha, coeff}", field=tpath)
                alpha = _require(item, "alpha", tpath)
                if (not isinstance(alpha, list) or len(alpha) != d
                        or not all(isinstance(a, int) and a >= 0
                                   for a in alpha)):
                    raise ConfigError(
                        "alpha must be %d nonnegative integers" % d,
                        field="%s.alpha" % tpath,
                    )
                coeff = _as_complex(_require(item, "coeff", tpath),
                                    "%s.coeff" % tpath)
                terms[tuple(alpha)] = terms.get(tuple(alpha), 0.0) + coeff
            try:
                body = MultiPolynomial(d, terms)
            except ValueError as exc:
                raise ConfigError(str(exc), field="%s.terms" % path)
    elif kind == "blaschke":
        body = _build_blaschke(data, path)
    else:
        raise ConfigError("kind must be 'polynomial' or 'blaschke'",
                          field="%s.kind" % path)
    try:
        return SelfMap(body, seed=seed)
    except NevlabError as exc:
        raise ConfigError(str(exc), field=path)
    except ValueError as exc:
        raise ConfigError(str(exc), field=path)


@dataclass
class Experiment:
    """A validated, ready-to-run experiment."""

    task: str
    raw: dict
    params: dict = field(default_factory=dict)
    phi: Optional[SelfMap] = None
    theta: object = None
    f: Optional[Polynomial] = None
    out: Optional[str] = None
    fmt: str = "json"


def build_experiment(data, *, task_override=None, seed_override=None,
                     tol_override=None, out_override=None) -> Experiment:
    """Validate a config document and construct all referenced objects."""
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object", field="")
    version = data.get("version")
    if version != "1":
        raise ConfigError("unsupported or missing version (expected \"1\")",
                          field="version")
    task = data.get("task", task_override)
    if task_override is not None and data.get("task") is not None \
            and data["task"] != task_override:
        raise ConfigError(
            "task %r in config conflicts with %r on the command line"
            % (data["task"], task_override),
            field="task",
        )
    if task not in TASKS:
        raise ConfigError("task must be one of %s" % ", ".join(TASKS),
                          field="task")

    seed = seed_override if seed_override is not None else _as_int(
        data.get("seed", 0), "seed")
    params = {"seed": seed}

    phi = None
    theta = None
    f = None

    if task in ("verify-stanton", "counting", "criterion"):
        phi = build_phi(_require(data, "phi", ""), "phi", seed=seed)
    if task in ("criterion", "kernel", "basis", "cohn", "probe"):
        theta = build_theta(_require(data, "theta", ""), "theta")
    if task in ("verify-lp", "verify-stanton", "cohn"):
        f = _build_polynomial(_require(data, "f", ""), "f")

    if task == "verify-lp":
        params["tol"] = _as_float(data.get("tol", 1e-8), "tol", lo=0.0,
                                  lo_open=True)
    elif task == "verify-stanton":
        default_tol = 1e-6 if phi.d == 1 else 1e-2
        params["tol"] = _as_float(data.get("tol", default_tol), "tol",
                                  lo=0.0, lo_open=True)
        params["sphere_n"] = _as_int(data.get("sphere_n", 20_000), "sphere_n",
                                     lo=16)
    elif task == "counting":
        points = data.get("points")
        radii = data.get("radii")
        if (points is None) == (radii is None):
            raise ConfigError(
                "counting needs exactly one of 'points' or 'radii'",
                field="points",
            )
        if points is not None:
            if not isinstance(points, list) or not points:
                raise ConfigError("expected a nonempty list", field="points")
            params["points"] = [
                _as_complex(p, "points[%d]" % i) for i, p in enumerate(points)
            ]
        else:
            params["radii"] = _radii_list(radii, "radii")
            params["angular_count"] = _as_int(
                data.get("angular_count", 64), "angular_count", lo=4)
        params["sphere_n"] = _as_int(data.get("sphere_n", 20_000), "sphere_n",
                                     lo=16)
    elif task == "criterion":
        params["radii"] = _radii_list(
            data.get("radii", [0.9, 0.99, 0.995, 0.999]), "radii")
        params["angular_count"] = _as_int(
            data.get("angular_count", 256), "angular_count", lo=8)
        params["tol"] = _as_float(data.get("tol", 0.05), "tol", lo=0.0,
                                  lo_open=True)
        params["sphere_n"] = _as_int(data.get("sphere_n", 20_000), "sphere_n",
                                     lo=16)
        expect = data.get("expect")
        if expect is not None and expect not in VERDICTS:
            raise ConfigError("expect must be one of %s" % ", ".join(VERDICTS),
                              field="expect")
        params["expect"] = expect
    elif task == "kernel":
        params["w"] = _as_complex(_require(data, "w", ""), "w")
        if abs(params["w"]) >= 1.0:
            raise ConfigError("w must lie in the open unit disk", field="w")
        pts = data.get("points")
        if pts is not None:
            if not isinstance(pts, list):
                raise ConfigError("expected a list of points", field="points")
            params["points"] = [
                _as_complex(p, "points[%d]" % i) for i, p in enumerate(pts)
            ]
            for i, z in enumerate(params["points"]):
                if abs(z) >= 1.0:
                    raise ConfigError("point must lie in the open unit disk",
                                      field="points[%d]" % i)
    elif task == "basis":
        if not isinstance(theta, BlaschkeProduct):
            raise ConfigError(
                "basis task needs a pure finite Blaschke theta (no atoms)",
                field="theta",
            )
        params["tol_gram"] = 1e-10
        params["tol_membership"] = 1e-9
    elif task == "cohn":
        params["p"] = _as_float(_require(data, "p", ""), "p", lo=0.0, hi=1.0,
                                lo_open=True, hi_open=True)
    elif task == "probe":
        params["level"] = _as_float(_require(data, "level", ""), "level",
                                    lo=0.0, hi=1.0, lo_open=True, hi_open=True)
        params["grid_n"] = _as_int(data.get("grid_n", 256), "grid_n", lo=64)

    if tol_override is not None:
        params["tol"] = float(tol_override)

    out = out_override if out_override is not None else data.get("out")
    if out is not None and not isinstance(out, str):
        raise ConfigError("out must be a path string", field="out")
    fmt = data.get("format")
    if fmt is None:
        fmt = "csv" if task == "counting" else "json"
    if fmt not in ("csv", "json"):
        raise ConfigError("format must be 'csv' or 'json'", field="format")
    if task == "counting" and fmt != "csv":
        raise ConfigError("counting emits CSV tables", field="format")
    if task != "counting" and fmt != "json":
        raise ConfigError("task %s emits JSON" % task, field="format")

    return Experiment(task=task, raw=data, params=params, phi=phi,
                      theta=theta, f=f, out=out, fmt=fmt)


def _radii_list(value, path):
    if not isinstance(value, list) or len(value) < 1:
        raise ConfigError("expected a nonempty list of radii", field=path)
    radii = [_as_float(r, "%s[%d]" % (path, i), lo=0.0, hi=1.0, lo_open=True,
                       hi_open=True) for i, r in enumerate(value)]
    if any(b <= a for a, b in zip(radii[:-1], radii[1:])):
        raise ConfigError("radii must strictly increase", field=path)
    return radii
