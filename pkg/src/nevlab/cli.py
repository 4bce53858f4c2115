"""Command-line driver.

``nevlab <task> --config <path> [--out PATH] [--seed N] [--tol X]`` runs
one validated experiment and exits 0 when every declared check passes,
1 on a check failure, 2 on a config problem, and 3 when an iterative
computation fails to converge.  Outputs are written atomically and are
byte-identical across repeated runs of the same config.
"""

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import catalog as _catalog
from .config import TASKS, build_experiment, load_config_file
from .criterion import (
    compactness_verdict,
    criterion_profile,
    one_component_probe,
)
from .errors import ConfigError, NevlabError, NoConvergenceError
from .model_space import cohn_functional, kernel_eval, kernel_point, tm_basis
from .nevanlinna import (
    counting,
    counting_avg,
    counting_values,
    littlewood_paley_verify,
    stanton_verify,
)
from .quadrature import sphere_uniform

PROFILE_SKIP = 1e-8


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nevlab",
        description="composition-operator experiments on Hardy spaces",
    )
    parser.add_argument("task", nargs="?", choices=TASKS,
                        help="experiment kind (may also come from the config)")
    parser.add_argument("--config", help="path to a JSON config document")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--tol", type=float,
                        help="override the task tolerance")
    parser.add_argument("--list-catalog", action="store_true",
                        help="print the built-in experiment catalog and exit")
    args = parser.parse_args(argv)

    if args.list_catalog:
        _print_catalog()
        return 0

    try:
        if args.config is None:
            raise ConfigError("--config is required", field="--config")
        data = load_config_file(args.config)
        exp = build_experiment(
            data,
            task_override=args.task,
            seed_override=args.seed,
            tol_override=args.tol,
            out_override=args.out,
        )
    except ConfigError as exc:
        _fail(exc)
        return 2

    try:
        text, passed, converged = _execute(exp)
    except ConfigError as exc:
        _fail(exc)
        return 2
    except NoConvergenceError as exc:
        print("nevlab: did not converge: %s" % exc, file=sys.stderr)
        return 3
    except NevlabError as exc:
        _fail(exc)
        return 2

    _emit(text, exp.out)
    if not converged:
        return 3
    return 0 if passed else 1


def _fail(exc):
    field = getattr(exc, "field", None)
    where = " at '%s'" % field if field else ""
    print("nevlab: config error%s: %s" % (where, exc), file=sys.stderr)


def _print_catalog():
    entries = _catalog.catalog()
    width = max(len(e.name) for e in entries)
    print("%-*s  %-11s  %s" % (width, "name", "expect", "summary"))
    for e in entries:
        print("%-*s  %-11s  %s" % (width, e.name, e.expect, e.summary))


def _emit(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(prefix=".nevlab-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("%.12e" % float(v) for v in row))
    return "\n".join(lines) + "\n"


def _c(z):
    z = complex(z)
    return [z.real, z.imag]


def _execute(exp):
    """Run one experiment; returns (output_text, passed, converged)."""
    handler = _HANDLERS[exp.task]
    return handler(exp)


def _run_verify_lp(exp):
    rep = littlewood_paley_verify(exp.f)
    tol = exp.params["tol"]
    passed = rep.rel_error <= tol
    payload = {
        "task": "verify-lp",
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "abs_error": rep.abs_error,
        "rel_error": rep.rel_error,
        "tol": tol,
        "passed": passed,
    }
    return _json_text(payload), passed, True


def _run_verify_stanton(exp):
    phi = exp.phi
    sphere = None
    if phi.d > 1:
        sphere = sphere_uniform(phi.d, exp.params["sphere_n"],
                                seed=exp.params["seed"])
    rep = stanton_verify(exp.f, phi, sphere=sphere)
    tol = exp.params["tol"]
    passed = rep.rel_error <= tol
    payload = {
        "task": "verify-stanton",
        "d": phi.d,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "abs_error": rep.abs_error,
        "rel_error": rep.rel_error,
        "tol": tol,
        "lhs_rule": rep.details["lhs_rule"],
        "passed": passed,
    }
    return _json_text(payload), passed, True


def _run_counting(exp):
    phi = exp.phi
    sphere = None
    slice_matrix = None
    if phi.d > 1:
        sphere = sphere_uniform(phi.d, exp.params["sphere_n"],
                                seed=exp.params["seed"])
        slice_matrix = phi.slice_matrix(sphere.points)

    if "points" in exp.params:
        header = ["w_re", "w_im", "value"]
        rows = []
        for w in exp.params["points"]:
            if phi.d == 1:
                value = counting(phi, w).value
            else:
                value = counting_avg(phi, w, sphere,
                                     slice_matrix=slice_matrix,
                                     sphere_weights=sphere.weights)
            rows.append((w.real, w.imag, value))
        return _csv_text(header, rows), True, True

    radii = exp.params["radii"]
    n = exp.params["angular_count"]
    angles = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    header = ["r", "theta", "value"]
    rows = []
    for r in radii:
        ws = r * np.exp(1j * angles)
        keep = np.abs(ws - phi.phi0) > PROFILE_SKIP
        if phi.d == 1:
            vals = counting_values(phi, ws[keep])
        else:
            vals = np.array([
                counting_avg(phi, w, sphere, slice_matrix=slice_matrix,
                             sphere_weights=sphere.weights)
                for w in ws[keep]
            ])
        for ang, v in zip(angles[keep], vals):
            rows.append((r, ang, v))
    return _csv_text(header, rows), True, True


def _run_criterion(exp):
    phi = exp.phi
    sq = None
    if phi.d > 1:
        sq = sphere_uniform(phi.d, exp.params["sphere_n"],
                            seed=exp.params["seed"])
    profile = criterion_profile(phi, exp.theta, exp.params["radii"],
                                angular_count=exp.params["angular_count"],
                                sq=sq)
    report = compactness_verdict(profile, exp.params["tol"])
    expect = exp.params.get("expect")
    passed = True if expect is None else report.verdict == expect
    payload = {
        "task": "criterion",
        "profile": profile.to_dict(),
        "verdict": report.verdict,
        "diagnostics": report.diagnostics,
        "expect": expect,
        "passed": passed,
    }
    return _json_text(payload), passed, True


def _run_kernel(exp):
    theta = exp.theta
    w = exp.params["w"]
    kp = kernel_point(theta, w)
    payload = {
        "task": "kernel",
        "w": _c(w),
        "theta_at_w": _c(kp.theta_w),
        "norm": kp.norm,
        "norm_squared": kp.norm ** 2,
    }
    pts = exp.params.get("points")
    if pts is not None:
        values = []
        for z in pts:
            kz = kernel_eval(theta, w, z)
            values.append(_c(z) + _c(kz))
        payload["values"] = values
    return _json_text(payload), True, True


def _run_basis(exp):
    basis = tm_basis(exp.theta)
    gram_error = float(np.max(np.abs(
        basis.gram - np.eye(basis.dim))))
    membership = basis.membership_defects()
    tol_gram = exp.params["tol_gram"]
    tol_membership = exp.params["tol_membership"]
    passed = gram_error <= tol_gram and membership <= tol_membership
    payload = {
        "task": "basis",
        "dim": basis.dim,
        "gram_error": gram_error,
        "membership_defect": membership,
        "tol_gram": tol_gram,
        "tol_membership": tol_membership,
        "passed": passed,
    }
    return _json_text(payload), passed, True


def _run_cohn(exp):
    rep = cohn_functional(exp.f, exp.theta, exp.params["p"])
    payload = {
        "task": "cohn",
        "p": exp.params["p"],
        "value": rep.value,
        "converged": rep.converged,
        "increments": rep.increments,
    }
    return _json_text(payload), rep.converged, rep.converged


def _run_probe(exp):
    rep = one_component_probe(exp.theta, exp.params["level"],
                              grid_n=exp.params["grid_n"])
    payload = {
        "task": "probe",
        "level": exp.params["level"],
        "grid_n": rep.grid_n,
        "connected": rep.connected,
        "component_count": rep.component_count,
        "caveat": rep.caveat,
    }
    return _json_text(payload), True, True


_HANDLERS = {
    "verify-lp": _run_verify_lp,
    "verify-stanton": _run_verify_stanton,
    "counting": _run_counting,
    "criterion": _run_criterion,
    "kernel": _run_kernel,
    "basis": _run_basis,
    "cohn": _run_cohn,
    "probe": _run_probe,
}


if __name__ == "__main__":
    sys.exit(main())
