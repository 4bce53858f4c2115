"""Built-in experiment catalog: named (phi, theta) pairs with known verdicts.

Each entry is a complete, runnable criterion config.  ``nevlab
--list-catalog`` prints the table; tests and docs reuse the configs so
the canonical examples live in exactly one place.
"""

from dataclasses import dataclass

_RADII = [0.9, 0.99, 0.995, 0.999]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    summary: str
    expect: str
    config: dict


def _entry(name, summary, expect, phi, theta, **extra):
    cfg = {
        "version": "1",
        "task": "criterion",
        "phi": phi,
        "theta": theta,
        "radii": list(_RADII),
        "tol": 0.05,
        "expect": expect,
    }
    cfg.update(extra)
    return CatalogEntry(name=name, summary=summary, expect=expect, config=cfg)


_ATOM_AT_ONE = {"atoms": [[[1.0, 0.0], 1.0]]}


def catalog():
    """All built-in entries, in a fixed, documented order."""
    return [
        _entry(
            "half-map-atom",
            "phi(z) = z/2 against the unit-mass atom at 1",
            "Compact",
            {"kind": "polynomial", "coefficients": [0.0, 0.5]},
            _ATOM_AT_ONE,
        ),
        _entry(
            "square-map-atom",
            "phi(z) = z^2 against the unit-mass atom at 1",
            "NonCompact",
            {"kind": "polynomial", "coefficients": [0.0, 0.0, 1.0]},
            _ATOM_AT_ONE,
        ),
        _entry(
            "identity-map-z4",
            "phi(z) = z against theta(z) = z^4",
            "Compact",
            {"kind": "polynomial", "coefficients": [0.0, 1.0]},
            {"blaschke": {"zeros": [{"zero": [0.0, 0.0], "multiplicity": 4}]}},
        ),
        _entry(
            "identity-map-atom",
            "phi(z) = z against the unit-mass atom at 1",
            "NonCompact",
            {"kind": "polynomial", "coefficients": [0.0, 1.0]},
            _ATOM_AT_ONE,
        ),
        _entry(
            "automorphism-atom",
            "disk automorphism with zero at 1/2 against the atom at 1",
            "NonCompact",
            {"kind": "blaschke", "zeros": [[0.5, 0.0]]},
            _ATOM_AT_ONE,
        ),
        _entry(
            "ball-slice-first-coord",
            "first-coordinate map on the two-ball against the atom at 1",
            "Compact",
            {
                "kind": "polynomial",
                "d": 2,
                "terms": [{"alpha": [1, 0], "coeff": [1.0, 0.0]}],
            },
            _ATOM_AT_ONE,
            angular_count=64,
            sphere_n=20_000,
        ),
    ]


def catalog_entry(name):
    for entry in catalog():
        if entry.name == name:
            return entry
    raise KeyError(name)
