"""Backend selection for the compiled kernels.

The environment variable ``NEVLAB_BACKEND`` picks the implementation of
the hot loops:

* ``auto``  (default): use numba when it imports, else pure numpy;
* ``numba``: require numba, fail loudly if it is missing;
* ``numpy``: force the pure-numpy fallbacks even when numba is present.

The flag is read once at import time.  Both implementations produce
identical results; the choice only affects speed.
"""

import os

_raw = os.environ.get("NEVLAB_BACKEND", "auto").strip().lower()
if _raw not in ("auto", "numba", "numpy"):
    raise ValueError(
        "NEVLAB_BACKEND must be one of 'auto', 'numba', 'numpy', got %r" % _raw
    )

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

if _raw == "numpy":
    USE_NUMBA = False
elif _raw == "numba":
    if not HAVE_NUMBA:
        raise ImportError("NEVLAB_BACKEND=numba but numba is not installed")
    USE_NUMBA = True
else:
    USE_NUMBA = HAVE_NUMBA

BACKEND = "numba" if USE_NUMBA else "numpy"
