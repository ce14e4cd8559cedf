"""Execution backend selection for the simulation kernel.

The hot event loop is written once, as plain functions over numpy arrays,
so the same source can run two ways:

* ``numba``  -- every kernel function is compiled with :func:`numba.njit`
  (the default whenever numba is importable);
* ``python`` -- the identical functions run under the plain interpreter.

Set ``CLOCKSIM_BACKEND=python`` or ``CLOCKSIM_BACKEND=numba`` before the
package is imported to force a backend; the default ``auto`` picks numba
when available.  The choice is fixed at import time, which is why
``benchmarks/compare_backends.py`` spawns one subprocess per backend.
"""

import os

BACKEND_ENV_VAR = "CLOCKSIM_BACKEND"

_requested = os.environ.get(BACKEND_ENV_VAR, "auto").strip().lower()
if _requested not in ("auto", "numba", "python"):
    raise RuntimeError(
        f"{BACKEND_ENV_VAR} must be 'auto', 'numba' or 'python', got {_requested!r}"
    )

USING_NUMBA = False
if _requested in ("auto", "numba"):
    try:
        from numba import njit as _njit

        USING_NUMBA = True
    except ImportError:
        if _requested == "numba":
            raise RuntimeError(
                f"{BACKEND_ENV_VAR}=numba but numba is not importable"
            ) from None

BACKEND = "numba" if USING_NUMBA else "python"

if USING_NUMBA:

    def jit(fn):
        """Compile ``fn`` with numba in nopython mode, caching to disk."""
        return _njit(cache=True)(fn)

else:

    def jit(fn):
        """No-op stand-in: the kernel runs under the plain interpreter."""
        return fn
