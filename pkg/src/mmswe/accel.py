"""Kernel backend selection.

Hot inner loops have two interchangeable implementations: numba @njit loops
(_kernels_numba) and pure-numpy vectorized code (_kernels_numpy).  The numba
path is used when numba imports successfully, unless the environment variable
``MMSWE_NUMBA`` is set to ``0`` (any other value forces / keeps it on).
Both paths compute the same quantities; benchmarks/kernel_benchmark.py
compares them.
"""

import os

_flag = os.environ.get("MMSWE_NUMBA", "").strip()

if _flag == "0":
    HAVE_NUMBA = False
else:
    try:
        import numba  # noqa: F401

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        if _flag == "1":
            raise
        HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
