"""Hot-loop kernels with a compiled core and a pure-numpy fallback.

The compiled extension is preferred when importable; set ``HANKELRKT_PURE=1``
to force the fallback (used by the benchmark and for debugging).
"""

import os

import numpy as np

from . import _sweeps_py

_force_pure = os.environ.get("HANKELRKT_PURE", "").strip() not in ("", "0")

if _force_pure:
    _impl = _sweeps_py
    BACKEND = "python"
else:
    try:
        from . import _sweeps_cy as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _sweeps_py
        BACKEND = "python"


def _as_c128(a, ndim):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.ndim != ndim:
        raise ValueError(f"expected {ndim}-d array, got {a.ndim}-d")
    return a


def garsia_values(modsq, gamma, lams):
    lams = _as_c128(np.atleast_1d(lams), 1)
    return np.asarray(_impl.garsia_values(_as_c128(modsq, 1), _as_c128(gamma, 2), lams))


def kernel_image_values(gamma, lams):
    lams = _as_c128(np.atleast_1d(lams), 1)
    return np.asarray(_impl.kernel_image_values(_as_c128(gamma, 2), lams))
