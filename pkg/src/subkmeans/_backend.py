"""Pick the compiled kernels when available, else the numpy fallback.

Set ``SUBKMEANS_BACKEND=python`` to force the fallback.
"""

import importlib
import logging
import os

logger = logging.getLogger(__name__)

_NAMES = {"cython": "subkmeans._kernels", "python": "subkmeans._fallback"}


def load(name):
    """Import one backend module by name (``"cython"`` or ``"python"``)."""
    if name not in _NAMES:
        raise ValueError(f"unknown backend {name!r}; expected one of {sorted(_NAMES)}")
    return importlib.import_module(_NAMES[name])


def available():
    names = []
    for name in _NAMES:
        try:
            load(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select():
    wanted = os.environ.get("SUBKMEANS_BACKEND", "").strip().lower()
    if wanted == "python":
        return "python", load("python")
    try:
        return "cython", load("cython")
    except ImportError:
        if wanted == "cython":
            raise
        logger.info("compiled kernels unavailable, using numpy fallback")
        return "python", load("python")


BACKEND, kernels = _select()
