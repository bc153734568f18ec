"""Kernel backend selection.

The compiled extension is preferred.  Set ``RELAXEULER_BACKEND=python`` to
force the numpy implementation, e.g. for debugging or comparison.
"""

import os

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

from . import _pykernels


def available():
    return ["cython", "python"] if _core is not None else ["python"]


def load(name=None):
    name = name or os.environ.get("RELAXEULER_BACKEND") or ("cython" if _core is not None else "python")
    if name == "python":
        return _pykernels
    if name == "cython":
        if _core is None:
            raise ImportError("compiled kernels are not built; reinstall the package or use backend 'python'")
        return _core
    raise ValueError(f"unknown backend {name!r}")


def default_name():
    return "python" if load() is _pykernels else "cython"
