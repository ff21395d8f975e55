"""Pick the link-search backend: compiled if importable, else pure Python.

Set ``QHVERMA_PURE=1`` to force the pure-Python kernel.
"""
import os

from . import _linkcore_py

BACKEND = "python"
search = _linkcore_py.search

if os.environ.get("QHVERMA_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._ext import _linkcore as _compiled
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        search = _compiled.search


def backends():
    """Available backends as a name -> search function mapping."""
    out = {"python": _linkcore_py.search}
    try:
        from ._ext import _linkcore as compiled
    except ImportError:
        return out
    out["cython"] = compiled.search
    return out
