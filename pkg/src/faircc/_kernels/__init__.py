"""Partition-search kernel with a compiled fast path.

``best_partition`` resolves to the Cython extension when it was built, and
to the pure-Python twin otherwise. ``IMPLEMENTATION`` records which one is
active; ``get_implementation`` exposes both for parity tests and benchmarks.
"""

from . import _search_py

try:
    from . import _search as _impl

    IMPLEMENTATION = "cython"
except ImportError:  # extension not built; pure-Python fallback
    _impl = _search_py
    IMPLEMENTATION = "python"

best_partition = _impl.best_partition


def get_implementation(name):
    """Return the ``best_partition`` callable for 'cython' or 'python'."""
    if name == "python":
        return _search_py.best_partition
    if name == "cython":
        if IMPLEMENTATION != "cython":
            raise ImportError("compiled kernel is not available")
        return _impl.best_partition
    raise ValueError(f"unknown kernel implementation {name!r}")
