"""Polynomial kernels with the compiled backend preferred at import time.

``BACKEND`` names the implementation in use (``"cython"`` or ``"python"``).
Both implementations live side by side so tests and the benchmark can run
them against each other.
"""
from __future__ import annotations

from alexgauss import _kernels_py

try:
    from alexgauss import _kernels as _impl
except ImportError:  # extension not built
    _impl = _kernels_py

BACKEND: str = _impl.BACKEND

mul = _impl.mul
divexact = _impl.divexact
det = _impl.det
gcd = _impl.gcd


def available_backends():
    """Return a mapping backend name -> kernel module for every importable backend."""
    out = {"python": _kernels_py}
    if _impl is not _kernels_py:
        out[_impl.BACKEND] = _impl
    return out
