"""Kernel backend selection.

The compiled Cython kernels are preferred; the numpy fallback is used when
the extension is unavailable or when ``WMRECALL_BACKEND=python`` is set.
"""

import os

from . import _kernels_py

if os.environ.get("WMRECALL_BACKEND", "").lower() == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py


def active_backend() -> str:
    """Name of the kernel implementation in use: 'cython' or 'python'."""
    return _impl.backend_name()


reduced_trajectory = _impl.reduced_trajectory
network_trajectory = _impl.network_trajectory
