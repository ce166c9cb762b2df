"""Backend selection: compiled speedups when importable, else pure Python.

Set GF2SAT_PURE_PYTHON=1 to force the fallback. Both backends expose the
same three kernels and must agree bit for bit (tests enforce this).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("GF2SAT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py


def backend_name() -> str:
    return _impl.NAME


def available_backends() -> dict[str, object]:
    """Importable backends by name; used by parity tests and benchmarks."""
    out: dict[str, object] = {_kernels_py.NAME: _kernels_py}
    try:
        from . import _speedups
        out[_speedups.NAME] = _speedups
    except ImportError:
        pass
    return out


def walk(*args, **kwargs):
    return _impl.walk(*args, **kwargs)


def ball_search(*args, **kwargs):
    return _impl.ball_search(*args, **kwargs)


def brute_first_model(*args, **kwargs):
    return _impl.brute_first_model(*args, **kwargs)
