"""Window-kernel backend selection.

The segmented indicator sieve is the hot loop of the whole package, so it
exists twice: a compiled extension (``btuples._windowsieve``) and a numpy
fallback (``btuples._windowsieve_py``) with identical semantics.  The
extension is preferred when importable; set ``BTUPLES_KERNEL=py`` or
``BTUPLES_KERNEL=cy`` to force one side (``cy`` raises if the extension is
missing).  ``python -m btuples.benchmark`` times the two against each other.
"""

from __future__ import annotations

import os

from . import _windowsieve_py

_FORCED = os.environ.get("BTUPLES_KERNEL", "").strip().lower()
if _FORCED not in ("", "py", "cy"):
    raise ImportError(f"BTUPLES_KERNEL must be 'py' or 'cy', got {_FORCED!r}")

sieve_window = None
BACKEND = None

if _FORCED != "py":
    try:
        from ._windowsieve import sieve_window as _compiled_sieve_window

        sieve_window = _compiled_sieve_window
        BACKEND = "cython"
    except ImportError:
        if _FORCED == "cy":
            raise ImportError(
                "BTUPLES_KERNEL=cy but the compiled kernel is not built; "
                "run 'pip install -e .' (or build_ext --inplace) first"
            ) from None

if sieve_window is None:
    sieve_window = _windowsieve_py.sieve_window
    BACKEND = "python"


def available_backends() -> dict[str, object]:
    """Importable kernel implementations, keyed by backend name."""
    backends: dict[str, object] = {"python": _windowsieve_py.sieve_window}
    try:
        from ._windowsieve import sieve_window as compiled

        backends["cython"] = compiled
    except ImportError:
        pass
    return backends
