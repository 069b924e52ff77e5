"""Backend selection for the hot kernels.

The compiled ``_core`` extension is used when it imports; otherwise the
numpy fallback in ``_core_py``. Set ``DIVERGE_PURE_PYTHON=1`` to force the
fallback.
"""
import os

from . import _core_py

core = _core_py
if os.environ.get("DIVERGE_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _core as core  # type: ignore[no-redef]
    except ImportError:  # extension not built
        core = _core_py

BACKEND = core.BACKEND
fill_divergent = core.fill_divergent
fill_blockswap = core.fill_blockswap
fill_residue = core.fill_residue
first_passage = core.first_passage
CliqueKernel = core.CliqueKernel

BACKENDS = {"python": _core_py}
try:
    from . import _core as _compiled

    BACKENDS["cython"] = _compiled
except ImportError:
    pass
