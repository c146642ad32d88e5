"""Backend selection for the hot kernels.

The compiled extension ``_ckernels`` is used when it imports cleanly; the
numpy twin in ``_pykernels`` is the fallback.  Setting the environment
variable ``ZETAWORK_PURE_PYTHON=1`` forces the fallback (useful for
benchmarks and for checking that both backends agree).
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNEL_NAMES = (
    "dirichlet_partial",
    "rs_main",
    "unimodular_sum",
    "weyl_parts",
    "divisor_counts",
    "det_partition",
    "bessel_kir",
)


def _select():
    if _ckernels is not None and os.environ.get("ZETAWORK_PURE_PYTHON", "") in ("", "0"):
        return _ckernels, "compiled"
    return _pykernels, "python"


_impl, BACKEND = _select()

dirichlet_partial = _impl.dirichlet_partial
rs_main = _impl.rs_main
unimodular_sum = _impl.unimodular_sum
weyl_parts = _impl.weyl_parts
divisor_counts = _impl.divisor_counts
det_partition = _impl.det_partition
bessel_kir = _impl.bessel_kir


def backends():
    """Map of available backend name -> kernel module."""
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["compiled"] = _ckernels
    return out
