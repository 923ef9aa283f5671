"""Kernel selector: compiled extension if available, pure Python otherwise.

Set EMCLAB_KERNEL=python to force the fallback (used by the benchmark and by
tests that compare the two implementations).
"""

from __future__ import annotations

import os

if os.environ.get("EMCLAB_KERNEL", "").lower() == "python":
    from emclab import _kernel_py as _impl
else:
    try:
        from emclab import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from emclab import _kernel_py as _impl

IMPL: str = _impl.IMPL
find_matching = _impl.find_matching
greedy_matching = _impl.greedy_matching
downset_max_edges = _impl.downset_max_edges

MAX_KERNEL_VERTICES = 63


def edge_mask(edge) -> int:
    m = 0
    for v in edge:
        m |= 1 << (v - 1)
    return m
