"""Kernel selection: compiled extension when available, pure fallback.

Set CHARTOWER_PURE=1 to force the pure-Python kernel.
"""

from __future__ import annotations

import os

if os.environ.get("CHARTOWER_PURE") == "1":
    from chartower import _kernel_py as _impl
else:
    try:
        from chartower import _kernel_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from chartower import _kernel_py as _impl

KERNEL_NAME = _impl.KERNEL_NAME
mult_table = _impl.mult_table
inverse_table = _impl.inverse_table
closure = _impl.closure
conjugacy_classes = _impl.conjugacy_classes
conjugate_set = _impl.conjugate_set
element_orders = _impl.element_orders
