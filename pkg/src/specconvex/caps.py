"""Size caps for representation builders.

The size formulas stay checkable at any dimension, but builders refuse
to materialize blocks past the cap. ``SPECCONVEX_CAP`` overrides the
block-order cap.
"""

import os

DEFAULT_BLOCK_ORDER_CAP = 20000
CHAIN_ENUM_CAP = 10_000_000


def block_order_cap():
    raw = os.environ.get("SPECCONVEX_CAP")
    if raw is None or not raw.strip():
        return DEFAULT_BLOCK_ORDER_CAP
    value = int(raw)
    if value <= 0:
        raise ValueError("SPECCONVEX_CAP must be a positive integer")
    return value
