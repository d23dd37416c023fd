"""Kernel backend selection.

The compiled extension is used when built; otherwise the pure-Python
fallback takes over transparently.  Set FUZZCHIP_PURE_KERNELS=1 to force
the fallback (useful for benchmarking and backend-equivalence tests).
Both backends are integer-exact and bit-identical.
"""

import importlib
import os

import numpy as np

from fuzzchip.kernels import _pure

try:
    _fast = importlib.import_module("fuzzchip.kernels._fast")
except ImportError:
    _fast = None

if os.environ.get("FUZZCHIP_PURE_KERNELS") or _fast is None:
    _impl = _pure
    BACKEND = "pure"
else:
    _impl = _fast
    BACKEND = "compiled"

PRODUCT_SCALE = 225  # product kernel memberships are ints scaled by 15*15


def available_backends():
    """Importable backends by name; compiled may be absent."""
    backends = {"pure": _pure}
    if _fast is not None:
        backends["compiled"] = _fast
    return backends


def _prepare(ant, con, levels):
    ant = np.ascontiguousarray(ant, dtype=np.uint8)
    con = np.ascontiguousarray(con, dtype=np.uint8)
    levels = np.ascontiguousarray(levels, dtype=np.uint8)
    if levels.ndim != 2 or levels.shape[1] != ant.shape[1]:
        raise ValueError("levels must be [states, inputs]")
    if (levels > 15).any():
        raise ValueError("input levels outside 0..15")
    return ant, con, levels


def minmax_eval(ant, con, levels, impl=None):
    """Min-max composition over a batch of quantized input states.

    Returns (activations [S, R] uint8 in 0..15,
             memberships [S, outputs, 16] uint8 in 0..15).
    """
    ant, con, levels = _prepare(ant, con, levels)
    impl = impl or _impl
    s = levels.shape[0]
    activations = np.empty((s, ant.shape[0]), dtype=np.uint8)
    memberships = np.empty((s, con.shape[1], 16), dtype=np.uint8)
    impl.minmax_fill(ant, con, levels, activations, memberships)
    return activations, memberships


def product_eval(ant, con, levels, impl=None):
    """Max-product composition over a batch of quantized input states.

    Returns (activations [S, R] uint8 in 0..15,
             memberships [S, outputs, 16] uint8 scaled by PRODUCT_SCALE).
    """
    ant, con, levels = _prepare(ant, con, levels)
    impl = impl or _impl
    s = levels.shape[0]
    activations = np.empty((s, ant.shape[0]), dtype=np.uint8)
    memberships = np.empty((s, con.shape[1], 16), dtype=np.uint8)
    impl.product_fill(ant, con, levels, activations, memberships)
    return activations, memberships
