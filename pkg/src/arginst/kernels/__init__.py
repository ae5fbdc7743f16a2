"""Numeric inner loops, with a numba backend and a pure-numpy fallback.

The numba backend is used when numba imports cleanly and the environment
variable ``ARGINST_PURE_NUMPY`` is unset or ``0``. Both backends expose the
same functions with identical results; :data:`BACKEND` names the active one.

Formulas reach the kernels as postfix programs: parallel ``int64`` arrays of
opcodes and operands (operand is the atom index for ``OP_ATOM``). Several
programs are concatenated and delimited by an ``offsets`` array of length
``k + 1``. Assignment ``k`` over ``n`` atoms gives atom ``j`` the value of
bit ``n - 1 - j`` of ``k``.

Truth tables are packed ``uint64`` rows: bit ``b`` of word ``w`` holds the
value under assignment ``64 * w + b``. Padding bits are always zero.
"""
from __future__ import annotations

import os

from . import numpy_impl
from .opcodes import OP_AND, OP_ATOM, OP_IFF, OP_IMP, OP_NEG, OP_OR, OP_XOR

__all__ = [
    "BACKEND",
    "OP_ATOM",
    "OP_NEG",
    "OP_AND",
    "OP_OR",
    "OP_IMP",
    "OP_IFF",
    "OP_XOR",
    "get_backend",
    "first_model",
    "models_in_range",
    "truth_table",
    "scan_supports",
    "attack_matrices",
    "stable_masks",
    "conflict_free_masks",
]

_KERNEL_NAMES = (
    "first_model",
    "models_in_range",
    "truth_table",
    "scan_supports",
    "attack_matrices",
    "stable_masks",
    "conflict_free_masks",
)


def _want_numba() -> bool:
    return os.environ.get("ARGINST_PURE_NUMPY", "0").strip().lower() in ("", "0", "false", "no")


def get_backend(name: str):
    """Return the kernel module for ``"numba"`` or ``"numpy"``."""
    if name == "numpy":
        return numpy_impl
    if name == "numba":
        from . import numba_impl

        return numba_impl
    raise ValueError(f"unknown backend {name!r}")


_impl = numpy_impl
BACKEND = "numpy"
if _want_numba():
    try:
        _impl = get_backend("numba")
        BACKEND = "numba"
    except ImportError:  # numba missing or broken: keep the fallback
        pass

first_model = _impl.first_model
models_in_range = _impl.models_in_range
truth_table = _impl.truth_table
scan_supports = _impl.scan_supports
attack_matrices = _impl.attack_matrices
stable_masks = _impl.stable_masks
conflict_free_masks = _impl.conflict_free_masks
