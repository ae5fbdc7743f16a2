from __future__ import annotations

import pytest

from arginst import kernels

KERNEL_NAMES = (
    "first_model",
    "models_in_range",
    "truth_table",
    "scan_supports",
    "attack_matrices",
    "stable_masks",
    "conflict_free_masks",
)


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Route every kernel call through one backend for the test's duration."""
    if request.param == "numba":
        pytest.importorskip("numba")
    impl = kernels.get_backend(request.param)
    for name in KERNEL_NAMES:
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param
