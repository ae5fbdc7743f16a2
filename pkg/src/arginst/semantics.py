"""Conflict-free sets and stable extensions of an abstract framework."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import kernels

__all__ = [
    "DEFAULT_EXTENSION_CAP",
    "ExtensionCapExceeded",
    "ArgumentationFramework",
    "is_conflict_free",
    "is_stable",
    "stable_extensions",
    "conflict_free_sets",
]

DEFAULT_EXTENSION_CAP = 24


class ExtensionCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ArgumentationFramework:
    """Arguments ``1..n`` and a set of ``(attacker, attacked)`` pairs."""

    n: int
    att: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("number of arguments must be non-negative")
        att = frozenset((int(a), int(b)) for a, b in self.att)
        for a, b in att:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"attack ({a},{b}) references an argument outside 1..{self.n}")
        object.__setattr__(self, "att", att)

    @classmethod
    def from_attacks(cls, n: int, attacks: Iterable) -> "ArgumentationFramework":
        """Build from :class:`~arginst.attacks.Attack` records or plain pairs."""
        pairs = []
        for a in attacks:
            pairs.append((a.source, a.target) if hasattr(a, "source") else tuple(a))
        return cls(n, frozenset(pairs))

    def sorted_attacks(self) -> list[tuple[int, int]]:
        return sorted(self.att)

    def attacker_masks(self) -> np.ndarray:
        """Bit ``a - 1`` of entry ``b - 1`` is set iff ``a`` attacks ``b``."""
        masks = np.zeros(self.n, dtype=np.int64)
        for a, b in self.att:
            masks[b - 1] |= np.int64(1) << (a - 1)
        return masks


def _check_ext(af: ArgumentationFramework, ext: Iterable[int]) -> frozenset[int]:
    ext = frozenset(ext)
    for a in ext:
        if not 1 <= a <= af.n:
            raise ValueError(f"argument id {a} outside 1..{af.n}")
    return ext


def is_conflict_free(af: ArgumentationFramework, ext: Iterable[int]) -> bool:
    ext = _check_ext(af, ext)
    return not any(a in ext and b in ext for a, b in af.att)


def is_stable(af: ArgumentationFramework, ext: Iterable[int]) -> bool:
    ext = _check_ext(af, ext)
    if not is_conflict_free(af, ext):
        return False
    attacked = {b for a, b in af.att if a in ext}
    return all(x in ext or x in attacked for x in range(1, af.n + 1))


def _decode(masks) -> list[frozenset[int]]:
    exts = []
    for mask in masks:
        mask = int(mask)
        exts.append(frozenset(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1))
    exts.sort(key=sorted)
    return exts


def _check_cap(af: ArgumentationFramework, cap: int) -> None:
    if af.n > cap:
        raise ExtensionCapExceeded(
            f"{af.n} arguments exceed the exhaustive extension search cap of {cap}"
        )


def stable_extensions(
    af: ArgumentationFramework, *, extension_cap: int = DEFAULT_EXTENSION_CAP
) -> list[frozenset[int]]:
    """All stable extensions, ordered lexicographically by sorted members."""
    _check_cap(af, extension_cap)
    return _decode(kernels.stable_masks(af.attacker_masks(), af.n))


def conflict_free_sets(
    af: ArgumentationFramework, *, extension_cap: int = DEFAULT_EXTENSION_CAP
) -> list[frozenset[int]]:
    _check_cap(af, extension_cap)
    return _decode(kernels.conflict_free_masks(af.attacker_masks(), af.n))
