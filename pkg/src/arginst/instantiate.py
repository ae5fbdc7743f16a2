"""Argument construction from a knowledge base and a fixed claim set.

An argument pairs a nonempty support ``S`` (a subset of the knowledge base)
with a claim ``C`` such that ``S`` is consistent, ``S |= C``, and no proper
subset of ``S`` entails ``C``. Supports are bit masks over KB positions.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .formula import Formula
from .logic import DEFAULT_ATOM_CAP, TruthTables, entails, is_consistent

__all__ = [
    "DEFAULT_KB_CAP",
    "KnowledgeBaseTooLarge",
    "KnowledgeBase",
    "ClaimSet",
    "Argument",
    "mask_members",
    "candidate_supports",
    "is_minimal_support",
    "is_argument",
    "enumerate_arguments",
]

log = logging.getLogger(__name__)

DEFAULT_KB_CAP = 30


class KnowledgeBaseTooLarge(ValueError):
    pass


class _IndexedFormulas(Sequence[Formula]):
    """Ordered duplicate-free formula list, indexed from 0 by input position."""

    kind = "formula"

    def __init__(self, formulas: Iterable[Formula] = ()):
        seen: dict[Formula, None] = {}
        for f in formulas:
            if f in seen:
                log.warning("dropping duplicate %s %s", self.kind, f)
                continue
            seen[f] = None
        self.formulas: tuple[Formula, ...] = tuple(seen)

    def __getitem__(self, i):
        return self.formulas[i]

    def __len__(self) -> int:
        return len(self.formulas)

    def __eq__(self, other: object) -> bool:
        if type(other) is type(self):
            return self.formulas == other.formulas
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.formulas)

    def __repr__(self) -> str:
        return f"{type(self).__name__}([{', '.join(str(f) for f in self.formulas)}])"

    def index(self, f: Formula, *args) -> int:
        return self.formulas.index(f, *args)


class KnowledgeBase(_IndexedFormulas):
    kind = "knowledge base formula"


class ClaimSet(_IndexedFormulas):
    kind = "claim"


@dataclass(frozen=True)
class Argument:
    id: int
    support: int
    claim: int

    @property
    def members(self) -> tuple[int, ...]:
        return mask_members(self.support)

    def support_formulas(self, kb: Sequence[Formula]) -> tuple[Formula, ...]:
        return tuple(kb[i] for i in self.members)

    def claim_formula(self, cs: Sequence[Formula]) -> Formula:
        return cs[self.claim]


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _check_kb_size(m: int, kb_cap: int) -> None:
    if m > kb_cap:
        raise KnowledgeBaseTooLarge(
            f"knowledge base has {m} formulas; exhaustive enumeration is capped at {kb_cap}"
        )


def candidate_supports(kb: Sequence[Formula], *, kb_cap: int = DEFAULT_KB_CAP) -> Iterator[int]:
    """Every nonempty subset of KB positions, by size then by mask value."""
    m = len(kb)
    _check_kb_size(m, kb_cap)
    for size in range(1, m + 1):
        mask = (1 << size) - 1
        while mask < (1 << m):
            yield mask
            c = mask & -mask
            r = mask + c
            mask = (((r ^ mask) >> 2) // c) | r


def is_minimal_support(
    kb: Sequence[Formula], support: int, claim: Formula, *, atom_cap: int = DEFAULT_ATOM_CAP
) -> bool:
    """Remove-one minimality: no ``support - {alpha}`` entails ``claim``.

    Monotonicity of classical entailment makes this equivalent to full
    subset minimality. Assumes the whole support entails the claim.
    """
    members = mask_members(support)
    for drop in members:
        rest = [kb[i] for i in members if i != drop]
        if entails(rest, claim, atom_cap=atom_cap):
            return False
    return True


def is_argument(
    kb: Sequence[Formula], support: int, claim: Formula, *, atom_cap: int = DEFAULT_ATOM_CAP
) -> bool:
    """Check the argument conditions one by one through :mod:`arginst.logic`."""
    if support == 0:
        return False
    formulas = [kb[i] for i in mask_members(support)]
    return (
        is_consistent(formulas, atom_cap=atom_cap)
        and entails(formulas, claim, atom_cap=atom_cap)
        and is_minimal_support(kb, support, claim, atom_cap=atom_cap)
    )


def enumerate_arguments(
    kb: Sequence[Formula],
    cs: Sequence[Formula],
    *,
    atom_cap: int = DEFAULT_ATOM_CAP,
    kb_cap: int = DEFAULT_KB_CAP,
) -> list[Argument]:
    """All arguments over ``kb`` and ``cs``.

    Ids run from 1 in order of claim index, then support mask. The atom cap
    applies to the atoms of ``kb`` and ``cs`` taken together.
    """
    m = len(kb)
    _check_kb_size(m, kb_cap)
    if not cs or not kb:
        return []
    tables = TruthTables((*kb, *cs), atom_cap=atom_cap)
    kb_rows = np.ascontiguousarray(tables.rows[:m])
    out: list[Argument] = []
    for c in range(len(cs)):
        masks = kernels.scan_supports(kb_rows, tables.rows[m + c], tables.valid, m)
        for mask in sorted(int(x) for x in masks):
            out.append(Argument(len(out) + 1, mask, c))
    return out
