"""Attack relations between instantiated arguments.

``X`` defeats ``Y`` when X's claim entails the negation of Y's whole support
conjunction; ``X`` directly defeats ``Y`` when X's claim entails the
negation of a single member of Y's support.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .formula import And, Formula, Neg
from .instantiate import Argument
from .logic import DEFAULT_ATOM_CAP, TruthTables, entails

__all__ = [
    "AttackType",
    "Attack",
    "support_conjunction",
    "attacks_between",
    "compute_attacks",
]


class AttackType(enum.Enum):
    DEFEAT = "defeat"
    DIRECT_DEFEAT = "direct_defeat"

    @property
    def wire_name(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "AttackType":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(
                f"unknown attack type {name!r}; expected one of {[k.value for k in cls]}"
            ) from None


_KIND_ORDER = {AttackType.DEFEAT: 0, AttackType.DIRECT_DEFEAT: 1}


@dataclass(frozen=True)
class Attack:
    source: int
    target: int
    kind: AttackType

    def sort_key(self) -> tuple[int, int, int]:
        return (_KIND_ORDER[self.kind], self.source, self.target)


def support_conjunction(arg: Argument, kb: Sequence[Formula]) -> Formula:
    """Left-nested conjunction of the support, in KB order."""
    formulas = arg.support_formulas(kb)
    if not formulas:
        raise ValueError(f"argument {arg.id} has an empty support")
    return reduce(And, formulas)


def attacks_between(
    attacker: Argument,
    target: Argument,
    kind: AttackType,
    kb: Sequence[Formula],
    cs: Sequence[Formula],
    *,
    atom_cap: int = DEFAULT_ATOM_CAP,
) -> bool:
    claim = attacker.claim_formula(cs)
    if kind is AttackType.DEFEAT:
        return entails([claim], Neg(support_conjunction(target, kb)), atom_cap=atom_cap)
    return any(
        entails([claim], Neg(phi), atom_cap=atom_cap) for phi in target.support_formulas(kb)
    )


def compute_attacks(
    args: Sequence[Argument],
    kinds: Iterable[AttackType],
    kb: Sequence[Formula],
    cs: Sequence[Formula],
    *,
    atom_cap: int = DEFAULT_ATOM_CAP,
) -> list[Attack]:
    """Every attack among ``args`` (self pairs included) for each kind.

    Sorted by (kind, source, target), defeat before direct defeat.
    """
    kinds = sorted(set(kinds), key=_KIND_ORDER.__getitem__)
    if not args or not kinds:
        return []
    m = len(kb)
    tables = TruthTables((*kb, *cs), atom_cap=atom_cap)
    defeat, direct = kernels.attack_matrices(
        np.ascontiguousarray(tables.rows[m:]),
        np.array([a.claim for a in args], dtype=np.int64),
        np.ascontiguousarray(tables.rows[:m]),
        np.array([a.support for a in args], dtype=np.int64),
        tables.valid,
    )
    ids = [a.id for a in args]
    out: list[Attack] = []
    for kind in kinds:
        matrix = defeat if kind is AttackType.DEFEAT else direct
        for x, y in zip(*np.nonzero(matrix)):
            out.append(Attack(ids[x], ids[y], kind))
    out.sort(key=Attack.sort_key)
    return out
