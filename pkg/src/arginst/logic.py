"""Decision procedures over finite atom sets.

Everything here is exhaustive enumeration over the ``2**n`` assignments of
the relevant atoms, so ``n`` is bounded by an atom cap (default
:data:`DEFAULT_ATOM_CAP`). Assignments are numbered so that the
lexicographically first atom is the most significant bit.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .formula import And, Atom, Formula, Iff, Imp, Interpretation, Neg, Or, Xor, atoms

__all__ = [
    "DEFAULT_ATOM_CAP",
    "AtomCapExceeded",
    "FormulaSet",
    "compile_programs",
    "enumerate_models",
    "is_consistent",
    "entails",
    "is_equivalent",
    "TruthTables",
]

DEFAULT_ATOM_CAP = 24
# models are pulled from the kernel in blocks of this many assignments
_STREAM_BLOCK = 1 << 16

_OPCODE = {
    Neg: kernels.OP_NEG,
    And: kernels.OP_AND,
    Or: kernels.OP_OR,
    Imp: kernels.OP_IMP,
    Iff: kernels.OP_IFF,
    Xor: kernels.OP_XOR,
}


class AtomCapExceeded(ValueError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} atoms exceed the atom cap of {cap}")
        self.count = count
        self.cap = cap


class FormulaSet(Sequence[Formula]):
    """Ordered, duplicate-free collection of formulas.

    Structurally equal members are collapsed to their first occurrence.
    """

    __slots__ = ("members", "atom_universe")

    def __init__(self, members: Iterable[Formula] = ()):
        self.members: tuple[Formula, ...] = tuple(dict.fromkeys(members))
        universe: set[str] = set()
        for f in self.members:
            universe.update(atoms(f))
        self.atom_universe: tuple[str, ...] = tuple(sorted(universe))

    def __getitem__(self, i):
        return self.members[i]

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FormulaSet):
            return self.members == other.members
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"FormulaSet([{', '.join(str(f) for f in self.members)}])"

    def union(self, more: Iterable[Formula]) -> "FormulaSet":
        return FormulaSet((*self.members, *more))


def _as_set(fs) -> FormulaSet:
    return fs if isinstance(fs, FormulaSet) else FormulaSet(fs)


def _check_cap(n: int, atom_cap: int) -> None:
    if n > atom_cap:
        raise AtomCapExceeded(n, atom_cap)


def compile_programs(formulas: Sequence[Formula], universe: Sequence[str]):
    """Lower formulas to concatenated postfix programs.

    Returns ``(ops, args, offsets)`` as ``int64`` arrays; atom operands are
    indices into ``universe``.
    """
    index = {name: i for i, name in enumerate(universe)}
    ops: list[int] = []
    args: list[int] = []
    offsets = [0]
    for f in formulas:
        # iterative post-order walk; deep formulas must not hit the recursion limit
        stack: list[tuple[Formula, bool]] = [(f, False)]
        while stack:
            node, expanded = stack.pop()
            if isinstance(node, Atom):
                ops.append(kernels.OP_ATOM)
                args.append(index[node.name])
            elif expanded:
                ops.append(_OPCODE[type(node)])
                args.append(0)
            else:
                stack.append((node, True))
                if isinstance(node, Neg):
                    stack.append((node.child, False))
                else:
                    stack.append((node.right, False))
                    stack.append((node.left, False))
        offsets.append(len(ops))
    return (
        np.array(ops, dtype=np.int64),
        np.array(args, dtype=np.int64),
        np.array(offsets, dtype=np.int64),
    )


def _decode(k: int, universe: Sequence[str]) -> Interpretation:
    n = len(universe)
    return Interpretation({name: bool((k >> (n - 1 - j)) & 1) for j, name in enumerate(universe)})


def enumerate_models(fs, *, atom_cap: int = DEFAULT_ATOM_CAP) -> Iterator[Interpretation]:
    """Yield every model of ``fs`` over its atom universe, ascending.

    The atom cap is checked eagerly, before the first model is requested.
    """
    fs = _as_set(fs)
    universe = fs.atom_universe
    _check_cap(len(universe), atom_cap)
    programs = compile_programs(fs.members, universe)
    return _stream_models(programs, universe)


def _stream_models(programs, universe) -> Iterator[Interpretation]:
    n = len(universe)
    total = 1 << n
    for start in range(0, total, _STREAM_BLOCK):
        stop = min(start + _STREAM_BLOCK, total)
        for k in kernels.models_in_range(*programs, n, start, stop):
            yield _decode(int(k), universe)


def _has_model(formulas: Sequence[Formula], atom_cap: int) -> bool:
    universe = FormulaSet(formulas).atom_universe
    _check_cap(len(universe), atom_cap)
    return kernels.first_model(*compile_programs(formulas, universe), len(universe)) >= 0


def is_consistent(fs, *, atom_cap: int = DEFAULT_ATOM_CAP) -> bool:
    return _has_model(_as_set(fs).members, atom_cap)


def entails(premises, conclusion: Formula, *, atom_cap: int = DEFAULT_ATOM_CAP) -> bool:
    """``premises |= conclusion``, decided as unsatisfiability of
    ``premises + [Neg(conclusion)]`` over the atoms of both."""
    return not _has_model((*_as_set(premises).members, Neg(conclusion)), atom_cap)


def is_equivalent(f: Formula, g: Formula, *, atom_cap: int = DEFAULT_ATOM_CAP) -> bool:
    return not _has_model((Xor(f, g),), atom_cap)


class TruthTables:
    """Packed truth tables of many formulas over one shared atom universe.

    Row ``r`` of :attr:`rows` is a ``uint64`` bitset with bit ``k`` set iff
    formula ``r`` holds under assignment ``k``. Padding bits beyond
    ``2**n`` are zero, and :attr:`valid` has exactly the real bits set.
    Entailment between conjunctions of rows reduces to bitset containment.
    """

    def __init__(self, formulas: Sequence[Formula], *, atom_cap: int = DEFAULT_ATOM_CAP):
        self.formulas = tuple(formulas)
        self.universe = FormulaSet(self.formulas).atom_universe
        n = len(self.universe)
        _check_cap(n, atom_cap)
        n_words = max((1 << n) // 64, 1)
        self.rows = np.zeros((len(self.formulas), n_words), dtype=np.uint64)
        for r, f in enumerate(self.formulas):
            ops, args, _ = compile_programs([f], self.universe)
            self.rows[r] = kernels.truth_table(ops, args, n)
        self.valid = np.zeros(n_words, dtype=np.uint64)
        if n >= 6:
            self.valid[:] = np.uint64(0xFFFFFFFFFFFFFFFF)
        else:
            self.valid[0] = np.uint64((1 << (1 << n)) - 1)
