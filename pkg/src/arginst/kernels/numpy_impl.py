"""Pure-numpy kernels. Vectorized over chunks of the assignment/subset space."""
from __future__ import annotations

import numpy as np

from .opcodes import OP_AND, OP_ATOM, OP_IFF, OP_IMP, OP_NEG, OP_OR, OP_XOR

CHUNK = 1 << 16


def _eval_program(ops, args, lo, hi, n_atoms, idx):
    stack = []
    for t in range(lo, hi):
        op = ops[t]
        if op == OP_ATOM:
            stack.append(((idx >> (n_atoms - 1 - args[t])) & 1).astype(bool))
        elif op == OP_NEG:
            stack.append(~stack.pop())
        else:
            right = stack.pop()
            left = stack.pop()
            if op == OP_AND:
                stack.append(left & right)
            elif op == OP_OR:
                stack.append(left | right)
            elif op == OP_IMP:
                stack.append(~left | right)
            elif op == OP_IFF:
                stack.append(left == right)
            elif op == OP_XOR:
                stack.append(left != right)
            else:
                raise ValueError(f"bad opcode {op}")
    return stack[0]


def _eval_conjunction(ops, args, offsets, n_atoms, idx):
    alive = np.ones(idx.shape, dtype=bool)
    for p in range(len(offsets) - 1):
        alive &= _eval_program(ops, args, offsets[p], offsets[p + 1], n_atoms, idx)
        if not alive.any():
            break
    return alive


def first_model(ops, args, offsets, n_atoms):
    """Lowest assignment satisfying every program, or -1."""
    total = 1 << n_atoms
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        sat = _eval_conjunction(ops, args, offsets, n_atoms, idx)
        if sat.any():
            return int(idx[np.argmax(sat)])
    return -1


def models_in_range(ops, args, offsets, n_atoms, start, stop):
    """Ascending assignments in ``[start, stop)`` satisfying every program."""
    found = []
    for lo in range(start, stop, CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, stop), dtype=np.int64)
        found.append(idx[_eval_conjunction(ops, args, offsets, n_atoms, idx)])
    if not found:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(found)


def _pack(bits):
    pad = (-len(bits)) % 64
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=bool)])
    return np.packbits(bits, bitorder="little").view("<u8").astype(np.uint64)


def truth_table(ops, args, n_atoms):
    total = 1 << n_atoms
    parts = []
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        parts.append(_eval_program(ops, args, 0, len(ops), n_atoms, idx))
    return _pack(np.concatenate(parts))


def _conj(kb_tables, valid, mask, skip=-1):
    acc = valid.copy()
    i = 0
    while mask:
        if mask & 1 and i != skip:
            acc &= kb_tables[i]
        mask >>= 1
        i += 1
    return acc


def scan_supports(kb_tables, claim_table, valid, m):
    """Minimal consistent supports of one claim, in (size, value) order.

    Candidates that are strict supersets of an already accepted support are
    skipped without evaluation.
    """
    not_claim = ~claim_table
    accepted = []
    for size in range(1, m + 1):
        mask = (1 << size) - 1
        while mask < (1 << m):
            if not any((acc & mask) == acc for acc in accepted):
                conj = _conj(kb_tables, valid, mask)
                if conj.any() and not (conj & not_claim).any():
                    minimal = True
                    rest = mask
                    while rest:
                        i = (rest & -rest).bit_length() - 1
                        rest &= rest - 1
                        if not (_conj(kb_tables, valid, mask, skip=i) & not_claim).any():
                            minimal = False
                            break
                    if minimal:
                        accepted.append(mask)
            # next mask with the same popcount
            c = mask & -mask
            r = mask + c
            mask = (((r ^ mask) >> 2) // c) | r
    return np.array(accepted, dtype=np.int64)


def attack_matrices(claim_tables, arg_claims, kb_tables, support_masks, valid):
    """``(defeat, direct)`` boolean matrices, entry ``[x, y]`` for x attacking y."""
    n = len(arg_claims)
    m = len(kb_tables)
    arg_claims = np.asarray(arg_claims, dtype=np.int64)
    # claim c entails the negation of kb formula i iff their tables are disjoint
    disjoint = np.empty((len(claim_tables), m), dtype=bool)
    for i in range(m):
        disjoint[:, i] = ~(claim_tables & kb_tables[i]).any(axis=1)
    members = np.array(
        [[(int(s) >> i) & 1 for i in range(m)] for s in support_masks], dtype=np.int64
    ).reshape(n, m)
    direct = (disjoint[arg_claims].astype(np.int64) @ members.T) > 0
    defeat = np.empty((n, n), dtype=bool)
    for y in range(n):
        conj = _conj(kb_tables, valid, int(support_masks[y]))
        defeat[:, y] = ~(claim_tables & conj).any(axis=1)[arg_claims]
    return defeat, direct


def _scan_masks(attackers, n, want_stable):
    out = []
    total = 1 << n
    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        bad = np.zeros(masks.shape, dtype=bool)
        for i in range(n):
            inside = ((masks >> i) & 1).astype(bool)
            hit = (attackers[i] & masks) != 0
            bad |= inside & hit
            if want_stable:
                bad |= ~inside & ~hit
        out.append(masks[~bad])
    return np.concatenate(out)


def stable_masks(attackers, n):
    """All stable sets as bit masks (bit ``i`` = argument ``i``), ascending."""
    return _scan_masks(np.asarray(attackers, dtype=np.int64), n, True)


def conflict_free_masks(attackers, n):
    return _scan_masks(np.asarray(attackers, dtype=np.int64), n, False)
