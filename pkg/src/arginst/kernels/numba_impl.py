"""numba-compiled kernels; same results as :mod:`arginst.kernels.numpy_impl`.

Formula evaluation is word-parallel: one pass over a postfix program
evaluates 64 consecutive assignments as the bits of a ``uint64``. Search
kernels are scalar loops with early exits."""
from __future__ import annotations

import numpy as np
from numba import njit

from .opcodes import OP_AND, OP_ATOM, OP_IFF, OP_IMP, OP_NEG, OP_OR

_ONE = np.uint64(1)


# bit b of _LOW_PATTERNS[p] is bit p of b: the value of the atom sitting at
# bit p of the assignment, over the 64 assignments of one word
_LOW_PATTERNS = np.array(
    [
        0xAAAAAAAAAAAAAAAA,
        0xCCCCCCCCCCCCCCCC,
        0xF0F0F0F0F0F0F0F0,
        0xFF00FF00FF00FF00,
        0xFFFF0000FFFF0000,
        0xFFFFFFFF00000000,
    ],
    dtype=np.uint64,
)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True)
def _eval_word(ops, args, lo, hi, n_atoms, w, stack):
    # evaluates assignments 64*w .. 64*w+63 at once, one bit each
    sp = 0
    for t in range(lo, hi):
        op = ops[t]
        if op == OP_ATOM:
            pos = n_atoms - 1 - args[t]
            if pos < 6:
                stack[sp] = _LOW_PATTERNS[pos]
            elif (w >> (pos - 6)) & 1:
                stack[sp] = _ALL
            else:
                stack[sp] = np.uint64(0)
            sp += 1
        elif op == OP_NEG:
            stack[sp - 1] = ~stack[sp - 1]
        else:
            right = stack[sp - 1]
            left = stack[sp - 2]
            sp -= 1
            if op == OP_AND:
                v = left & right
            elif op == OP_OR:
                v = left | right
            elif op == OP_IMP:
                v = ~left | right
            elif op == OP_IFF:
                v = ~(left ^ right)
            else:
                v = left ^ right
            stack[sp - 1] = v
    return stack[0]


@njit(cache=True)
def _word_mask(n_atoms):
    if n_atoms >= 6:
        return _ALL
    return (_ONE << np.uint64(1 << n_atoms)) - _ONE


@njit(cache=True)
def _conj_word(ops, args, offsets, n_atoms, w, stack):
    acc = _word_mask(n_atoms)
    for p in range(len(offsets) - 1):
        if not acc:
            break
        acc &= _eval_word(ops, args, offsets[p], offsets[p + 1], n_atoms, w, stack)
    return acc


@njit(cache=True)
def _lowest_bit(x):
    b = 0
    while not (x >> np.uint64(b)) & _ONE:
        b += 1
    return b


@njit(cache=True)
def _first_model(ops, args, offsets, n_atoms):
    stack = np.empty(max(len(ops), 1), dtype=np.uint64)
    for w in range(max((1 << n_atoms) >> 6, 1)):
        acc = _conj_word(ops, args, offsets, n_atoms, w, stack)
        if acc:
            return 64 * w + _lowest_bit(acc)
    return -1


@njit(cache=True)
def _models_in_range(ops, args, offsets, n_atoms, start, stop):
    out = np.empty(max(stop - start, 0), dtype=np.int64)
    count = 0
    if stop <= start:
        return out
    stack = np.empty(max(len(ops), 1), dtype=np.uint64)
    for w in range(start >> 6, ((stop - 1) >> 6) + 1):
        acc = _conj_word(ops, args, offsets, n_atoms, w, stack)
        base = 64 * w
        while acc:
            b = _lowest_bit(acc)
            acc &= acc - _ONE
            k = base + b
            if start <= k < stop:
                out[count] = k
                count += 1
    return out[:count].copy()


@njit(cache=True)
def _truth_table(ops, args, n_atoms):
    n_words = max((1 << n_atoms) >> 6, 1)
    words = np.empty(n_words, dtype=np.uint64)
    stack = np.empty(max(len(ops), 1), dtype=np.uint64)
    mask = _word_mask(n_atoms)
    for w in range(n_words):
        words[w] = _eval_word(ops, args, 0, len(ops), n_atoms, w, stack) & mask
    return words


@njit(cache=True)
def _conj_into(out, kb_tables, valid, mask, skip):
    for w in range(len(valid)):
        out[w] = valid[w]
    i = 0
    while mask:
        if (mask & 1) and i != skip:
            for w in range(len(valid)):
                out[w] &= kb_tables[i, w]
        mask >>= 1
        i += 1


@njit(cache=True)
def _any_outside(conj, claim):
    for w in range(len(conj)):
        if conj[w] & ~claim[w]:
            return True
    return False


@njit(cache=True)
def _is_zero(conj):
    for w in range(len(conj)):
        if conj[w]:
            return False
    return True


@njit(cache=True)
def _scan_supports(kb_tables, claim_table, valid, m):
    accepted = np.empty(16, dtype=np.int64)
    count = 0
    conj = np.empty(len(valid), dtype=np.uint64)
    for size in range(1, m + 1):
        mask = (np.int64(1) << size) - 1
        limit = np.int64(1) << m
        while mask < limit:
            pruned = False
            for a in range(count):
                if (accepted[a] & mask) == accepted[a]:
                    pruned = True
                    break
            if not pruned:
                _conj_into(conj, kb_tables, valid, mask, -1)
                if not _is_zero(conj) and not _any_outside(conj, claim_table):
                    minimal = True
                    for i in range(m):
                        if (mask >> i) & 1:
                            _conj_into(conj, kb_tables, valid, mask, i)
                            if not _any_outside(conj, claim_table):
                                minimal = False
                                break
                    if minimal:
                        if count == len(accepted):
                            grown = np.empty(2 * count, dtype=np.int64)
                            grown[:count] = accepted
                            accepted = grown
                        accepted[count] = mask
                        count += 1
            c = mask & -mask
            r = mask + c
            mask = (((r ^ mask) >> 2) // c) | r
    return accepted[:count].copy()


@njit(cache=True)
def _attack_matrices(claim_tables, arg_claims, kb_tables, support_masks, valid):
    n = len(arg_claims)
    m = kb_tables.shape[0]
    n_claims = claim_tables.shape[0]
    n_words = len(valid)
    disjoint = np.zeros((n_claims, m), dtype=np.bool_)
    for c in range(n_claims):
        for i in range(m):
            hit = False
            for w in range(n_words):
                if claim_tables[c, w] & kb_tables[i, w]:
                    hit = True
                    break
            disjoint[c, i] = not hit
    direct = np.zeros((n, n), dtype=np.bool_)
    defeat = np.zeros((n, n), dtype=np.bool_)
    conj = np.empty(n_words, dtype=np.uint64)
    claim_defeats = np.empty(n_claims, dtype=np.bool_)
    for y in range(n):
        _conj_into(conj, kb_tables, valid, support_masks[y], -1)
        for c in range(n_claims):
            hit = False
            for w in range(n_words):
                if claim_tables[c, w] & conj[w]:
                    hit = True
                    break
            claim_defeats[c] = not hit
        for x in range(n):
            c = arg_claims[x]
            defeat[x, y] = claim_defeats[c]
            for i in range(m):
                if (support_masks[y] >> i) & 1 and disjoint[c, i]:
                    direct[x, y] = True
                    break
    return defeat, direct


@njit(cache=True)
def _search(attackers, n, want_stable):
    # depth-first include/exclude search; a branch is cut as soon as the
    # partial set stops being conflict-free
    attacks = np.zeros(max(n, 1), dtype=np.int64)
    for j in range(n):
        for i in range(n):
            if (attackers[j] >> i) & 1:
                attacks[i] |= np.int64(1) << j
    out = np.empty(16, dtype=np.int64)
    count = 0
    stack_sets = np.empty(2 * n + 4, dtype=np.int64)
    stack_pos = np.empty(2 * n + 4, dtype=np.int64)
    sp = 0
    stack_sets[0] = 0
    stack_pos[0] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        current = stack_sets[sp]
        i = stack_pos[sp]
        if i == n:
            keep = True
            if want_stable:
                for j in range(n):
                    if not (current >> j) & 1 and (attackers[j] & current) == 0:
                        keep = False
                        break
            if keep:
                if count == len(out):
                    grown = np.empty(2 * count, dtype=np.int64)
                    grown[:count] = out
                    out = grown
                out[count] = current
                count += 1
            continue
        bit = np.int64(1) << i
        stack_sets[sp] = current
        stack_pos[sp] = i + 1
        sp += 1
        widened = current | bit
        if (attackers[i] & widened) == 0 and (attacks[i] & current) == 0:
            stack_sets[sp] = widened
            stack_pos[sp] = i + 1
            sp += 1
    return np.sort(out[:count])


def first_model(ops, args, offsets, n_atoms):
    """Lowest assignment satisfying every program, or -1."""
    return int(_first_model(ops, args, offsets, n_atoms))


def models_in_range(ops, args, offsets, n_atoms, start, stop):
    """Ascending assignments in ``[start, stop)`` satisfying every program."""
    return _models_in_range(ops, args, offsets, n_atoms, np.int64(start), np.int64(stop))


def truth_table(ops, args, n_atoms):
    return _truth_table(ops, args, n_atoms)


def scan_supports(kb_tables, claim_table, valid, m):
    """Minimal consistent supports of one claim, in (size, value) order."""
    return _scan_supports(kb_tables, claim_table, valid, m)


def attack_matrices(claim_tables, arg_claims, kb_tables, support_masks, valid):
    """``(defeat, direct)`` boolean matrices, entry ``[x, y]`` for x attacking y."""
    return _attack_matrices(
        claim_tables,
        np.asarray(arg_claims, dtype=np.int64),
        kb_tables,
        np.asarray(support_masks, dtype=np.int64),
        valid,
    )


def stable_masks(attackers, n):
    """All stable sets as bit masks (bit ``i`` = argument ``i``), ascending."""
    return _search(np.asarray(attackers, dtype=np.int64), n, True)


def conflict_free_masks(attackers, n):
    return _search(np.asarray(attackers, dtype=np.int64), n, False)
