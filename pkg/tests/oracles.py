"""Brute-force reference implementations used only by the tests.

Nothing here touches arginst.kernels or arginst.logic: formulas are
evaluated by a separate recursive walker over itertools truth tables.
"""
from __future__ import annotations

import itertools
import random

from arginst.formula import And, Atom, Iff, Imp, Neg, Or, Xor

TRUTH = {
    And: lambda l, r: l and r,
    Or: lambda l, r: l or r,
    Imp: lambda l, r: (not l) or r,
    Iff: lambda l, r: l == r,
    Xor: lambda l, r: l != r,
}


def value(f, env):
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, Neg):
        return not value(f.child, env)
    return TRUTH[type(f)](value(f.left, env), value(f.right, env))


def names(f, acc=None):
    acc = set() if acc is None else acc
    if isinstance(f, Atom):
        acc.add(f.name)
    elif isinstance(f, Neg):
        names(f.child, acc)
    else:
        names(f.left, acc)
        names(f.right, acc)
    return acc


def all_envs(formulas):
    universe = sorted(set().union(*(names(f) for f in formulas))) if formulas else []
    for bits in itertools.product([False, True], repeat=len(universe)):
        yield dict(zip(universe, bits))


def models(formulas):
    return [env for env in all_envs(formulas) if all(value(f, env) for f in formulas)]


def consistent(formulas):
    return bool(models(formulas))


def entails(premises, conclusion):
    """Every model of the premises (over premise + conclusion atoms) satisfies the conclusion."""
    return all(
        value(conclusion, env)
        for env in all_envs([*premises, conclusion])
        if all(value(p, env) for p in premises)
    )


def subsets(indices):
    for r in range(len(indices) + 1):
        yield from itertools.combinations(indices, r)


def arguments(kb, cs):
    """Set of (support index tuple, claim index) with full subset minimality."""
    out = set()
    for c, claim in enumerate(cs):
        for r in range(1, len(kb) + 1):
            for support in itertools.combinations(range(len(kb)), r):
                formulas = [kb[i] for i in support]
                if not consistent(formulas) or not entails(formulas, claim):
                    continue
                proper = [s for s in subsets(support) if len(s) < len(support)]
                if any(entails([kb[i] for i in s], claim) for s in proper):
                    continue
                out.add((support, c))
    return out


def defeats(claim, support_formulas):
    conj = support_formulas[0]
    for f in support_formulas[1:]:
        conj = And(conj, f)
    return entails([claim], Neg(conj))


def directly_defeats(claim, support_formulas):
    return any(entails([claim], Neg(f)) for f in support_formulas)


def stable_sets(n, att):
    out = []
    for r in range(n + 1):
        for ext in itertools.combinations(range(1, n + 1), r):
            s = set(ext)
            if any(a in s and b in s for a, b in att):
                continue
            if all(x in s or any((y, x) in att for y in s) for x in range(1, n + 1)):
                out.append(frozenset(s))
    return sorted(out, key=sorted)


def conflict_free_sets(n, att):
    out = []
    for r in range(n + 1):
        for ext in itertools.combinations(range(1, n + 1), r):
            s = set(ext)
            if not any(a in s and b in s for a, b in att):
                out.append(frozenset(s))
    return sorted(out, key=sorted)


# --------------------------------------------------------------------------
# random generators

BINARY = (And, Or, Imp, Iff, Xor)


def random_formula(rng: random.Random, atom_names, depth=3):
    if depth == 0 or rng.random() < 0.3:
        return Atom(rng.choice(atom_names))
    if rng.random() < 0.25:
        return Neg(random_formula(rng, atom_names, depth - 1))
    cls = rng.choice(BINARY)
    return cls(random_formula(rng, atom_names, depth - 1), random_formula(rng, atom_names, depth - 1))


def random_instance(rng: random.Random, max_kb=4, max_claims=6, max_atoms=5, depth=2):
    atom_names = [f"p{i}" for i in range(rng.randint(1, max_atoms))]
    kb = list(dict.fromkeys(random_formula(rng, atom_names, depth) for _ in range(rng.randint(1, max_kb))))
    cs = list(
        dict.fromkeys(random_formula(rng, atom_names, depth) for _ in range(rng.randint(1, max_claims)))
    )
    # claims that reuse KB formulas and their negations produce richer attack graphs
    if rng.random() < 0.5:
        cs = list(dict.fromkeys([*cs, *(Neg(f) for f in kb[:2])]))[:max_claims]
    return kb, cs
