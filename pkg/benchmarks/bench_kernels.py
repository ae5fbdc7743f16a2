"""Time each kernel under the numba and numpy backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]

The numba column excludes compilation: every kernel is called once on the
same inputs before timing starts.
"""
from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from arginst import kernels
from arginst.formula import And, Atom, Iff, Imp, Neg, Or, Xor
from arginst.logic import TruthTables, compile_programs

BINARY = (And, Or, Imp, Iff, Xor)


def random_formula(rng, names, depth):
    if depth == 0 or rng.random() < 0.2:
        return Atom(rng.choice(names))
    if rng.random() < 0.2:
        return Neg(random_formula(rng, names, depth - 1))
    return rng.choice(BINARY)(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))


def workloads(rng):
    names = [f"p{i:02d}" for i in range(20)]
    wide = [random_formula(rng, names, 6) for _ in range(3)]
    wide.append(Or(*[Atom(n) for n in names[:2]]))
    ops, args, offsets = compile_programs(wide, names)
    one_ops, one_args, _ = compile_programs(wide[:1], names)

    small = [f"q{i}" for i in range(10)]
    kb = [random_formula(rng, small, 2) for _ in range(12)]
    claims = [random_formula(rng, small, 1) for _ in range(8)]
    tables = TruthTables([*kb, *claims])
    kb_t, cl_t = tables.rows[: len(kb)], tables.rows[len(kb):]
    supports, arg_claims = [], []
    for c in range(len(claims)):
        found = kernels.get_backend("numpy").scan_supports(kb_t, cl_t[c], tables.valid, len(kb))
        supports += [int(s) for s in found]
        arg_claims += [c] * len(found)

    n_af = 18
    attackers = np.array(
        [sum(1 << i for i in range(n_af) if rng.random() < 0.15) for _ in range(n_af)], dtype=np.int64
    )
    return {
        "first_model (20 atoms)": ("first_model", (ops, args, offsets, 20)),
        "models_in_range (20 atoms)": ("models_in_range", (ops, args, offsets, 20, 0, 1 << 20)),
        "truth_table (20 atoms)": ("truth_table", (one_ops, one_args, 20)),
        "scan_supports (|K|=12)": ("scan_supports", (kb_t, cl_t[0], tables.valid, len(kb))),
        f"attack_matrices ({len(supports)} args)": (
            "attack_matrices",
            (cl_t, arg_claims, kb_t, supports, tables.valid),
        ),
        f"stable_masks (n={n_af})": ("stable_masks", (attackers, n_af)),
        f"conflict_free_masks (n={n_af})": ("conflict_free_masks", (attackers, n_af)),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    opts = parser.parse_args()

    backends = {name: kernels.get_backend(name) for name in ("numba", "numpy")}
    print(f"{'kernel':<34}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for label, (name, call_args) in workloads(random.Random(opts.seed)).items():
        best = {}
        for backend, impl in backends.items():
            fn = getattr(impl, name)
            fn(*call_args)
            best[backend] = min(timeit.repeat(lambda: fn(*call_args), number=1, repeat=opts.repeat))
        ratio = best["numpy"] / best["numba"] if best["numba"] else float("inf")
        print(f"{label:<34}{best['numba'] * 1e3:>12.2f}{best['numpy'] * 1e3:>12.2f}{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
