"""Compare the compiled and pure-Python kernels on the same inputs.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import random
import timeit

import numpy as np

from polc import _kernels
from polc.algebra import right_language_inclusion, syntactic
from polc.automata import Dfa
from polc.generators import random_dfa


def _gens(dfa):
    return [[dfa.delta[q][a] for q in range(dfa.n)] for a in range(len(dfa.alphabet))]


def cases():
    rng = random.Random(5)
    # a DFA with a large transition monoid
    pool = [random_dfa(rng, 5, ("ab",)) for _ in range(200)]
    big = max((d for d in pool if syntactic(d).size <= 300), key=lambda d: syntactic(d).size)
    sd = syntactic(big)
    mon = sd.monoid
    gens = _gens(big)
    enum = _kernels.enumerate_transformations(gens, big.n, 20000)
    transforms = enum[0]
    inc = right_language_inclusion(big)
    rel = np.zeros((mon.size, mon.size), dtype=bool)
    for _ in range(mon.size):
        rel[rng.randrange(mon.size), rng.randrange(mon.size)] = True
    ab = syntactic(Dfa.from_regex("(ab)*", "ab")).morphism
    word = "ab" * 30 + "ba" * 10
    images = [ab.image(c) for c in word]
    accepting = np.zeros(mon.size, dtype=bool)
    accepting[list(sd.morphism.accepting)] = True
    return {
        f"enumerate_transformations |M|={mon.size}": lambda k: k.enumerate_transformations(gens, big.n, 20000),
        f"fill_table |M|={mon.size}": lambda k: k.fill_table(enum[3], enum[1], enum[2]),
        f"order_from_transforms |M|={mon.size}": lambda k: k.order_from_transforms(transforms, inc),
        f"order_by_definition |M|={mon.size}": lambda k: k.order_by_definition(mon.table, accepting),
        f"transitive_closure n={mon.size}": lambda k: k.transitive_closure(rel),
        f"forest_levels |w|={len(word)}": lambda k: k.forest_levels(images, ab.monoid.table, ab.monoid.is_idempotent, 17),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _kernels.backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python timings are shown")
    print(f"{'kernel':42s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for name, fn in cases().items():
        times = {b: min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for b, k in backends.items()}
        py, cy = times["python"], times.get("cython")
        if cy is None:
            print(f"{name:42s} {py:11.4f} {'-':>11s} {'-':>8s}")
        else:
            print(f"{name:42s} {py:11.4f} {cy:11.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
