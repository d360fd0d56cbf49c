#!/usr/bin/env python3
"""Benchmark the compiled term kernel against the pure-Python fallback.

Times the raw kernel functions head-to-head on identical workloads, then
a composite workload (the star-commutation batch) through each backend.
Run from the repository root after building the extension in place:

    python benchmarks/bench_backends.py
"""

import random
import time
from fractions import Fraction as F
from itertools import combinations

from qkcomp import _termops

try:
    from qkcomp import _speedups
except ImportError:
    _speedups = None


def random_terms(rng, dim, degree):
    out = {}
    for combo in combinations(range(dim), degree):
        mask = 0
        for i in combo:
            mask |= 1 << i
        c = F(rng.randint(-9, 9), rng.randint(1, 9))
        if c:
            out[mask] = c
    return out


def bench(label, fn, repeat=3):
    best = min(timeit(fn) for _ in range(repeat))
    print(f"  {label:<46} {best * 1000:9.2f} ms")
    return best


def timeit(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def kernel_workloads(mod):
    rng = random.Random(42)
    pairs = [(random_terms(rng, 8, 2), random_terms(rng, 8, 2))
             for _ in range(400)]
    quads = [random_terms(rng, 8, 4) for _ in range(400)]
    vecs = [tuple(F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(8))
            for _ in range(400)]

    def run_wedge():
        for a, b in pairs:
            mod.wedge_terms(a, b)

    def run_star():
        for a in quads:
            mod.star_terms(mod.star_terms(a, 8), 8)

    def run_interior():
        for v, a in zip(vecs, quads):
            mod.interior_terms(v, a)

    def run_accumulate():
        acc = {}
        for a in quads:
            mod.accumulate_scaled(acc, a, F(3, 7))

    return [("wedge 400 x (deg2 ^ deg2, dim 8)", run_wedge),
            ("double star 400 x (deg 4, dim 8)", run_star),
            ("interior 400 x (deg 4, dim 8)", run_interior),
            ("accumulate 400 x (deg 4, dim 8)", run_accumulate)]


def star_commutation_batch():
    import importlib

    import qkcomp.kernel
    import qkcomp.quaternionic as q

    importlib.reload(qkcomp.kernel)
    importlib.reload(q)
    rng = random.Random(7)
    frame = q.build_frame(2, q.Layout.INTERLEAVED)
    hessians = [q.random_traceless_hessian(frame, rng) for _ in range(40)]

    def run():
        for H in hessians:
            assert q.verify_star_commutation(H)

    return run, qkcomp.kernel.BACKEND


def main():
    print("raw kernel functions")
    results = {}
    for name, mod in (("python", _termops), ("compiled", _speedups)):
        if mod is None:
            print(f"  [{name} backend unavailable]")
            continue
        print(f" backend: {name}")
        for label, fn in kernel_workloads(mod):
            results[(name, label)] = bench(label, fn)
    if _speedups is not None:
        print(" speedups (python / compiled)")
        for label, _ in kernel_workloads(_termops):
            ratio = results[("python", label)] / results[("compiled", label)]
            print(f"  {label:<46} {ratio:9.2f}x")

    print("composite workload: star-commutation batch, 40 Hessians at n=2")
    import os

    for forced in ("1", ""):
        if forced and _speedups is None:
            continue
        if forced:
            os.environ["QKCOMP_PURE"] = forced
        else:
            os.environ.pop("QKCOMP_PURE", None)
        run, backend = star_commutation_batch()
        t = min(timeit(run) for _ in range(2))
        print(f"  backend {backend:<10} {t * 1000:9.2f} ms")
    os.environ.pop("QKCOMP_PURE", None)


if __name__ == "__main__":
    main()
