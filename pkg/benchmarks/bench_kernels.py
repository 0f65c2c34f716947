"""Compare the compiled kernels with the numpy/pure-Python twin.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import itertools
import random
import time

import numpy as np

from pregroups import _pykernels
from pregroups.constructions import leary_stancu_pregroup, robinson_pregroup
from pregroups.instances import ls_c4_square_identity, ls_d8_outer, robinson_d8_a4

try:
    from pregroups import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    cases = [("LS(C4)", leary_stancu_pregroup(ls_c4_square_identity())),
             ("LS(D8)", leary_stancu_pregroup(ls_d8_outer())),
             ("Rob(D8,A4)", robinson_pregroup(robinson_d8_a4()))]
    print(f"{'instance':12} {'kernel':16} " + " ".join(f"{b:>10}" for b, _ in backends))
    for name, P in cases:
        mul = np.asarray(P.table, dtype=np.int32)
        inv = np.asarray(P.inv, dtype=np.int32)
        words = [[rng.randrange(P.n) for _ in range(8)] for _ in range(2000)]
        forms = sorted({tuple(_pykernels.reduce_word(_pykernels.prepare(mul, inv), w)[0]) for w in
                        (list(t) for t in itertools.product(range(min(P.n, 12)), repeat=3))})[:400]
        rows = {"check_axioms": [], "reduce_word x2000": [], "equal_matrix": []}
        results = {}
        for bname, mod in backends:
            tabs = mod.prepare(mul, inv)
            t, r1 = _timed(lambda: mod.check_axioms(tabs, 20, True), args.repeat)
            rows["check_axioms"].append(t)
            t, r2 = _timed(lambda: [mod.reduce_word(tabs, w)[0] for w in words], args.repeat)
            rows["reduce_word x2000"].append(t)
            t, r3 = _timed(lambda: mod.equal_reduced_matrix(tabs, [list(f) for f in forms]), args.repeat)
            rows["equal_matrix"].append(t)
            results[bname] = (r1, r2, np.asarray(r3).tolist())
        agree = len({repr(v) for v in results.values()}) == 1
        for k, ts in rows.items():
            print(f"{name:12} {k:16} " + " ".join(f"{t * 1e3:9.2f}ms" for t in ts))
        print(f"{name:12} {'outputs agree':16} {agree}")


if __name__ == "__main__":
    main()
