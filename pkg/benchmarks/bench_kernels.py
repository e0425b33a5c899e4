"""Time the compiled kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py --repeat 5
"""
import argparse
import statistics
import sys
import time

import numpy as np

from gcn import _backend
from gcn.constructor import CoveringCodeParams
from gcn.gf import field_new
from gcn.oracle import incidence


def timed(fn, repeat):
    out = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        out.append(time.perf_counter() - start)
    return statistics.median(out)


def packing_arrays(p):
    inc = incidence(p)
    blocks_of = [[] for _ in inc.vertices]
    for b, members in enumerate(inc.blocks):
        for v in members:
            blocks_of[v].append(b)
    ptr = np.zeros(len(blocks_of) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(bs) for bs in blocks_of])
    idx = np.array([b for bs in blocks_of for b in bs], dtype=np.int64)
    return ptr, idx, len(inc.blocks), min(len(bs) for bs in blocks_of)


def cases(rng):
    F2, F4 = field_new(2), field_new(4)
    big2 = rng.integers(0, 2, size=(64, 96))
    big4 = rng.integers(0, 4, size=(48, 64))
    many = [rng.integers(0, 2, size=(12, 20)) for _ in range(300)]
    blocks = rng.integers(0, 4, size=(14, 2, 6))
    ptr, idx, nb, mind = packing_arrays(CoveringCodeParams(5, 2, 2, 3, 2))
    return {
        "rref 64x96 GF(2)": lambda: _backend.rref(F2, big2),
        "rref 48x64 GF(4)": lambda: _backend.rref(F4, big4),
        "rank x300 12x20 GF(2)": lambda: [_backend.rank(F2, a) for a in many],
        "first_deficient r=14 alpha=3 GF(4)": lambda: _backend.first_deficient(F4, blocks, 3, 4),
        # packing search from scratch, stopped after a fixed number of nodes
        "pack_search (5,2,2;3) 200k nodes": lambda: _backend.pack_search(ptr, idx, nb, 2, 2, mind, True, 0, 200_000),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if not _backend.compiled_available():
        print("compiled kernels not built; only the Python timings are shown", file=sys.stderr)
    names = ["python"] + (["cython"] if _backend.compiled_available() else [])
    before = _backend.BACKEND
    results = {}
    try:
        for name in names:
            _backend.use(name)
            for label, fn in cases(np.random.default_rng(args.seed)).items():
                results.setdefault(label, {})[name] = timed(fn, args.repeat)
    finally:
        _backend.use(before)

    print(f"{'kernel':40s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, t in results.items():
        py, cy = t["python"], t.get("cython")
        if cy is None:
            print(f"{label:40s} {py:10.4f}")
        else:
            print(f"{label:40s} {py:10.4f} {cy:10.4f} {py / cy:8.1f}")


if __name__ == "__main__":
    main()
