"""Time the compiled kernels against their pure-Python twins.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import itertools
import timeit

from srdops import _pykernels
from srdops.corpus import named
from srdops.dideals import poset_of
from srdops.simplicial import build_complex, mask_of
from srdops.weyl import GF, QQ, _nonzero_row, oracle_bound

try:
    from srdops import _ckernels
except ImportError:
    _ckernels = None


def membership_sweep(mod, K, field, hi=1):
    """Oracle scan for every (a, b) with entries <= ``hi``."""
    n = K.n_vertices
    table = bytes(K.face_table)
    box = list(itertools.product(range(hi + 1), repeat=n))
    hits = 0
    for a in box:
        for b in box:
            bound = oracle_bound(b)
            nz = [_nonzero_row(bi, bound, field, False) for bi in b]
            hits += mod.ideal_violation(table, n, list(a), list(b), bound, nz) is None
    return hits


def hk_count(mod, K, q):
    return mod.count_face_box(bytes(K.face_table), K.n_vertices, q)


def lattice(mod, below):
    return len(mod.downsets(below))


def tables(mod, n, facets):
    return mod.face_table(n, facets)


def cases():
    K_B, K_C = named()["K_B"], named()["K_C"]
    octahedron = build_complex(6, [[i, j, k] for i in (0, 3) for j in (1, 4) for k in (2, 5)])
    tetra = build_complex(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    P = poset_of(tetra)
    below = []
    for j in P.proper:
        below.append(mask_of(k for k, i in enumerate(P.proper) if P.leq(i, j)))
    big = [(1 << 14) - 1 ^ (1 << v) for v in range(14)]
    return [
        ("oracle sweep K_B, QQ, entries <= 1", lambda m: membership_sweep(m, K_B, QQ)),
        ("oracle sweep K_C, GF(2), entries <= 1", lambda m: membership_sweep(m, K_C, GF(2))),
        ("HK count K_C, q=16", lambda m: hk_count(m, K_C, 16)),
        ("HK count octahedron, q=9", lambda m: hk_count(m, octahedron, 9)),
        (f"down-sets, tetrahedron boundary ({len(below)} stars)", lambda m: lattice(m, below)),
        ("face table, boundary of 13-simplex", lambda m: tables(m, 14, big)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [_pykernels] + ([_ckernels] if _ckernels else [])
    if _ckernels is None:
        print("compiled extension not built; timing the Python backend only")
    print(f"{'case':<44}" + "".join(f"{m.BACKEND:>12}" for m in backends) + f"{'speedup':>10}")
    for label, fn in cases():
        results = [fn(m) for m in backends]
        if len(set(map(str, results))) != 1:
            raise SystemExit(f"backends disagree on {label}")
        times = [min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat)) for m in backends]
        speed = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 else ""
        print(f"{label:<44}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
