"""Compare the numba and numpy variants of the numeric kernels.

    python benchmarks/bench_kernels.py [--sizes 16 64 256] [--dag-nodes 80000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from wnflp import _kernels


def random_relation(n, density, rng):
    m = np.where(rng.random((n, n)) < density, rng.random((n, n)), 0.0)
    m = np.maximum(m, m.T)
    np.fill_diagonal(m, 1.0)
    return m


def random_dag(n, rng, multi=0.02):
    """Random recursive tree plus a second parent for a fraction *multi* of nodes.

    Child->parent CSR, parents have smaller indices, node 0 is the root. Depth
    grows like log n, close to the shape of a noun taxonomy.
    """
    idx = np.arange(n)
    first = (rng.random(n) * idx).astype(np.int64)
    second = (rng.random(n) * idx).astype(np.int64)
    extra = (rng.random(n) < multi) & (second != first) & (idx > 0)
    counts = np.where(idx == 0, 0, 1 + extra)
    indptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
    parents = np.empty(indptr[-1], dtype=np.int64)
    parents[indptr[1:][counts > 0] - counts[counts > 0]] = first[counts > 0]
    parents[indptr[1:][extra] - 1] = second[extra]
    weights = rng.integers(0, 5, n).astype(np.float64)
    return indptr, parents, weights


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 64, 256])
    ap.add_argument("--dag-nodes", type=int, default=80000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    have_nb = _kernels.maxt_closure_nb is not None
    if not have_nb:
        print("numba unavailable or disabled (WNFLP_NUMBA=0): numpy timings only")

    print(f"{'kernel':<16}{'size':>8}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for n in args.sizes:
        mat = random_relation(n, 0.2, rng)
        for code, name in ((0, "godel"), (1, "product"), (2, "lukasiewicz")):
            t_py = best_of(lambda: _kernels.maxt_closure_py(mat, code), args.repeat)
            row = f"{'closure/' + name[:4]:<16}{n:>8}{t_py * 1e3:>12.3f}"
            if have_nb:
                _kernels.maxt_closure_nb(mat, code)  # compile
                t_nb = best_of(lambda: _kernels.maxt_closure_nb(mat, code), args.repeat)
                assert np.allclose(_kernels.maxt_closure_nb(mat, code), _kernels.maxt_closure_py(mat, code))
                row += f"{t_nb * 1e3:>12.3f}{t_py / t_nb:>10.1f}"
            print(row)

    indptr, parents, weights = random_dag(args.dag_nodes, rng)
    t_py = best_of(lambda: _kernels.ancestor_sums_py(indptr, parents, weights), args.repeat)
    row = f"{'ancestor_sums':<16}{args.dag_nodes:>8}{t_py * 1e3:>12.3f}"
    if have_nb:
        _kernels.ancestor_sums_nb(indptr[:3], parents[:indptr[2]], weights[:2])
        t_nb = best_of(lambda: _kernels.ancestor_sums_nb(indptr, parents, weights), args.repeat)
        assert np.allclose(_kernels.ancestor_sums_nb(indptr, parents, weights),
                           _kernels.ancestor_sums_py(indptr, parents, weights))
        row += f"{t_nb * 1e3:>12.3f}{t_py / t_nb:>10.1f}"
    print(row)


if __name__ == "__main__":
    main()
