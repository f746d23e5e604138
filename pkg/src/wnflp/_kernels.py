"""Numeric inner loops, compiled with numba when available.

Set ``WNFLP_NUMBA=0`` to force the pure-numpy path. Both variants of every
kernel stay importable (``*_py`` / ``*_nb``) so tests and the benchmark can
compare them directly; the unsuffixed names are the active selection.
"""
import os

import numpy as np

TNORM_CODES = {"godel": 0, "product": 1, "lukasiewicz": 2}


def _numba_enabled():
    if os.environ.get("WNFLP_NUMBA", "1").strip().lower() in ("0", "false", "no", "off"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _numba_enabled()


def maxt_closure_py(mat, tnorm):
    """Max-t transitive closure of a square fuzzy relation (vectorised Floyd-Warshall).

    Valid for any t-norm: a t-norm never exceeds min, so cycles cannot raise a
    path degree and simple paths suffice.
    """
    r = np.array(mat, dtype=np.float64, copy=True)
    n = r.shape[0]
    for k in range(n):
        col = r[:, k][:, None]
        row = r[k, :][None, :]
        if tnorm == 0:
            via = np.minimum(col, row)
        elif tnorm == 1:
            via = col * row
        else:
            via = np.maximum(col + row - 1.0, 0.0)
        np.maximum(r, via, out=r)
    return r


def _maxt_closure_loops(mat, tnorm):
    r = mat.copy()
    n = r.shape[0]
    for k in range(n):
        for i in range(n):
            a = r[i, k]
            if a == 0.0:
                continue
            for j in range(n):
                b = r[k, j]
                if tnorm == 0:
                    v = a if a < b else b
                elif tnorm == 1:
                    v = a * b
                else:
                    v = a + b - 1.0
                    if v < 0.0:
                        v = 0.0
                if v > r[i, j]:
                    r[i, j] = v
    return r


def _ancestor_sums_loops(indptr, parents, weights):
    """Sum *weights* over each node together with all of its descendants.

    The graph is given child->parent in CSR form (``parents[indptr[i]:indptr[i+1]]``
    are the direct parents of node ``i``). Every node adds its own weight once
    to each distinct ancestor, so diamonds are not double-counted.
    """
    n = indptr.shape[0] - 1
    totals = np.zeros(n, dtype=np.float64)
    stamp = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    for src in range(n):
        w = weights[src]
        if w == 0.0:
            continue
        top = 0
        stack[0] = src
        stamp[src] = src
        while top >= 0:
            node = stack[top]
            top -= 1
            totals[node] += w
            for e in range(indptr[node], indptr[node + 1]):
                p = parents[e]
                if stamp[p] != src:
                    stamp[p] = src
                    top += 1
                    stack[top] = p
    return totals


def _parents_first_order(indptr, parents):
    n = indptr.shape[0] - 1
    child_of = np.repeat(np.arange(n), np.diff(indptr))
    by_parent = np.argsort(parents, kind="stable")
    kids = child_of[by_parent].tolist()
    kid_ptr = np.concatenate(([0], np.cumsum(np.bincount(parents, minlength=n)))).tolist()
    pending = np.diff(indptr).tolist()
    order = [i for i in range(n) if pending[i] == 0]
    for node in order:
        for k in kids[kid_ptr[node]:kid_ptr[node + 1]]:
            pending[k] -= 1
            if pending[k] == 0:
                order.append(k)
    if len(order) != n:
        raise ValueError("hierarchy contains a cycle")
    return order


def ancestor_sums_py(indptr, parents, weights):
    """Same result as the loop kernel: memoised ancestor sets, then one bincount.

    Cheap when ancestor sets are small, as in taxonomies that are nearly trees.
    """
    indptr = np.asarray(indptr, dtype=np.int64)
    parents = np.asarray(parents, dtype=np.int64)
    n = indptr.shape[0] - 1
    ptr = indptr.tolist()
    par = parents.tolist()
    anc = [None] * n
    for i in _parents_first_order(indptr, parents):
        ps = par[ptr[i]:ptr[i + 1]]
        if not ps:
            anc[i] = (i,)
        elif len(ps) == 1:
            anc[i] = anc[ps[0]] + (i,)
        else:
            merged = set(anc[ps[0]])
            for p in ps[1:]:
                merged.update(anc[p])
            merged.add(i)
            anc[i] = tuple(merged)
    sizes = np.fromiter((len(a) for a in anc), dtype=np.int64, count=n)
    owners = np.repeat(np.arange(n), sizes)
    targets = np.fromiter((t for a in anc for t in a), dtype=np.int64, count=int(sizes.sum()))
    return np.bincount(targets, weights=np.asarray(weights, dtype=np.float64)[owners], minlength=n)


if USE_NUMBA:
    from numba import njit

    maxt_closure_nb = njit(cache=True)(_maxt_closure_loops)
    ancestor_sums_nb = njit(cache=True)(_ancestor_sums_loops)
    maxt_closure = maxt_closure_nb
    ancestor_sums = ancestor_sums_nb
else:
    maxt_closure_nb = None
    ancestor_sums_nb = None
    maxt_closure = maxt_closure_py
    ancestor_sums = ancestor_sums_py
