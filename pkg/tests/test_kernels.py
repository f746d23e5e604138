import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wnflp import _kernels
from helpers import maxt_power_closure

TNORMS = [("godel", 0), ("product", 1), ("lukasiewicz", 2)]


def sym_matrix(values, n):
    m = np.eye(n)
    it = iter(values)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = m[j, i] = next(it)
    return m


degree = st.one_of(st.just(0.0), st.floats(0.0, 1.0))


@pytest.mark.parametrize("name,code", TNORMS)
@settings(max_examples=60, deadline=None)
@given(st.lists(degree, min_size=28, max_size=28))
def test_numpy_closure_matches_power_oracle(name, code, values):
    m = sym_matrix(values, 8)
    expect = np.array(maxt_power_closure(m.tolist(), name))
    assert np.allclose(_kernels.maxt_closure_py(m, code), expect, atol=1e-12)
    assert np.allclose(_kernels._maxt_closure_loops(m, code), expect, atol=1e-12)


@pytest.mark.skipif(_kernels.maxt_closure_nb is None, reason="numba disabled")
@pytest.mark.parametrize("code", [0, 1, 2])
def test_numba_closure_agrees(code):
    rng = np.random.default_rng(code)
    for _ in range(20):
        m = sym_matrix(np.where(rng.random(45) < 0.4, rng.random(45), 0.0), 10)
        assert np.allclose(_kernels.maxt_closure_nb(m, code), _kernels.maxt_closure_py(m, code))


def random_dag(n, rng):
    parents = [[]] + [sorted(set(rng.choice(i, size=min(i, rng.integers(1, 3)), replace=False).tolist()))
                      for i in range(1, n)]
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(p) for p in parents])
    flat = np.array([p for ps in parents for p in ps], dtype=np.int64)
    return parents, indptr, flat


def brute_sums(parents, weights):
    n = len(parents)
    out = np.zeros(n)
    for src in range(n):
        seen, stack = {src}, [src]
        while stack:
            for p in parents[stack.pop()]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        for a in seen:
            out[a] += weights[src]
    return out


@pytest.mark.parametrize("seed", range(5))
def test_ancestor_sums_set_semantics(seed):
    rng = np.random.default_rng(seed)
    parents, indptr, flat = random_dag(60, rng)
    w = rng.integers(0, 6, 60).astype(float)
    expect = brute_sums(parents, w)
    assert np.allclose(_kernels.ancestor_sums_py(indptr, flat, w), expect)
    assert np.allclose(_kernels._ancestor_sums_loops(indptr, flat, w), expect)
    if _kernels.ancestor_sums_nb is not None:
        assert np.allclose(_kernels.ancestor_sums_nb(indptr, flat, w), expect)


def test_diamond_counted_once():
    # 0 <- 1, 0 <- 2, {1, 2} <- 3
    indptr = np.array([0, 0, 1, 2, 4])
    parents = np.array([0, 0, 1, 2])
    w = np.array([0.0, 1.0, 1.0, 5.0])
    assert _kernels.ancestor_sums_py(indptr, parents, w).tolist() == [7.0, 6.0, 6.0, 5.0]


def test_cycle_rejected_by_numpy_path():
    indptr = np.array([0, 1, 2])
    parents = np.array([1, 0])
    with pytest.raises(ValueError):
        _kernels.ancestor_sums_py(indptr, parents, np.ones(2))
