import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ffcount import _purekernels, kernels
from ffcount.field import field_from_order

needs_compiled = pytest.mark.skipif(kernels.compiled is None, reason="compiled extension not built")


@needs_compiled
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 16]), st.integers(1, 3), st.data())
def test_shift_add_backends_agree(q, m, data):
    f = field_from_order(q)
    n = q**m
    src = np.array(data.draw(st.lists(st.integers(0, 1000), min_size=n, max_size=n)), dtype=np.int64)
    v = data.draw(st.integers(0, n - 1))
    mult = data.draw(st.integers(1, 50))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    kernels.compiled.shift_add(a, src, v, mult, f.add_table, q, m)
    _purekernels.shift_add(b, src, v, mult, f.add_table, q, m)
    assert np.array_equal(a, b)
    support = [(data.draw(st.integers(0, n - 1)), data.draw(st.integers(1, 4))) for _ in range(3)]
    assert np.array_equal(
        kernels.compiled.convolve(src, support, f.add_table, q, m),
        _purekernels.convolve(src, support, f.add_table, q, m),
    )


def test_shift_add_definition():
    f = field_from_order(5)
    src = np.arange(25, dtype=np.int64)
    dst = np.zeros(25, dtype=np.int64)
    v = 1 * 5 + 3
    kernels.shift_add(dst, src, v, 2, f.add_table, 5, 2)
    for s in range(25):
        s1, s2 = divmod(s, 5)
        t = f.add(s1, 1) * 5 + f.add(s2, 3)
        assert dst[t] == 2 * src[s]


def test_object_arrays_use_numpy_path():
    f = field_from_order(3)
    src = np.array([2**70, 1, 0], dtype=object)
    out = kernels.convolve(src, [(1, 1)], f.add_table, 3, 1)
    assert out.dtype == object and list(out) == [0, 2**70, 1]


def test_count_dtype():
    assert kernels.count_dtype(2**63 - 1) == np.int64
    assert kernels.count_dtype(2**63) is object


def test_pure_fallback_selected_by_environment():
    env = dict(os.environ, FFCOUNT_PURE="1")
    code = "from ffcount import kernels, count_points_dp, WeightedDiagonalSystem, make_field;" \
        "print(kernels.BACKEND, count_points_dp(WeightedDiagonalSystem(make_field(5), (2,), (1, 1), (0,))).count)"
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.split() == ["numpy", "9"]
