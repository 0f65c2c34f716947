import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import ALL, built
from pregroups import _pykernels, kernels

ck = pytest.importorskip("pregroups._ckernels")


def tables(P):
    return np.asarray(P.table, dtype=np.int32), np.asarray(P.inv, dtype=np.int32)


@pytest.mark.parametrize("name", ALL)
def test_check_axioms_agree(name):
    _, P = built(name)
    mul, inv = tables(P)
    rng = random.Random(name)
    for _ in range(5):
        m = mul.copy()
        x, y = rng.randrange(P.n), rng.randrange(P.n)
        m[x, y] = rng.randrange(-1, P.n)
        a = _pykernels.check_axioms(_pykernels.prepare(m, inv), 50, True)
        b = ck.check_axioms(ck.prepare(m, inv), 50, True)
        assert a == b


@pytest.mark.parametrize("name", ALL)
@given(data=st.data())
def test_reduce_and_intercalate_agree(name, data):
    _, P = built(name)
    mul, inv = tables(P)
    tp, tc = _pykernels.prepare(mul, inv), ck.prepare(mul, inv)
    w1 = data.draw(st.lists(st.integers(0, P.n - 1), max_size=8))
    w2 = data.draw(st.lists(st.integers(0, P.n - 1), max_size=8))
    r1, s1 = _pykernels.reduce_word(tp, w1)
    assert (r1, s1) == ck.reduce_word(tc, w1)
    r2 = _pykernels.reduce_word(tp, w2)[0]
    assert _pykernels.intercalate(tp, r1, r2) == ck.intercalate(tc, r1, r2)
    m1 = _pykernels.equal_reduced_matrix(tp, [r1, r2])
    m2 = ck.equal_reduced_matrix(tc, [r1, r2])
    assert np.array_equal(np.asarray(m1), np.asarray(m2))


def test_prepare_accepts_read_only_arrays():
    _, P = built("ls_c3_inversion")
    assert not P.arr.flags.writeable
    t = ck.prepare(P.arr, np.asarray(P.inv, dtype=np.int32))
    assert ck.check_axioms(t, 5, True) == []


def test_pure_python_switch():
    env = dict(os.environ, PREGROUPS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from pregroups import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("cython", "python")
