from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modroot import fp
from modroot import intmat as im
from modroot.errors import IntegralityError

small_ints = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


@settings(max_examples=80, deadline=None)
@given(square(3))
def test_inverse_is_exact(a):
    a = im.mat(a)
    if im.det(a) == 0:
        return
    assert im.matmul(a, im.inverse(a)) == im.identity(3)


@settings(max_examples=80, deadline=None)
@given(square(3))
def test_nullspace_vectors_are_killed(a):
    for v in im.nullspace(a, 3):
        assert all(x == 0 for x in im.matvec(im.mat(a), v))


def test_to_int_rejects_fractions():
    with pytest.raises(IntegralityError):
        im.to_int(((Fraction(1, 2),),))
    assert im.to_int(((Fraction(4, 2),),)) == ((2,),)


def test_vector_helpers():
    assert im.parse_vec("1, 2,-3") == (1, 2, -3)
    assert im.fmt_vec((1, 2)) == "1,2"
    assert im.primitive((0, -4, 6)) == (0, -2, 3)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**31))
def test_fp_rank_nullity(p, r, c, seed):
    a = np.random.default_rng(seed).integers(0, p, (r, c))
    ns = fp.nullspace(a, p)
    assert fp.rank(a, p) + ns.shape[1] == c
    assert not np.any(fp.mul(a, ns, p))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(0, 2**31))
def test_fp_inverse_and_det(p, n, seed):
    a = np.random.default_rng(seed).integers(0, p, (n, n))
    if fp.det(a, p) == 0:
        assert fp.rank(a, p) < n
        return
    inv = fp.inverse(a, p)
    assert np.array_equal(fp.mul(a, inv, p), np.eye(n, dtype=np.int64))
    assert fp.det(a, p) * fp.det(inv, p) % p == 1


def test_fp_solve_inconsistent():
    assert fp.solve(np.array([[1, 0], [1, 0]]), np.array([0, 1]), 2) is None
