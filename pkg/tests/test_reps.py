import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modroot.quiver import euler_data, euler_form
from modroot.reps import (build_exceptional, cokernel, euler_check, hom_ext, is_division_endo,
                          is_isomorphic,
                          perp_simples, presentation, projective_rep, random_rep, subroots,
                          weight_law_check)

FIXTURES = ["a3", "b3", "g2"]
dims = st.lists(st.integers(0, 2), min_size=3, max_size=3)


@pytest.mark.parametrize("name", ["a3", "b3"])
@settings(max_examples=25, deadline=None)
@given(dims, dims, st.integers(0, 2**31))
def test_euler_identity_random_pairs(name, request, tower_of, dv, dw, seed):
    t = tower_of(request.getfixturevalue(name))
    rng = np.random.default_rng(seed)
    h, e, chi = euler_check(t, random_rep(t, dv, rng), random_rep(t, dw, rng))
    assert h - e == chi


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=2), st.lists(st.integers(0, 2), min_size=2,
       max_size=2), st.integers(0, 2**31))
def test_euler_identity_rank2(g2, tower_of, dv, dw, seed):
    t = tower_of(g2, 2)
    rng = np.random.default_rng(seed)
    h, e, chi = euler_check(t, random_rep(t, dv, rng), random_rep(t, dw, rng))
    assert h - e == chi


@pytest.mark.parametrize("name", FIXTURES)
def test_projectives(name, request, tower_of):
    q = request.getfixturevalue(name)
    t = tower_of(q)
    ed = euler_data(q)
    rng = np.random.default_rng(1)
    for i in range(1, q.n + 1):
        P = projective_rep(t, i)
        assert P.dim_K == tuple(p * f for p, f in zip(ed.P[i - 1], q.f))
        W = random_rep(t, (1,) * q.n, rng)
        he = hom_ext(t, P, W)
        assert he.ext_dim_K == 0
        assert he.hom_dim_K == q.f[i - 1] * W.dims[i - 1]


@pytest.mark.parametrize("name", ["a3", "b3"])
def test_exceptionals_are_rigid_bricks(name, request, tower_of, roots_of):
    q = request.getfixturevalue(name)
    t = tower_of(q)
    for r in roots_of(q).roots:
        M = build_exceptional(t, r)
        he = hom_ext(t, M, M)
        assert he.ext_dim_K == 0
        assert he.hom_dim_K == euler_form(euler_data(q), r, r)
        assert is_division_endo(t, M)


def test_perpendicular_simples(b3, a3, tower_of, roots_of):
    t = tower_of(b3)
    assert perp_simples(t, (1, 1, 1), roots_of(b3).roots) == [(0, 0, 1), (1, 2, 0)]
    assert perp_simples(t, (1, 2, 2), roots_of(b3).roots) == [(0, 0, 1), (0, 1, 0)]
    assert perp_simples(tower_of(a3), (1, 1, 0), roots_of(a3).roots) == [(0, 1, 0), (1, 1, 1)]


def test_subroots(b3, tower_of, roots_of):
    assert subroots(tower_of(b3), (1, 2, 0), roots_of(b3).roots) == [(1, 0, 0), (1, 1, 0), (1, 2, 0)]


def test_cokernel_dimension(b3, tower_of):
    t = tower_of(b3)
    pres = presentation(t, (1, 0, 0), (0, 0, 1), rng=np.random.default_rng(3))
    C = cokernel(pres.map)
    assert tuple(C.dims) == pres.alpha() == (0, 1, 1)


@pytest.mark.parametrize("name,size,g1,g0,beta,sigma", [
    ("a3", 3, (1, 0, 0), (0, 1, 0), (1, 1, 0), 2),
    ("a3", 3, (0, 1, 0), (1, 0, 1), (0, 1, 1), 2),
    ("b3", 3, (1, 0, 0), (0, 0, 1), (1, 2, 2), 2),
    ("b3", 3, (1, 0, 0), (0, 1, 0), (1, 2, 1), 2),
    ("b3", 3, (0, 1, 0), (1, 0, 1), (0, 1, 1), 2),
    ("b3", 2, (0, 1, 0), (0, 0, 1), (1, 2, 2), 1),
])
def test_weight_law(name, size, g1, g0, beta, sigma, request, tower_of):
    t = tower_of(request.getfixturevalue(name), size)
    res = weight_law_check(t, g1, g0, beta, pairs=100)
    assert res.sigma == sigma
    assert res.ok, res.failures[:3]
    # sign coherence: the weight is a dimension vector
    assert all(b >= 0 for b in beta)


def test_weight_law_rejects_mixed_sign(a3, tower_of):
    with pytest.raises(ValueError):
        weight_law_check(tower_of(a3), (1, 0, 0), (0, 1, 0), (1, -1, 0))


@pytest.mark.parametrize("g1,g0,beta,sigma", [
    ((0, 0), (1, 0), (0, 1), 1),
    ((0, 1), (1, 1), (0, 1), 2),
    ((1, 0), (1, 1), (1, 0), 3),
])
def test_weight_law_rank2_over_f5(g2, tower_of, g1, g0, beta, sigma):
    res = weight_law_check(tower_of(g2, 5), g1, g0, beta, pairs=50)
    assert res.sigma == sigma and res.ok


@pytest.mark.parametrize("beta", [(1, 2, 2), (1, 1, 1), (0, 1, 1)])
def test_exceptional_is_unique_up_to_iso(b3, tower_of, beta):
    t = tower_of(b3)
    assert is_isomorphic(t, build_exceptional(t, beta, seed=0), build_exceptional(t, beta, seed=5))
