import pytest

from modroot.braid import (FORWARD, INVERSE, apply_word, braid_move, check_sequence, enumerate_roots,
                           format_word, initial_sequence, is_finite_type, is_real_schur_root)
from modroot.errors import Inconclusive, OrderingError
from modroot.quiver import euler_data, euler_form

A3_ROOTS = ((0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 1, 0), (1, 1, 1))
B3_ROOTS = A3_ROOTS + ((1, 2, 0), (1, 2, 1), (1, 2, 2))


def test_a3_has_six_roots(a3, roots_of):
    rs = roots_of(a3)
    assert rs.roots == A3_ROOTS and rs.complete


@pytest.mark.parametrize("name", ["b3", "b3q"])
def test_b3_roots(name, request, roots_of):
    rs = roots_of(request.getfixturevalue(name))
    assert rs.roots == B3_ROOTS and rs.complete


def test_infinite_type_is_truncated(g2):
    rs = enumerate_roots(g2, max_coord=8)
    assert not rs.complete
    assert not is_finite_type(g2)
    with pytest.raises(Inconclusive):
        is_real_schur_root(g2, (12, 5), rs)
    assert is_real_schur_root(g2, (12, 5))


def test_roots_have_f_norm(b3, roots_of):
    ed = euler_data(b3)
    for r in roots_of(b3).roots:
        assert euler_form(ed, r, r) in b3.f


@pytest.mark.parametrize("name", ["a3", "b3", "b3q"])
def test_witnesses_replay(name, request, roots_of):
    q = request.getfixturevalue(name)
    ed = euler_data(q)
    rs = roots_of(q)
    for r, word in rs.witnesses.items():
        assert r in apply_word(ed, initial_sequence(ed), word)


@pytest.mark.parametrize("name", ["a3", "b3", "b3q"])
def test_shuffle_does_not_change_roots(name, request, roots_of):
    q = request.getfixturevalue(name)
    for seed in range(5):
        assert enumerate_roots(q, shuffle_seed=seed).roots == roots_of(q).roots


def test_braid_relations(b3):
    ed = euler_data(b3)
    s = initial_sequence(ed)
    for i in (1, 2):
        assert braid_move(ed, braid_move(ed, s, i, FORWARD), i, INVERSE) == s
    lhs = apply_word(ed, s, [(1, 1), (2, 1), (1, 1)])
    rhs = apply_word(ed, s, [(2, 1), (1, 1), (2, 1)])
    assert lhs == rhs


def test_bad_sequences(a3):
    ed = euler_data(a3)
    with pytest.raises(OrderingError):
        check_sequence(ed, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(OrderingError):
        check_sequence(ed, ((0, -1, 0),))
    with pytest.raises(IndexError):
        braid_move(ed, initial_sequence(ed), 3)


def test_real_schur_membership(a3, roots_of):
    assert is_real_schur_root(a3, (1, 1, 1), roots_of(a3))
    assert not is_real_schur_root(a3, (1, 0, 1), roots_of(a3))
    assert not is_real_schur_root(a3, (1, 1), roots_of(a3))


def test_format_word():
    assert format_word([]) == "(empty)"
    assert format_word([(1, FORWARD), (2, INVERSE)]) == "s1 s2^-1"
