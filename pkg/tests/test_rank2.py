from fractions import Fraction

import pytest

from modroot.errors import TheoremViolation
from modroot.rank2 import (chart, consecutive_formula_check, rank2_rho, rank2_sequences, rho_orbits)

FINITE = [(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 1, 2), (1, 3, 3, 1), (3, 1, 1, 3), (0, 0, 1, 1)]


@pytest.mark.parametrize("d1,d2,s", [(1, 1, 3), (1, 2, 4), (2, 1, 4), (1, 3, 6), (3, 1, 6), (0, 0, 2)])
def test_s_values(d1, d2, s):
    st = rank2_sequences(d1, d2, d2, d1)
    assert st.s == s and st.finite


@pytest.mark.parametrize("d1,d2", [(2, 2), (4, 1), (1, 4), (3, 3)])
def test_infinite_flag(d1, d2):
    st = rank2_sequences(d1, d2, d2, d1, steps=10)
    assert not st.finite
    assert len(st.Y) == 12 and len(st.Z) == 12


def test_a2_lists():
    st = rank2_sequences(1, 1, 1, 1)
    assert st.Y == ((1, 0), (1, 1), (0, 1))
    assert st.Z == ((0, 1), (1, 1), (1, 0))


def test_b2_lists():
    st = rank2_sequences(1, 2, 2, 1)
    assert st.Y == ((1, 0), (1, 1), (1, 2), (0, 1))


def test_kronecker_preprojectives():
    st = rank2_sequences(2, 2, 1, 1, steps=4)
    assert st.Y[:4] == ((1, 0), (2, 1), (3, 2), (4, 3))


def test_unbalanced_valuation():
    with pytest.raises(ValueError):
        rank2_sequences(1, 2, 1, 1)


def test_rho_examples():
    st = rank2_sequences(1, 1, 1, 1)
    assert rank2_rho(st, ((0, 1), "Y1[1]")) == ((-1, 0), "Y2[1]")
    assert rank2_rho(st, ((-1, 0), "Y2[1]")) == ((0, -1), "Y1")
    assert rank2_rho(st, ((0, -1), "Y1")) == ((1, 0), "Y2")
    # mirror: reverse with negated roots
    assert rank2_rho(st, ((1, 0), "Y2[1]")) == ((0, -1), "Y1[1]")


@pytest.mark.parametrize("d", FINITE)
def test_formula_on_finite_types(d):
    st = rank2_sequences(*d)
    rep = consecutive_formula_check(st)
    assert rep.ok, rep.failures
    assert sum(len(o) for o in rho_orbits(st)) == 2 * st.s + 4


@pytest.mark.parametrize("d", [(2, 2, 1, 1), (4, 1, 1, 4)])
def test_formula_on_infinite_types(d):
    assert consecutive_formula_check(rank2_sequences(*d, steps=8)).ok


def printed_rows(d1, d2, f1, f2, Y, Z):
    m = f1 * d1
    lin = lambda a, u, b, v: tuple(a * x + b * y for x, y in zip(u, v))
    return [
        (f1, (0, m), -d1, "-", lin(d1, Z[1], -1, Z[2])),
        (f2, (0, m), -d2, "-", lin(d2, Z[0], -1, Z[1])),
        (f1, (0, m), -d1, "+", lin(-1, Z[0], 0, Z[0])),
        (f2, (0, m), -d2, "+", Y[0]),
        (f1, (-m, 0), -d1, "-", lin(d1, Y[0], 1, Z[0])),
        (f2, (0, m), -d2, "-", lin(d2, Y[1], -1, Y[0])),
    ]




@pytest.mark.parametrize("d", [(1, 2, 2, 1), (1, 3, 3, 1)], ids=["B2", "G2"])
def test_chart_matches_printed_rows(d):
    st = rank2_sequences(*d)
    rows = chart(st)
    m = st.m
    for t, (row, want) in enumerate(zip(rows, printed_rows(*d, st.Y, st.Z))):
        f, pairing, b, sign, formula = want
        assert row["f"] == f
        assert row["b"] == Fraction(b)
        assert row["sign"] == sign
        assert row["predicted"] == row["gamma2"] == formula
        got = (row["pair_10"], row["pair_01"])
        # the printed rows 4 and 5 carry their two pairings in swapped columns
        if t == 3:
            assert pairing == (0, m) and got == (-m, 0)
        elif t == 4:
            assert pairing == (-m, 0) and got == (0, m)
        else:
            assert got == pairing


def test_wrong_shape_guard(monkeypatch):
    import modroot.rank2 as r2
    monkeypatch.setitem(r2._S_OF, 1, 5)
    with pytest.raises(TheoremViolation):
        r2.rank2_sequences(1, 1, 1, 1)
