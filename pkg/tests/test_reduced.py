import pytest

from modroot.errors import AmbiguousEndoClass
from modroot.quiver import Arrow, ValuedQuiver, euler_data
from modroot.reduced import beta_bar, conjugate, reduced_table, reduced_weights, z_beta

TABLE = [
    ((0, 0, 1), 1, (0, 0, 1)),
    ((0, 1, 0), 1, (0, 1, 0)),
    ((0, 1, 1), 1, (0, 1, 1)),
    ((1, 0, 0), 2, (1, 0, 0)),
    ((1, 1, 0), 1, (2, 1, 0)),
    ((1, 1, 1), 1, (2, 1, 1)),
    ((1, 2, 0), 2, (1, 1, 0)),
    ((1, 2, 1), 1, (2, 2, 1)),
    ((1, 2, 2), 2, (1, 1, 1)),
]


def test_quaternion_table(b3q, roots_of):
    assert reduced_table(b3q, roots_of(b3q).roots) == TABLE


def test_reduced_exchange_matrix(b3q):
    assert euler_data(b3q).B_reduced == ((0, -2, 0), (1, 0, -1), (0, 1, 0))
    assert conjugate(b3q, euler_data(b3q).B) == euler_data(b3q).B_reduced


@pytest.mark.parametrize("name", ["a3", "b3"])
def test_trivial_z_is_identity(name, request, roots_of):
    q = request.getfixturevalue(name)
    ed = euler_data(q)
    assert ed.B_reduced == ed.B
    for r in roots_of(q).roots:
        assert beta_bar(q, r) == r


@pytest.mark.parametrize("name", ["a3", "b3", "b3q", "g2"])
def test_reduced_b_is_integral(name, request):
    q = request.getfixturevalue(name)
    assert all(isinstance(x, int) for row in euler_data(q).B_reduced for x in row)


@pytest.mark.parametrize("name", ["a3", "b3", "b3q"])
def test_reduced_weights_on_fan(name, request, fan_of):
    q = request.getfixturevalue(name)
    rep = reduced_weights(q, fan_of(q), n_words=100)
    assert rep.ok, rep.failures[:3]


def test_ambiguous_endomorphism_class():
    q = ValuedQuiver((4, 4), (2, 4), (Arrow(2, 1, 2, 2),), "amb")
    with pytest.raises(AmbiguousEndoClass):
        z_beta(q, (1, 0))
    assert z_beta(q, (1, 0), override=2) == 2
    assert beta_bar(q, (1, 0), z=2) == (1, 0)
