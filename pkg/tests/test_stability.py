import warnings

import pytest

from modroot.errors import TheoremViolation, UncertifiedSubroots
from modroot.stability import (delta_contains, delta_generators, deleted_vertex_check, dzss_contains,
                               make_domain, verify_stability_theorem)


def domain(q, tower_of, roots_of, beta):
    return delta_generators(q, tower_of(q), beta, roots_of(q).roots)


@pytest.mark.parametrize("name", ["a3", "b3"])
def test_stability_all_roots(name, request, tower_of, roots_of):
    q = request.getfixturevalue(name)
    for beta in roots_of(q).roots:
        d = domain(q, tower_of, roots_of, beta)
        assert verify_stability_theorem(d, 4).ok
        for j, b in enumerate(beta, start=1):
            if b == 0:
                assert deleted_vertex_check(q, d, j, 3).ok


def test_certificates_in_d111(b3, tower_of, roots_of):
    d = domain(b3, tower_of, roots_of, (1, 1, 1))
    assert d.perp_simples == ((0, 0, 1), (1, 2, 0))
    ok, cert = delta_contains(d, (1, 2, 2))
    assert ok and cert.k == (2, 1)
    ok, cert = delta_contains(d, (1, 2, 1))
    assert ok and cert.k == (1, 1)


def test_projective_generator_certificate(a3, tower_of, roots_of):
    d = domain(a3, tower_of, roots_of, (0, 0, 1))
    ok, cert = delta_contains(d, (-1, 0, 0))
    assert ok and cert.expand(d) == (-1, 0, 0)
    assert min(cert.l) < 0
    assert dzss_contains(d, (-1, 0, 0))


def test_user_domain_warns(b3):
    d = make_domain(b3, (1, 1, 1), [(1, 0, 0), (1, 1, 0)], [(0, 0, 1), (1, 2, 0)], "user file x")
    with pytest.warns(UncertifiedSubroots):
        dzss_contains(d, (0, 0, 1))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        verify_stability_theorem(d, 2)


def test_wrong_perp_is_rejected(b3):
    with pytest.raises(TheoremViolation):
        make_domain(b3, (1, 1, 1), [], [(1, 0, 0), (0, 1, 0)])


def test_deleted_vertex_inside_support(a3, tower_of, roots_of):
    with pytest.raises(ValueError):
        deleted_vertex_check(a3, domain(a3, tower_of, roots_of, (1, 1, 1)), 2)
