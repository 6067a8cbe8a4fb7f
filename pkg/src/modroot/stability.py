"""Stability domains of real Schur roots.

For a real Schur root beta the semistable domain is the set of integer
vectors alpha with <alpha, beta> = 0 and <alpha, beta'> <= 0 for every
subroot beta'. It coincides with the set Delta(beta) of sums
sum k_i dim E_i + sum l_j dim P_j, where the E_i are the simple objects of
the perpendicular category of M(beta), k_i >= 0, and j runs over the
vertices outside the support of beta with l_j any integer.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intmat as im
from .errors import TheoremViolation, UncertifiedSubroots
from .quiver import EulerData, ValuedQuiver, euler_data, euler_form
from .report import Report


@dataclass(frozen=True)
class Certificate:
    k: tuple  # coefficients of the perpendicular simples, nonnegative
    l: tuple  # coefficients of proj_gens, integers

    def expand(self, domain: "StabilityDomain") -> tuple:
        n = len(domain.beta)
        out = [0] * n
        for c, v in itertools.chain(zip(self.k, domain.perp_simples), zip(self.l, domain.proj_gens)):
            for t in range(n):
                out[t] += c * v[t]
        return tuple(out)


@dataclass(frozen=True)
class StabilityDomain:
    ed: EulerData
    beta: tuple
    subroots: tuple
    perp_simples: tuple
    j_set: tuple  # 1-based vertices with beta_j = 0
    proj_gens: tuple
    provenance: str = "oracle"
    _coords: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def proper_subroots(self) -> tuple:
        return tuple(s for s in self.subroots if s != self.beta)


def make_domain(q: ValuedQuiver, beta: Sequence[int], subroots: Sequence[Sequence[int]],
                perp_simples: Sequence[Sequence[int]], provenance: str = "oracle") -> StabilityDomain:
    ed = euler_data(q)
    beta = tuple(beta)
    subs = tuple(sorted({tuple(s) for s in subroots} | {beta}))
    perp = tuple(sorted(tuple(e) for e in perp_simples))
    j_set = tuple(j + 1 for j, b in enumerate(beta) if b == 0)
    gens = tuple(ed.P[j - 1] for j in j_set)
    for e in perp:
        if euler_form(ed, e, beta):
            raise TheoremViolation(f"perpendicular simple {e} pairs nontrivially with {beta}", e)
    for g in gens:
        for s in subs:
            if euler_form(ed, g, s):
                raise TheoremViolation(f"<{g}, {s}> != 0 for a projective outside the support", g)
    return StabilityDomain(ed, beta, subs, perp, j_set, gens, provenance)


def delta_generators(q: ValuedQuiver, tower, beta: Sequence[int], roots: Sequence[Sequence[int]],
                     seed: int = 0) -> StabilityDomain:
    """Populate subroots and perpendicular simples from the finite-field oracle."""
    from .reps import perp_simples, subroots

    beta = tuple(beta)
    return make_domain(q, beta, subroots(tower, beta, roots, seed),
                       perp_simples(tower, beta, roots, seed), f"oracle q={tower.q} seed={seed}")


def _warn(domain: StabilityDomain) -> None:
    if not domain.provenance.startswith("oracle"):
        warnings.warn(f"subroots of {domain.beta} are {domain.provenance}", UncertifiedSubroots,
                      stacklevel=3)


def dzss_contains(domain: StabilityDomain, alpha: Sequence[int]) -> bool:
    _warn(domain)
    ed = domain.ed
    if euler_form(ed, alpha, domain.beta):
        return False
    return all(euler_form(ed, alpha, s) <= 0 for s in domain.subroots)


def interior_contains(domain: StabilityDomain, alpha: Sequence[int]) -> bool:
    _warn(domain)
    ed = domain.ed
    if euler_form(ed, alpha, domain.beta):
        return False
    return all(euler_form(ed, alpha, s) < 0 for s in domain.proper_subroots)


def _perp_coords(domain: StabilityDomain, v: Sequence[int]) -> tuple:
    """Integer coordinates of v in the basis (E_1, ..., E_{n-1}, beta)."""
    basis = im.from_columns(list(domain.perp_simples) + [domain.beta])
    key = tuple(v)
    if key not in domain._coords:
        x = im.solve(basis, v)
        if any(Fraction(c).denominator != 1 for c in x):
            raise TheoremViolation(f"perpendicular simples and {domain.beta} are not a Z-basis", v)
        domain._coords[key] = tuple(int(c) for c in x)
    return domain._coords[key]


def delta_contains(domain: StabilityDomain, alpha: Sequence[int]) -> tuple[bool, Certificate | None]:
    """Exact membership in Delta(beta), with a certificate on success.

    Writing alpha = sum a_i E_i (possible iff <alpha, beta> = 0) and each
    proj_gen as a nonnegative combination of the E_i, alpha lies in Delta iff
    a_i >= 0 at every index not covered by some proj_gen: on covered indices a
    large negative multiple of the proj_gens absorbs any deficit.
    """
    ed = domain.ed
    alpha = tuple(alpha)
    if euler_form(ed, alpha, domain.beta):
        return False, None
    m = len(domain.perp_simples)
    a = _perp_coords(domain, alpha)
    if a[m]:
        raise TheoremViolation(f"{alpha} is orthogonal to {domain.beta} but has a beta component", alpha)
    a = a[:m]
    gens = []
    for g in domain.proj_gens:
        c = _perp_coords(domain, g)
        if c[m] or any(x < 0 for x in c[:m]):
            raise TheoremViolation(f"projective {g} is not filtered by the perpendicular simples", g)
        gens.append(c[:m])
    covered = {t for c in gens for t in range(m) if c[t] > 0}
    if any(a[t] < 0 for t in range(m) if t not in covered):
        return False, None
    if all(x >= 0 for x in a):
        return True, Certificate(tuple(a), tuple(0 for _ in gens))
    T = max(-a[t] for t in range(m))
    k = tuple(a[t] + T * sum(c[t] for c in gens) for t in range(m))
    return True, Certificate(k, tuple(-T for _ in gens))


def delta_plus_contains(domain: StabilityDomain, alpha: Sequence[int]) -> bool:
    """Membership in the nonnegative span of the perpendicular simples alone."""
    ed = domain.ed
    if euler_form(ed, alpha, domain.beta):
        return False
    a = _perp_coords(domain, alpha)
    return all(x >= 0 for x in a[:-1])


def box(n: int, r: int):
    return itertools.product(range(-r, r + 1), repeat=n)


def verify_stability_theorem(domain: StabilityDomain, box_radius: int = 4,
                             raise_on_violation: bool = True) -> Report:
    """Compare the semistable domain with Delta(beta) on the lattice box [-r, r]^n."""
    rep = Report(f"stability beta={','.join(map(str, domain.beta))}",
                 ("alpha", "in_dzss", "in_delta", "certificate_k", "certificate_l"))
    rep.notes.append(f"subroots: {domain.provenance}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UncertifiedSubroots)
        for e in domain.perp_simples:
            if not dzss_contains(domain, e):
                rep.fail("perp-simple-not-semistable", e)
        for alpha in box(len(domain.beta), box_radius):
            lhs = dzss_contains(domain, alpha)
            rhs, cert = delta_contains(domain, alpha)
            if cert is not None:
                if cert.expand(domain) != alpha or any(x < 0 for x in cert.k):
                    rep.fail("bad-certificate", alpha, cert)
            if delta_plus_contains(domain, alpha) and not rhs:
                rep.fail("delta-plus-not-in-delta", alpha)
            if rhs and not lhs:
                rep.fail("delta-not-semistable", alpha)
            if lhs != rhs:
                rep.fail("mismatch", alpha, f"dzss={lhs} delta={rhs}")
            if lhs or rhs:
                rep.add(alpha, lhs, rhs, cert.k if cert else None, cert.l if cert else None)
    if raise_on_violation and not rep.ok:
        raise TheoremViolation(f"stability mismatch for {domain.beta}: {rep.failures[0]}",
                               rep.failures)
    return rep


def deleted_vertex_check(q: ValuedQuiver, domain: StabilityDomain, j: int, box_radius: int = 4,
                         raise_on_violation: bool = True) -> Report:
    """Semistable domain of beta equals the deleted-vertex domain plus Z dim P_j."""
    beta = domain.beta
    if beta[j - 1] != 0:
        raise ValueError(f"vertex {j} lies in the support of {beta}")
    small = q.delete_vertex(j)
    drop = lambda v: tuple(x for t, x in enumerate(v) if t != j - 1)
    ed_small = euler_data(small)
    pj = domain.ed.P[j - 1]
    rep = Report(f"deleted-vertex beta={','.join(map(str, beta))} j={j}",
                 ("alpha", "in_dzss", "in_deleted_plus_Pj"))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UncertifiedSubroots)
        for alpha in box(len(beta), box_radius):
            lhs = dzss_contains(domain, alpha)
            rest = drop(tuple(a - alpha[j - 1] * p for a, p in zip(alpha, pj)))
            rhs = (euler_form(ed_small, rest, drop(beta)) == 0
                   and all(euler_form(ed_small, rest, drop(s)) <= 0 for s in domain.subroots))
            if lhs != rhs:
                rep.fail("mismatch", alpha, f"dzss={lhs} deleted={rhs}")
            if lhs:
                rep.add(alpha, lhs, rhs)
    if raise_on_violation and not rep.ok:
        raise TheoremViolation(f"deleted-vertex mismatch for {beta}, j={j}", rep.failures)
    return rep


__all__ = [
    "Certificate", "StabilityDomain", "make_domain", "delta_generators", "dzss_contains",
    "interior_contains", "delta_contains", "delta_plus_contains", "verify_stability_theorem",
    "deleted_vertex_check",
]
