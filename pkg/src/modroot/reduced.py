"""Reduced weights, the reduced exchange matrix and reduced c-vectors.

With Z = diag(z_i), z_i = f_i / n_i, the reduced exchange matrix is Z B Z^-1
and the reduced c-matrix is Z C Z^-1. The reduced weight of a root is
Z beta / z_beta, where z_beta is the z-value of the endomorphism ring of M_beta.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from . import intmat as im
from .cluster import Fan, initial_state, mutate_matrix, random_word
from .errors import AmbiguousEndoClass
from .quiver import ValuedQuiver, euler_data, euler_form
from .report import Report


def z_beta(q: ValuedQuiver, beta: Sequence[int], override: int | None = None) -> int:
    """z of End(M_beta), matched through f_beta = <beta, beta> against the vertex fields."""
    if override is not None:
        return override
    f_beta = euler_form(euler_data(q), beta, beta)
    zs = {z for f, z in zip(q.f, q.z) if f == f_beta}
    if len(zs) != 1:
        raise AmbiguousEndoClass(
            f"<beta, beta> = {f_beta} for beta={tuple(beta)} matches z values {sorted(zs)}; "
            "pass z_beta explicitly")
    return zs.pop()


def beta_bar(q: ValuedQuiver, beta: Sequence[int], z: int | None = None) -> tuple:
    zb = z_beta(q, beta, z)
    v = [Fraction(zi * b, zb) for zi, b in zip(q.z, beta)]
    return im.to_int([v], f"reduced weight of {tuple(beta)}")[0]


def conjugate(q: ValuedQuiver, M: Sequence[Sequence[int]]) -> tuple:
    """Z M Z^-1, asserted integral."""
    z = q.z
    n = len(z)
    return im.to_int([[Fraction(z[i] * M[i][j], z[j]) for j in range(n)] for i in range(n)],
                     "Z M Z^-1")


def reduced_table(q: ValuedQuiver, roots: Sequence[Sequence[int]]) -> list[tuple]:
    """(beta, z_beta, beta_bar) for each root, in sorted order."""
    return [(tuple(r), z_beta(q, r), beta_bar(q, r)) for r in sorted(tuple(r) for r in roots)]


def _sign(v) -> int:
    return 1 if any(x > 0 for x in v) else -1


def reduced_weights(q: ValuedQuiver, fan: Fan, n_words: int = 100, word_len: int = 12,
                    seed: int = 0) -> Report:
    """Check c-bar_j = -eps_j beta-bar_j on every fan state and that conjugation commutes with mutation."""
    ed = euler_data(q)
    n = ed.n
    rep = Report(f"reduced weights {q.name}", ("state", "column", "c_vector", "c_bar", "z_j",
                                               "z_beta", "beta_bar"))
    if conjugate(q, ed.B) != ed.B_reduced:
        rep.fail("reduced-B", "initial", ed.B_reduced)
    for s_idx, st in enumerate(fan.states):
        Cbar = conjugate(q, st.C)
        for j, (c, cb) in enumerate(zip(im.columns(st.C), im.columns(Cbar))):
            beta = tuple(abs(x) for x in c)
            eps = -_sign(c)
            try:
                zb = z_beta(q, beta)
            except AmbiguousEndoClass:
                zb = q.z[j]
                rep.notes.append(f"z_beta of {beta} taken positionally")
            bb = beta_bar(q, beta, zb)
            if cb != tuple(-eps * x for x in bb):
                rep.fail("c-bar", f"state {s_idx} col {j + 1}", (cb, bb))
            if zb != q.z[j]:
                rep.fail("z-positional", f"state {s_idx} col {j + 1}", (q.z[j], zb))
            rep.add(s_idx, j + 1, c, cb, q.z[j], zb, bb)
    rng = random.Random(seed)
    init = initial_state(ed)
    for w in range(n_words):
        word = random_word(n, rng.randint(1, word_len), rng)
        ext = init.B + init.C
        ext_bar = ed.B_reduced + init.C
        for k in word:
            ext = mutate_matrix(ext, k - 1, n)
            ext_bar = mutate_matrix(ext_bar, k - 1, n)
        if conjugate(q, ext[:n]) != ext_bar[:n] or conjugate(q, ext[n:]) != ext_bar[n:]:
            rep.fail("conjugation-commutes", f"word {w}", word)
    return rep


__all__ = ["z_beta", "beta_bar", "conjugate", "reduced_table", "reduced_weights"]
