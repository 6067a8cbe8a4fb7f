"""Braid-group action on dimension vectors of exceptional sequences.

A root sequence (b_1, ..., b_n) satisfies <b_k, b_i> = 0 for k > i and, when
complete, its members form a Z-basis of Z^n. The forward move at position i
replaces (b_i, b_{i+1}) by (b*, b_i); the inverse move replaces it by
(b_{i+1}, b**). Real Schur roots are exactly the vectors that occur in the
orbit of the simple sequence (e_n, ..., e_1).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intmat as im
from .errors import (AmbiguousSign, Inconclusive, NonExceptionalAxis, OrderingError,
                     Unresolvable)
from .quiver import EulerData, ValuedQuiver, euler_data, euler_form, reflect, unit

FORWARD = 1
INVERSE = -1

DEFAULT_MAX_COORD = 64
DEFAULT_MAX_SEQUENCES = 200_000


def _nonneg_nonzero(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v) and any(v)


def check_sequence(ed: EulerData, seq: Sequence[Sequence[int]]) -> None:
    """Raise OrderingError unless seq satisfies the exceptional-sequence conditions."""
    for v in seq:
        if not _nonneg_nonzero(v):
            raise OrderingError(f"{tuple(v)} is not a nonzero nonnegative vector")
    for i in range(len(seq)):
        for k in range(i + 1, len(seq)):
            if euler_form(ed, seq[k], seq[i]):
                raise OrderingError(f"<b_{k + 1}, b_{i + 1}> != 0 in {tuple(seq)}")
    if len(seq) == ed.n and abs(im.det(im.transpose(seq))) != 1:
        raise OrderingError(f"{tuple(seq)} does not generate Z^{ed.n}")


def initial_sequence(q_or_ed) -> tuple:
    ed = q_or_ed if isinstance(q_or_ed, EulerData) else euler_data(q_or_ed)
    seq = tuple(unit(ed.n, i) for i in range(ed.n, 0, -1))
    check_sequence(ed, seq)
    return seq


def _pick_sign(v: tuple) -> tuple:
    neg = tuple(-x for x in v)
    ok = [w for w in (v, neg) if _nonneg_nonzero(w)]
    if len(ok) != 1:
        raise AmbiguousSign(f"no unique nonnegative sign for {v}")
    return ok[0]


def solve_slot(ed: EulerData, seq: Sequence[Sequence[int]], pos: int) -> tuple:
    """The unique nonnegative vector fitting slot pos (0-based) of a full sequence.

    Solves <v, b_j> = 0 for earlier slots, <b_k, v> = 0 for later slots, and asks
    that the completed sequence is a Z-basis; used when the reflection shortcut
    is unavailable.
    """
    n = ed.n
    E = ed.E
    rows = []
    for j, b in enumerate(seq):
        if j < pos:
            rows.append(tuple(sum(E[a][c] * b[c] for c in range(n)) for a in range(n)))
        elif j > pos:
            rows.append(tuple(sum(b[c] * E[c][a] for c in range(n)) for a in range(n)))
    basis = im.nullspace(rows, n)
    if len(basis) != 1:
        raise Unresolvable(f"slot {pos + 1} is not determined ({len(basis)}-dim solutions)")
    u = im.primitive(basis[0])
    full = [tuple(b) for b in seq]
    full[pos] = u
    if abs(im.det(im.transpose(full))) != 1:
        raise Unresolvable(f"no integral generator fits slot {pos + 1}")
    try:
        return _pick_sign(u)
    except AmbiguousSign:
        raise Unresolvable(f"slot {pos + 1}: {u} has mixed signs") from None


def braid_move(ed: EulerData, seq: Sequence[Sequence[int]], i: int,
               direction: int = FORWARD) -> tuple:
    """Apply sigma_i (direction=1) or its inverse (direction=-1); i is 1-based."""
    if not 1 <= i < len(seq):
        raise IndexError(f"position {i} out of range for length {len(seq)}")
    a, b = tuple(seq[i - 1]), tuple(seq[i])
    new = [tuple(v) for v in seq]
    if direction == FORWARD:
        new[i - 1], new[i] = None, a
        slot, axis, moved = i - 1, a, b
    elif direction == INVERSE:
        new[i - 1], new[i] = b, None
        slot, axis, moved = i, b, a
    else:
        raise ValueError("direction must be 1 or -1")
    try:
        v = _pick_sign(reflect(ed, axis, moved))
    except (AmbiguousSign, NonExceptionalAxis):
        if len(seq) != ed.n:
            raise
        new[slot] = tuple(0 for _ in range(ed.n))
        v = solve_slot(ed, new, slot)
    new[slot] = v
    out = tuple(new)
    check_sequence(ed, out)
    return out


@dataclass(frozen=True)
class RootSet:
    roots: tuple
    complete: bool
    bound_used: tuple  # (max_coord, max_sequences)
    n_sequences: int
    witnesses: dict = field(default_factory=dict, compare=False, repr=False)

    def __contains__(self, beta) -> bool:
        return tuple(beta) in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.roots)
            object.__setattr__(self, "_cached_set", s)
        return s


def enumerate_roots(q: ValuedQuiver, max_coord: int = DEFAULT_MAX_COORD,
                    max_sequences: int = DEFAULT_MAX_SEQUENCES,
                    shuffle_seed: int | None = None) -> RootSet:
    """Breadth-first closure of the simple sequence under all braid moves.

    Witnesses record, for every root, a braid word (list of (i, direction))
    reaching a sequence that contains it. shuffle_seed permutes the move order
    and must not change the resulting root set.
    """
    ed = euler_data(q)
    start = initial_sequence(ed)
    moves = [(i, d) for i in range(1, ed.n) for d in (FORWARD, INVERSE)]
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    parent: dict = {start: None}
    queue = deque([start])
    roots: dict = {}
    complete = True

    def word_of(s):
        w = []
        while parent[s] is not None:
            s, mv = parent[s]
            w.append(mv)
        return tuple(reversed(w))

    while queue:
        seq = queue.popleft()
        for v in seq:
            if v not in roots:
                roots[v] = seq
        order = list(moves)
        if rng is not None:
            rng.shuffle(order)
        for mv in order:
            nxt = braid_move(ed, seq, *mv)
            if nxt in parent:
                continue
            if max(max(v) for v in nxt) > max_coord:
                complete = False
                continue
            if len(parent) >= max_sequences:
                complete = False
                continue
            parent[nxt] = (seq, mv)
            queue.append(nxt)
    witnesses = {r: word_of(s) for r, s in roots.items()}
    return RootSet(tuple(sorted(roots)), complete, (max_coord, max_sequences), len(parent),
                   witnesses)


def apply_word(ed: EulerData, seq, word) -> tuple:
    for i, d in word:
        seq = braid_move(ed, seq, i, d)
    return seq


def is_finite_type(q: ValuedQuiver) -> bool:
    """Positive definiteness of the symmetrized form, by leading principal minors."""
    ed = euler_data(q)
    S = im.add(ed.E, im.transpose(ed.E))
    return all(im.det(tuple(r[:k] for r in S[:k])) > 0 for k in range(1, ed.n + 1))


def is_real_schur_root(q: ValuedQuiver, beta: Sequence[int], rootset: RootSet | None = None) -> bool:
    ed = euler_data(q)
    beta = tuple(beta)
    if len(beta) != ed.n or not _nonneg_nonzero(beta):
        return False
    if euler_form(ed, beta, beta) not in q.f:
        return False
    rs = rootset if rootset is not None else enumerate_roots(q)
    if beta in rs:
        return True
    if rs.complete:
        return False
    raise Inconclusive(f"{beta} not found and root enumeration hit its caps")


def format_word(word) -> str:
    return " ".join(f"s{i}" if d == FORWARD else f"s{i}^-1" for i, d in word) or "(empty)"


__all__ = [
    "FORWARD", "INVERSE", "RootSet", "check_sequence", "initial_sequence", "braid_move",
    "solve_slot", "enumerate_roots", "apply_word", "is_finite_type", "is_real_schur_root",
    "format_word", "Fraction",
]
