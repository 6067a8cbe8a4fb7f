"""Finite fields F_p[x]/(g) and the field tower realizing a valued quiver.

Elements of GF(p^k) are coefficient vectors in F_p^k with respect to
1, x, ..., x^(k-1). The modulus is the first primitive polynomial in
lexicographic order, so x generates the multiplicative group and subfields
are found as powers of x.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import fp
from .errors import UnsupportedModulation
from .quiver import ValuedQuiver


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ValueError(f"q={q} is not a prime power")
            return p, e
    raise AssertionError


def _factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return sorted(set(out))


def _poly_mod(a: list[int], g: list[int], p: int) -> list[int]:
    """Remainder of a by monic g; coefficient lists, lowest degree first."""
    a = [x % p for x in a]
    dg = len(g) - 1
    while len(a) - 1 >= dg and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dg:
            break
        c, shift = a[-1], len(a) - 1 - dg
        for i, gi in enumerate(g):
            a[shift + i] = (a[shift + i] - c * gi) % p
        a.pop()
    return a


def _is_irreducible(g: list[int], p: int) -> bool:
    k = len(g) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            h = list(tail) + [1]
            r = _poly_mod(g, h, p)
            if not any(r):
                return False
    return True


class GF:
    """The field with p^k elements."""

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.order = p ** k
        self.modulus = _find_primitive(p, k)
        C = np.zeros((k, k), dtype=np.int64)
        for i in range(k - 1):
            C[i + 1, i] = 1
        C[:, k - 1] = [(-c) % p for c in self.modulus[:k]]
        self.companion = C  # multiplication by x
        powers = [np.eye(k, dtype=np.int64)]
        for _ in range(1, k):
            powers.append(fp.mul(powers[-1], C, p))
        self._powers = np.stack(powers)  # x^a as matrices

    def one(self) -> np.ndarray:
        v = np.zeros(self.k, dtype=np.int64)
        v[0] = 1
        return v

    def gen(self) -> np.ndarray:
        """The class of x."""
        return self._powers[min(1, self.k - 1)][:, 0].copy() if self.k > 1 else \
            np.array([(-self.modulus[0]) % self.p], dtype=np.int64)

    def mul_matrix(self, a) -> np.ndarray:
        """Matrix of multiplication by a."""
        return np.tensordot(np.asarray(a, dtype=np.int64), self._powers, axes=1) % self.p

    def mul(self, a, b) -> np.ndarray:
        return fp.mul(self.mul_matrix(a), np.asarray(b), self.p)

    def power(self, a, e: int) -> np.ndarray:
        result, base = self.one(), np.asarray(a, dtype=np.int64) % self.p
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def evaluate(self, poly: list[int], a) -> np.ndarray:
        acc = np.zeros(self.k, dtype=np.int64)
        for c in reversed(poly):
            acc = (self.mul(acc, a) + c * self.one()) % self.p
        return acc

    def elements(self):
        for t in itertools.product(range(self.p), repeat=self.k):
            yield np.array(t[::-1], dtype=np.int64)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"


@lru_cache(maxsize=None)
def _find_primitive(p: int, k: int) -> tuple:
    if k == 1:
        # x - c with c a primitive root mod p, so that x itself is primitive
        for c in range(1, p):
            if all(pow(c, (p - 1) // r, p) != 1 for r in _factors(p - 1)) or p == 2:
                return ((-c) % p, 1)
    n = p ** k - 1
    for tail in itertools.product(range(p), repeat=k):
        g = list(tail[::-1]) + [1]
        if g[0] == 0 or not _is_irreducible(g, p):
            continue
        F = _Bare(p, k, g)
        x = np.zeros(k, dtype=np.int64)
        x[1] = 1
        if all(not _is_one(F.power(x, n // r)) for r in _factors(n)):
            return tuple(g)
    raise AssertionError(f"no primitive polynomial of degree {k} over F_{p}")


class _Bare(GF):
    def __init__(self, p, k, g):
        self.p, self.k, self.modulus = p, k, list(g)
        C = np.zeros((k, k), dtype=np.int64)
        for i in range(k - 1):
            C[i + 1, i] = 1
        C[:, k - 1] = [(-c) % p for c in g[:k]]
        powers = [np.eye(k, dtype=np.int64)]
        for _ in range(1, k):
            powers.append(fp.mul(powers[-1], C, p))
        self._powers = np.stack(powers)


def _is_one(v) -> bool:
    return v[0] == 1 and not np.any(v[1:])


@lru_cache(maxsize=None)
def field(p: int, k: int) -> GF:
    return GF(p, k)


def embedding(small: GF, big: GF) -> np.ndarray:
    """Matrix (big.k x small.k) of a field embedding small -> big.

    The image of the generator is the first power of the big generator that is a
    root of the small modulus.
    """
    if big.k % small.k:
        raise ValueError(f"{small} does not embed in {big}")
    step = (big.order - 1) // (small.order - 1)
    x = big.gen()
    y0 = big.power(x, step)
    y = y0.copy()
    for _ in range(small.order - 1):
        if not np.any(big.evaluate(list(small.modulus), y)):
            break
        y = big.mul(y, y0)
    else:
        raise AssertionError("no root of the subfield modulus found")
    cols = [big.one()]
    for _ in range(1, small.k):
        cols.append(big.mul(cols[-1], y))
    return np.stack(cols, axis=1) % big.p


@dataclass
class ArrowFields:
    source: int
    target: int
    M: GF
    emb_source: np.ndarray  # F_source -> M
    emb_target: np.ndarray  # F_target -> M
    d_st: int
    d_ts: int


class FieldTower:
    """Vertex fields F_i of size q^f_i and bimodule fields M_ij of size q^(d_ij f_j)."""

    def __init__(self, q: ValuedQuiver, size: int):
        if any(z != 1 for z in q.z):
            raise UnsupportedModulation(
                f"vertex division rings with z={q.z} are not commutative fields")
        self.quiver = q
        self.q = size
        self.p, self.e = _prime_power(size)
        self.fields = [field(self.p, self.e * f) for f in q.f]
        self.arrows = []
        for a in q.arrows:
            Fi, Fj = self.fields[a.source - 1], self.fields[a.target - 1]
            M = field(self.p, self.e * a.d_st * q.f[a.target - 1])
            self.arrows.append(ArrowFields(a.source, a.target, M, embedding(Fi, M),
                                           embedding(Fj, M), a.d_st, a.d_ts))

    @property
    def n(self) -> int:
        return self.quiver.n

    def degree(self, i: int) -> int:
        """F_p-degree of the vertex field F_i (1-based)."""
        return self.fields[i - 1].k

    def __repr__(self) -> str:
        return f"FieldTower(q={self.q}, fields={self.fields}, bimodules={[a.M for a in self.arrows]})"


def build_tower(q: ValuedQuiver, size: int) -> FieldTower:
    return FieldTower(q, size)
