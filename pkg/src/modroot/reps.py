"""Representations of a modulated quiver over finite fields.

Layouts over the prime field F_p, with k_i the F_p-degree of F_i:

* V_i = F_i^a has basis w^c e_u at index u*k_i + c (w the generator of F_i).
* For an arrow i -> j with bimodule field M, fix an F_i-basis mu_0..mu_{r-1}
  of M. Then V_i (x)_{F_i} M has basis (w^c e_u) (x) mu_s at index
  s*(a*k_i) + u*k_i + c, so g (x) 1 is the block diagonal kron(I_r, g).
* A structure map is an F_p-matrix from V_i (x) M to V_j that commutes with
  the right action of F_j on M.

Hom is the kernel and Ext the cokernel of the usual map
  (g_i) -> (phi^W (g_i (x) 1) - g_j phi^V)
from vertexwise F_i-linear maps to arrowwise F_j-linear maps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import fp
from .errors import CountMismatch, Inconclusive, NotSquare, SearchExhausted
from .fields import FieldTower
from .quiver import euler_data, euler_form, unit


# -- per-arrow tensor structure ------------------------------------------------

class ArrowData:
    def __init__(self, tower: FieldTower, index: int):
        af = tower.arrows[index]
        self.index = index
        self.source, self.target = af.source, af.target
        p = tower.p
        Fi, Fj, M = tower.fields[af.source - 1], tower.fields[af.target - 1], af.M
        self.ki, self.kj, self.kM = Fi.k, Fj.k, M.k
        self.r = M.k // Fi.k
        emb_i = af.emb_source
        cols: list[np.ndarray] = []
        span = np.zeros((M.k, 0), dtype=np.int64)
        for t in range(M.k):
            mu = np.zeros(M.k, dtype=np.int64)
            mu[t] = 1
            block = np.stack([M.mul(emb_i[:, c], mu) for c in range(Fi.k)], axis=1)
            trial = np.hstack([span, block])
            if fp.rank(trial, p) > span.shape[1]:
                span = trial
                cols.append(block)
            if span.shape[1] == M.k:
                break
        self.basis = np.hstack(cols)  # columns (s, c): w_i^c mu_s
        binv = fp.inverse(self.basis, p)
        right = M.mul_matrix(fp.mul(af.emb_target, Fj.gen(), p))
        self.right_gen = fp.mul(fp.mul(binv, right, p), self.basis, p)
        self.p = p

    @lru_cache(maxsize=None)
    def tensor_action(self, a: int) -> np.ndarray:
        """Right action of the F_j generator on V_i (x) M for dim V_i = a."""
        r, k = self.r, self.ki
        t4 = self.right_gen.reshape(r, k, r, k)
        out = np.einsum("xayb,uv->xuayvb", t4, np.eye(a, dtype=np.int64))
        n = r * a * k
        return out.reshape(n, n) % self.p


@lru_cache(maxsize=None)
def _vertex_action(companion_key, a: int):
    C = np.array(companion_key[1], dtype=np.int64).reshape(companion_key[0], companion_key[0])
    return np.kron(np.eye(a, dtype=np.int64), C)


class Oracle:
    """Cached structure attached to a tower: arrow data and linear-map bases."""

    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.p = tower.p
        self.arrows = [ArrowData(tower, k) for k in range(len(tower.arrows))]
        self._fj_cache: dict = {}
        self._exc_cache: dict = {}

    def vertex_action(self, i: int, a: int) -> np.ndarray:
        C = self.tower.fields[i - 1].companion
        return _vertex_action((C.shape[0], tuple(C.ravel().tolist())), a)

    def k(self, i: int) -> int:
        return self.tower.fields[i - 1].k

    def fj_linear_basis(self, arrow: int, a_src: int, a_tgt: int) -> np.ndarray:
        """Basis (stack of matrices) of F_j-linear maps V_i (x) M -> V_j."""
        key = (arrow, a_src, a_tgt)
        if key not in self._fj_cache:
            ad = self.arrows[arrow]
            A = ad.tensor_action(a_src)
            L = self.vertex_action(ad.target, a_tgt)
            m, n = L.shape[0], A.shape[0]
            if m * n == 0:
                self._fj_cache[key] = np.zeros((0, m, n), dtype=np.int64)
                return self._fj_cache[key]
            cons = (np.kron(np.eye(m, dtype=np.int64), A.T)
                    - np.kron(L, np.eye(n, dtype=np.int64))) % self.p
            ns = fp.nullspace(cons, self.p, m * n)
            self._fj_cache[key] = ns.T.reshape(-1, m, n)
        return self._fj_cache[key]


_ORACLES: dict = {}


def oracle_for(tower: FieldTower) -> Oracle:
    key = id(tower)
    if key not in _ORACLES or _ORACLES[key].tower is not tower:
        _ORACLES[key] = Oracle(tower)
    return _ORACLES[key]


# -- representations and morphisms ---------------------------------------------

@dataclass(frozen=True, eq=False)
class ModulatedRep:
    tower: FieldTower
    dims: tuple
    maps: tuple  # one F_p-matrix per arrow, in tower.arrows order
    label: str = ""

    def space_dim(self, i: int) -> int:
        """F_p-dimension of V_i (1-based)."""
        return self.dims[i - 1] * self.tower.fields[i - 1].k

    @property
    def dim_K(self) -> tuple:
        return tuple(a * f for a, f in zip(self.dims, self.tower.quiver.f))


@dataclass(frozen=True, eq=False)
class RepMorphism:
    source: ModulatedRep
    target: ModulatedRep
    mats: tuple  # per vertex, target.space_dim(i) x source.space_dim(i)

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """self after other."""
        p = self.source.tower.p
        return RepMorphism(other.source, self.target,
                           tuple(fp.mul(a, b, p) for a, b in zip(self.mats, other.mats)))

    def is_injective(self) -> bool:
        p = self.source.tower.p
        return all(fp.rank(g, p) == g.shape[1] for g in self.mats if g.shape[1])

    def is_surjective(self) -> bool:
        p = self.source.tower.p
        return all(fp.rank(g, p) == g.shape[0] for g in self.mats if g.shape[0])

    def is_iso(self) -> bool:
        return (all(g.shape[0] == g.shape[1] for g in self.mats)
                and self.is_injective())

    def is_zero(self) -> bool:
        return not any(np.any(g % self.source.tower.p) for g in self.mats)


def check_rep(rep: ModulatedRep) -> None:
    """Assert every structure map commutes with the right F_j action."""
    orc = oracle_for(rep.tower)
    p = orc.p
    for ad, phi in zip(orc.arrows, rep.maps):
        A = ad.tensor_action(rep.dims[ad.source - 1])
        L = orc.vertex_action(ad.target, rep.dims[ad.target - 1])
        if np.any((fp.mul(phi, A, p) - fp.mul(L, phi, p)) % p):
            raise AssertionError(f"structure map on arrow {ad.source}->{ad.target} "
                                 "is not linear over the target field")


def check_morphism(g: RepMorphism) -> None:
    orc = oracle_for(g.source.tower)
    p = orc.p
    V, W = g.source, g.target
    for i in range(1, V.tower.n + 1):
        gi = g.mats[i - 1]
        if np.any((fp.mul(gi, orc.vertex_action(i, V.dims[i - 1]), p)
                   - fp.mul(orc.vertex_action(i, W.dims[i - 1]), gi, p)) % p):
            raise AssertionError(f"morphism is not F_{i}-linear")
    for ad, pv, pw in zip(orc.arrows, V.maps, W.maps):
        gi, gj = g.mats[ad.source - 1], g.mats[ad.target - 1]
        lhs = fp.mul(pw, np.kron(np.eye(ad.r, dtype=np.int64), gi), p)
        if np.any((lhs - fp.mul(gj, pv, p)) % p):
            raise AssertionError(f"morphism fails to commute on arrow {ad.source}->{ad.target}")


def zero_rep(tower: FieldTower) -> ModulatedRep:
    return rep_from_coeffs(tower, (0,) * tower.n, [])


def rep_space_basis(tower: FieldTower, dims: Sequence[int]) -> list[np.ndarray]:
    orc = oracle_for(tower)
    return [orc.fj_linear_basis(ad.index, dims[ad.source - 1], dims[ad.target - 1])
            for ad in orc.arrows]


def rep_space_dim(tower: FieldTower, dims: Sequence[int]) -> int:
    """F_p-dimension of the space of representations with these dimensions."""
    return sum(b.shape[0] for b in rep_space_basis(tower, dims))


def rep_from_coeffs(tower: FieldTower, dims: Sequence[int], coeffs: Sequence[int],
                    label: str = "") -> ModulatedRep:
    """Representation whose structure maps have the given coordinates in the rep-space basis."""
    orc = oracle_for(tower)
    dims = tuple(int(d) for d in dims)
    maps, pos = [], 0
    for ad, basis in zip(orc.arrows, rep_space_basis(tower, dims)):
        m = dims[ad.target - 1] * ad.kj
        n = ad.r * dims[ad.source - 1] * ad.ki
        c = np.asarray(coeffs[pos:pos + basis.shape[0]], dtype=np.int64)
        pos += basis.shape[0]
        maps.append(np.tensordot(c, basis, axes=1) % orc.p if basis.shape[0]
                    else np.zeros((m, n), dtype=np.int64))
    return ModulatedRep(tower, dims, tuple(maps), label)


def random_rep(tower: FieldTower, dims: Sequence[int], rng: np.random.Generator,
               label: str = "") -> ModulatedRep:
    """Uniform sample from the representation space."""
    return rep_from_coeffs(tower, dims, rng.integers(0, tower.p, rep_space_dim(tower, dims)),
                           label)


# -- Hom and Ext ----------------------------------------------------------------

def _linearity_rows(orc: Oracle, i: int, a: int, b: int) -> np.ndarray:
    """Constraints on vec(g), g: F_i^a -> F_i^b, for F_i-linearity."""
    LA, LB = orc.vertex_action(i, a), orc.vertex_action(i, b)
    m, n = LB.shape[0], LA.shape[0]
    return (np.kron(np.eye(m, dtype=np.int64), LA.T) - np.kron(LB, np.eye(n, dtype=np.int64))) % orc.p


def _delta_matrix(orc: Oracle, V: ModulatedRep, W: ModulatedRep, offsets, total) -> np.ndarray:
    """Matrix of (g_i) -> (phi^W (g_i (x) 1) - g_j phi^V) on the vectorized unknowns."""
    blocks = []
    for ad, pv, pw in zip(orc.arrows, V.maps, W.maps):
        i, j = ad.source, ad.target
        nVi, nWi = V.space_dim(i), W.space_dim(i)
        mVj, mWj = V.space_dim(j), W.space_dim(j)
        rows = mWj * ad.r * nVi
        block = np.zeros((rows, total), dtype=np.int64)
        if rows:
            phi = pw.reshape(mWj, ad.r, nWi)
            part_i = np.einsum("xsy,cd->xscyd", phi, np.eye(nVi, dtype=np.int64))
            part_i = part_i.reshape(rows, nWi * nVi)
            block[:, offsets[i - 1]:offsets[i - 1] + nWi * nVi] += part_i
            part_j = np.kron(np.eye(mWj, dtype=np.int64), pv.T)
            block[:, offsets[j - 1]:offsets[j - 1] + mWj * mVj] -= part_j
        blocks.append(block % orc.p)
    if not blocks:
        return np.zeros((0, total), dtype=np.int64)
    return np.vstack(blocks)


@dataclass
class HomExt:
    hom_basis: list
    hom_dim_K: int
    ext_dim_K: int
    hom_dim_Fp: int
    ext_dim_Fp: int


def hom_ext(tower: FieldTower, V: ModulatedRep, W: ModulatedRep) -> HomExt:
    orc = oracle_for(tower)
    p, n = orc.p, tower.n
    shapes = [(W.space_dim(i), V.space_dim(i)) for i in range(1, n + 1)]
    sizes = [a * b for a, b in shapes]
    offsets = list(itertools.accumulate([0] + sizes))
    total = offsets[-1]
    # vertexwise F_i-linear maps
    dom = np.zeros((total, 0), dtype=np.int64)
    dom_blocks = []
    for i in range(1, n + 1):
        if not sizes[i - 1]:
            continue
        ns = fp.nullspace(_linearity_rows(orc, i, V.dims[i - 1], W.dims[i - 1]), p, sizes[i - 1])
        blk = np.zeros((total, ns.shape[1]), dtype=np.int64)
        blk[offsets[i - 1]:offsets[i], :] = ns
        dom_blocks.append(blk)
    if dom_blocks:
        dom = np.hstack(dom_blocks)
    delta = _delta_matrix(orc, V, W, offsets, total)
    image = fp.mul(delta, dom, p) if dom.shape[1] else np.zeros((delta.shape[0], 0), dtype=np.int64)
    kernel = fp.nullspace(image, p, dom.shape[1]) if dom.shape[1] else np.zeros((0, 0), dtype=np.int64)
    homs = fp.mul(dom, kernel, p) if kernel.size else np.zeros((total, 0), dtype=np.int64)
    target_dim = sum(orc.fj_linear_basis(ad.index, V.dims[ad.source - 1],
                                         W.dims[ad.target - 1]).shape[0] for ad in orc.arrows)
    rank = fp.rank(image, p) if image.size else 0
    hom_fp = homs.shape[1]
    ext_fp = target_dim - rank
    assert hom_fp == dom.shape[1] - rank
    basis = []
    for c in range(hom_fp):
        vec = homs[:, c]
        mats = tuple(vec[offsets[i]:offsets[i + 1]].reshape(shapes[i]) for i in range(n))
        basis.append(RepMorphism(V, W, mats))
    e = tower.e
    if hom_fp % e or ext_fp % e:
        raise AssertionError("Hom/Ext dimensions are not K-dimensions")
    return HomExt(basis, hom_fp // e, ext_fp // e, hom_fp, ext_fp)


def euler_check(tower: FieldTower, V: ModulatedRep, W: ModulatedRep) -> tuple[int, int, int]:
    """(dim_K Hom, dim_K Ext, <dim V, dim W>)."""
    he = hom_ext(tower, V, W)
    ed = euler_data(tower.quiver)
    return he.hom_dim_K, he.ext_dim_K, euler_form(ed, V.dims, W.dims)


def combine(basis: Sequence[RepMorphism], coeffs: Sequence[int]) -> RepMorphism:
    V, W = basis[0].source, basis[0].target
    p = V.tower.p
    mats = []
    for i in range(V.tower.n):
        acc = np.zeros_like(basis[0].mats[i])
        for c, g in zip(coeffs, basis):
            if c:
                acc = acc + int(c) * g.mats[i]
        mats.append(acc % p)
    return RepMorphism(V, W, tuple(mats))


def zero_morphism(V: ModulatedRep, W: ModulatedRep) -> RepMorphism:
    return RepMorphism(V, W, tuple(np.zeros((W.space_dim(i), V.space_dim(i)), dtype=np.int64)
                                   for i in range(1, V.tower.n + 1)))


def identity_morphism(V: ModulatedRep) -> RepMorphism:
    return RepMorphism(V, V, tuple(np.eye(V.space_dim(i), dtype=np.int64)
                                   for i in range(1, V.tower.n + 1)))


def iter_homs(tower: FieldTower, basis: Sequence[RepMorphism], nonzero: bool = True):
    """All F_p-combinations of the basis, in lexicographic coefficient order."""
    for coeffs in itertools.product(range(tower.p), repeat=len(basis)):
        if nonzero and not any(coeffs):
            continue
        yield combine(basis, coeffs)


# -- F-bases, quotients, direct sums ---------------------------------------------

def free_basis(action: np.ndarray, k: int, p: int) -> np.ndarray:
    """Columns (s, c) = action^c b_s: an F-basis of a space with F-action, F of degree k."""
    N = action.shape[0]
    span = np.zeros((N, 0), dtype=np.int64)
    for t in range(N):
        if span.shape[1] == N:
            break
        b = np.zeros(N, dtype=np.int64)
        b[t] = 1
        block = [b]
        for _ in range(1, k):
            block.append(fp.mul(action, block[-1], p))
        trial = np.hstack([span, np.stack(block, axis=1)])
        if fp.rank(trial, p) == trial.shape[1]:
            span = trial
    assert span.shape[1] == N
    return span


def quotient(image: np.ndarray, action: np.ndarray, k: int, p: int):
    """Quotient of F_p^N by an F-stable subspace spanned by the columns of image.

    Returns (Q, S): Q maps to standard coordinates of F^c and S is an F-linear
    section with Q S = I.
    """
    N = action.shape[0]
    im_basis = fp.colspace(image, p) if image.size else np.zeros((N, 0), dtype=np.int64)
    span, comp = im_basis, []
    for t in range(N):
        if span.shape[1] == N:
            break
        b = np.zeros((N, 1), dtype=np.int64)
        b[t] = 1
        trial = np.hstack([span, b])
        if fp.rank(trial, p) == trial.shape[1]:
            span = trial
            comp.append(t)
    cmp = np.eye(N, dtype=np.int64)[:, comp]
    full_inv = fp.inverse(span, p)
    q0 = full_inv[im_basis.shape[1]:, :]
    c = len(comp)
    if c == 0:
        return np.zeros((0, N), dtype=np.int64), np.zeros((N, 0), dtype=np.int64)
    abar = fp.mul(fp.mul(q0, action, p), cmp, p)
    bbar = free_basis(abar, k, p)
    Q = fp.mul(fp.inverse(bbar, p), q0, p)
    lifts = fp.mul(cmp, bbar, p)
    cols = []
    for s in range(c // k):
        w = lifts[:, s * k]
        cols.append(w)
        for _ in range(1, k):
            cols.append(fp.mul(action, cols[-1], p))
    S = np.stack(cols, axis=1)
    return Q, S


def direct_sum(reps: Sequence[ModulatedRep], label: str = "") -> ModulatedRep:
    tower = reps[0].tower
    orc = oracle_for(tower)
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(tower.n))
    maps = []
    for ad in orc.arrows:
        i, j = ad.source, ad.target
        m_tot = sum(r.space_dim(j) for r in reps)
        n_tot = sum(r.space_dim(i) for r in reps)
        out = np.zeros((m_tot, ad.r, n_tot), dtype=np.int64)
        mo = no = 0
        for r in reps:
            m, n = r.space_dim(j), r.space_dim(i)
            out[mo:mo + m, :, no:no + n] = r.maps[ad.index].reshape(m, ad.r, n)
            mo, no = mo + m, no + n
        maps.append(out.reshape(m_tot, ad.r * n_tot))
    return ModulatedRep(tower, dims, tuple(maps), label)


# -- projectives and presentations ----------------------------------------------

def projective_rep(tower: FieldTower, i: int) -> ModulatedRep:
    """P_i: paths out of i, built vertex by vertex in decreasing order."""
    cache = oracle_for(tower).__dict__.setdefault("_proj", {})
    if i in cache:
        return cache[i]
    orc = oracle_for(tower)
    p, n = orc.p, tower.n
    dims = [0] * n
    maps: dict = {}
    for j in range(i, 0, -1):
        kj = orc.k(j)
        parts = []  # (arrow index or None, F_p dim, action)
        if j == i:
            parts.append((None, kj, orc.vertex_action(j, 1)))
        for ad in orc.arrows:
            if ad.target == j and dims[ad.source - 1]:
                A = ad.tensor_action(dims[ad.source - 1])
                parts.append((ad.index, A.shape[0], A))
        if not parts:
            continue
        N = sum(d for _, d, _ in parts)
        action = np.zeros((N, N), dtype=np.int64)
        off = 0
        for _, d, A in parts:
            action[off:off + d, off:off + d] = A
            off += d
        B = free_basis(action, kj, p)
        coords = fp.inverse(B, p)
        dims[j - 1] = N // kj
        off = 0
        for idx, d, _ in parts:
            if idx is not None:
                maps[idx] = coords[:, off:off + d]
            off += d
    full = []
    for ad in orc.arrows:
        if ad.index in maps:
            full.append(maps[ad.index])
        else:
            m = dims[ad.target - 1] * ad.kj
            full.append(np.zeros((m, ad.r * dims[ad.source - 1] * ad.ki), dtype=np.int64))
    rep = ModulatedRep(tower, tuple(dims), tuple(full), f"P{i}")
    cache[i] = rep
    return rep


def projective_sum(tower: FieldTower, gamma: Sequence[int]) -> ModulatedRep:
    """P(gamma) = sum of gamma_i copies of P_i."""
    parts = [projective_rep(tower, i) for i in range(1, tower.n + 1)
             for _ in range(int(gamma[i - 1]))]
    if not parts:
        return zero_rep(tower)
    return direct_sum(parts, "P(" + ",".join(str(g) for g in gamma) + ")")


def cokernel(f: RepMorphism) -> ModulatedRep:
    W = f.target
    tower = W.tower
    orc = oracle_for(tower)
    p = orc.p
    Q, S, dims = [], [], []
    for i in range(1, tower.n + 1):
        k = orc.k(i)
        q_i, s_i = quotient(f.mats[i - 1], orc.vertex_action(i, W.dims[i - 1]), k, p)
        Q.append(q_i)
        S.append(s_i)
        dims.append(q_i.shape[0] // k)
    maps = []
    for ad, pw in zip(orc.arrows, W.maps):
        lift = np.kron(np.eye(ad.r, dtype=np.int64), S[ad.source - 1])
        maps.append(fp.mul(fp.mul(Q[ad.target - 1], pw, p), lift, p))
    return ModulatedRep(tower, tuple(dims), tuple(maps), "coker")


def kernel_dims(f: RepMorphism) -> tuple:
    """Dimension vector of the kernel, over the vertex fields."""
    tower = f.source.tower
    return tuple((g.shape[1] - fp.rank(g, tower.p)) // tower.fields[i].k if g.size
                 else g.shape[1] // tower.fields[i].k
                 for i, g in enumerate(f.mats))


@dataclass(frozen=True, eq=False)
class Presentation:
    gamma1: tuple
    gamma0: tuple
    source: ModulatedRep
    target: ModulatedRep
    map: RepMorphism

    def alpha(self) -> tuple:
        """Dimension vector: L^t alpha = gamma0 - gamma1."""
        P = euler_data(self.source.tower.quiver).P
        n = len(self.gamma0)
        return tuple(sum(P[i][j] * (self.gamma0[i] - self.gamma1[i]) for i in range(n))
                     for j in range(n))


def presentation(tower: FieldTower, gamma1: Sequence[int], gamma0: Sequence[int],
                 f: RepMorphism | None = None, rng: np.random.Generator | None = None) -> Presentation:
    src, tgt = projective_sum(tower, gamma1), projective_sum(tower, gamma0)
    if f is None:
        basis = hom_ext(tower, src, tgt).hom_basis
        if rng is None or not basis:
            f = zero_morphism(src, tgt)
        else:
            f = combine(basis, rng.integers(0, tower.p, len(basis)))
    return Presentation(tuple(gamma1), tuple(gamma0), src, tgt, f)


def rep_of_presentation_cokernel(pres: Presentation) -> ModulatedRep:
    return cokernel(pres.map)


# -- exceptional modules -------------------------------------------------------------

def is_division_endo(tower: FieldTower, M: ModulatedRep, basis=None, rng=None,
                     limit: int = 1 << 16) -> bool:
    """Every nonzero endomorphism invertible; exhaustive up to `limit` elements."""
    if basis is None:
        basis = hom_ext(tower, M, M).hom_basis
    if not basis:
        return False
    if tower.p ** len(basis) <= limit:
        return all(g.is_iso() for g in iter_homs(tower, basis))
    rng = rng or np.random.default_rng(0)
    for _ in range(512):
        c = rng.integers(0, tower.p, len(basis))
        if any(c) and not combine(basis, c).is_iso():
            return False
    return True


def _exceptional_ok(tower: FieldTower, M: ModulatedRep, target_end: int) -> bool:
    he = hom_ext(tower, M, M)
    if he.ext_dim_K != 0 or he.hom_dim_K != target_end:
        return False
    return is_division_endo(tower, M, he.hom_basis)


def build_exceptional(tower: FieldTower, beta: Sequence[int], seed: int = 0,
                      draws: int = 4096, exhaustive_limit: int = 16) -> ModulatedRep:
    """An exceptional representation of dimension vector beta.

    Seeded draws come first; if none succeeds and the representation space has
    K-dimension at most exhaustive_limit, every point is tried in
    lexicographic order.
    """
    beta = tuple(int(b) for b in beta)
    orc = oracle_for(tower)
    key = (beta, seed, draws)
    if key in orc._exc_cache:
        return orc._exc_cache[key]
    ed = euler_data(tower.quiver)
    target_end = euler_form(ed, beta, beta)
    label = "M(" + ",".join(map(str, beta)) + ")"
    dim = rep_space_dim(tower, beta)
    found = None
    if target_end > 0:
        if dim == 0:
            M = rep_from_coeffs(tower, beta, [], label)
            if _exceptional_ok(tower, M, target_end):
                found = M
        else:
            rng = np.random.default_rng([seed, *beta])
            for _ in range(draws):
                M = rep_from_coeffs(tower, beta, rng.integers(0, tower.p, dim), label)
                if _exceptional_ok(tower, M, target_end):
                    found = M
                    break
            if found is None and dim // tower.e <= exhaustive_limit:
                for coeffs in itertools.product(range(tower.p), repeat=dim):
                    M = rep_from_coeffs(tower, beta, coeffs, label)
                    if _exceptional_ok(tower, M, target_end):
                        found = M
                        break
    if found is None:
        raise SearchExhausted(f"no exceptional representation of dimension {beta} "
                              f"over F_{tower.q}; try a larger q")
    orc._exc_cache[key] = found
    return found


def is_isomorphic(tower: FieldTower, V: ModulatedRep, W: ModulatedRep, limit: int = 1 << 16) -> bool:
    if V.dims != W.dims:
        return False
    basis = hom_ext(tower, V, W).hom_basis
    if not basis:
        return all(d == 0 for d in V.dims)
    if tower.p ** len(basis) > limit:
        raise Inconclusive("Hom space too large to scan for an isomorphism")
    return any(g.is_iso() for g in iter_homs(tower, basis))


def is_subroot(tower: FieldTower, beta_sub: Sequence[int], beta: Sequence[int], seed: int = 0,
               limit: int = 1 << 20, samples: int = 256) -> bool:
    """Whether M(beta_sub) embeds in M(beta)."""
    if any(a > b for a, b in zip(beta_sub, beta)):
        return False
    Msub = build_exceptional(tower, beta_sub, seed)
    M = build_exceptional(tower, beta, seed)
    basis = hom_ext(tower, Msub, M).hom_basis
    if not basis:
        return False
    if tower.p ** len(basis) <= limit:
        return any(g.is_injective() for g in iter_homs(tower, basis))
    rng = np.random.default_rng([seed, *beta_sub, *beta])
    for _ in range(samples):
        if combine(basis, rng.integers(0, tower.p, len(basis))).is_injective():
            return True
    raise Inconclusive(f"no embedding {tuple(beta_sub)} -> {tuple(beta)} among {samples} samples")


def subroots(tower: FieldTower, beta: Sequence[int], roots: Sequence[Sequence[int]],
             seed: int = 0) -> list[tuple]:
    return sorted(tuple(g) for g in roots if is_subroot(tower, g, beta, seed))


def perp_simples(tower: FieldTower, beta: Sequence[int], roots: Sequence[Sequence[int]],
                 seed: int = 0) -> list[tuple]:
    """Dimension vectors of the simple objects of the left perpendicular category of M(beta)."""
    from .braid import check_sequence
    from .errors import OrderingError

    beta = tuple(beta)
    n = tower.n
    M = build_exceptional(tower, beta, seed)
    cands = []
    for g in sorted(tuple(r) for r in roots):
        he = hom_ext(tower, build_exceptional(tower, g, seed), M)
        if he.hom_dim_K == 0 and he.ext_dim_K == 0:
            cands.append(g)
    simples = [g for g in cands
               if not any(h != g and is_subroot(tower, h, g, seed) for h in cands)]
    if len(simples) != n - 1:
        raise CountMismatch(f"perpendicular category of {beta} has {len(simples)} simples, "
                            f"expected {n - 1}: {simples}")
    ed = euler_data(tower.quiver)
    for order in itertools.permutations(simples):
        try:
            check_sequence(ed, (beta,) + order)
            break
        except OrderingError:
            continue
    else:
        if simples:
            raise CountMismatch(f"{simples} do not complete {beta} to an exceptional sequence")
    return simples


# -- semi-invariants ---------------------------------------------------------------

def _coords_in(basis: Sequence[RepMorphism], g: RepMorphism, p: int) -> np.ndarray:
    A = np.stack([np.concatenate([m.ravel() for m in b.mats]) for b in basis], axis=1)
    y = np.concatenate([m.ravel() for m in g.mats])
    x = fp.solve(A, y, p)
    if x is None:
        raise AssertionError("morphism is not in the span of the Hom basis")
    return x.ravel()


def hom_induced_matrix(tower: FieldTower, f: RepMorphism, M: ModulatedRep,
                       bases: tuple | None = None) -> np.ndarray:
    """Matrix of Hom(f, M): Hom(target f, M) -> Hom(source f, M), h -> h f."""
    p = tower.p
    b0 = bases[0] if bases else hom_ext(tower, f.target, M).hom_basis
    b1 = bases[1] if bases else hom_ext(tower, f.source, M).hom_basis
    cols = [_coords_in(b1, h.compose(f), p) for h in b0]
    if not cols:
        return np.zeros((len(b1), 0), dtype=np.int64)
    return np.stack(cols, axis=1) % p


def det_semiinvariant(tower: FieldTower, pres: Presentation, M: ModulatedRep,
                      bases: tuple | None = None) -> int:
    """Determinant over F_p of Hom(f, M) in fixed bases."""
    if bases is None:
        bases = (hom_ext(tower, pres.target, M).hom_basis, hom_ext(tower, pres.source, M).hom_basis)
    if len(bases[0]) != len(bases[1]):
        raise NotSquare(f"dim Hom(P(g0), M) = {len(bases[0])} but dim Hom(P(g1), M) = {len(bases[1])}")
    if not bases[0]:
        return 1
    return fp.det(hom_induced_matrix(tower, pres.map, M, bases), tower.p)


def char_det(tower: FieldTower, g: RepMorphism, i: int) -> int:
    """Determinant over F_p of the action of an endomorphism on the top of V at vertex i."""
    V = g.source
    orc = oracle_for(tower)
    p = orc.p
    N = V.space_dim(i)
    if N == 0:
        return 1
    images = [np.zeros((N, 0), dtype=np.int64)]
    for ad, phi in zip(orc.arrows, V.maps):
        if ad.target == i and phi.size:
            images.append(phi)
    Q, S = quotient(np.hstack(images), orc.vertex_action(i, V.dims[i - 1]), orc.k(i), p)
    if Q.shape[0] == 0:
        return 1
    return fp.det(fp.mul(fp.mul(Q, g.mats[i - 1], p), S, p), p)


def random_automorphism(tower: FieldTower, V: ModulatedRep, rng: np.random.Generator,
                        basis=None, tries: int = 1000) -> RepMorphism:
    basis = basis if basis is not None else hom_ext(tower, V, V).hom_basis
    if not basis:  # the zero representation
        return identity_morphism(V)
    for _ in range(tries):
        g = combine(basis, rng.integers(0, tower.p, len(basis)))
        if g.is_iso():
            return g
    raise SearchExhausted("no invertible endomorphism sampled")


def simple_rep(tower: FieldTower, i: int) -> ModulatedRep:
    return rep_from_coeffs(tower, unit(tower.n, i), [], f"S{i}")


@dataclass
class WeightLawResult:
    sigma: int
    pairs: int
    failures: list  # (sigma(g f h), predicted)
    coker_dims: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def weight_law_check(tower: FieldTower, gamma1: Sequence[int], gamma0: Sequence[int],
                     beta: Sequence[int], pairs: int = 100, seed: int = 0,
                     draws: int = 32) -> WeightLawResult:
    """sigma_beta(g f h) = sigma_beta(f) prod chi_i(g)^beta_i chi_i(h)^beta_i over random g, h.

    Det-weights are dimension vectors, so they are sign-coherent by construction;
    this is asserted before sampling.
    """
    if any(b < 0 for b in beta) or not any(beta):
        raise ValueError(f"det-weight {tuple(beta)} is not a nonzero dimension vector")
    rng = np.random.default_rng([seed, *gamma1, *gamma0, *beta])
    M = build_exceptional(tower, beta, seed)
    for _ in range(draws):  # prefer a presentation off the zero locus of sigma
        pres = presentation(tower, gamma1, gamma0, rng=rng)
        bases = (hom_ext(tower, pres.target, M).hom_basis, hom_ext(tower, pres.source, M).hom_basis)
        sigma = det_semiinvariant(tower, pres, M, bases)
        if sigma:
            break
    E0 = hom_ext(tower, pres.target, pres.target).hom_basis
    E1 = hom_ext(tower, pres.source, pres.source).hom_basis
    p = tower.p
    bad = []
    for _ in range(pairs):
        g = random_automorphism(tower, pres.target, rng, E0)
        h = random_automorphism(tower, pres.source, rng, E1)
        moved = Presentation(pres.gamma1, pres.gamma0, pres.source, pres.target,
                             g.compose(pres.map).compose(h))
        lhs = det_semiinvariant(tower, moved, M, bases)
        rhs = sigma
        for i, b in enumerate(beta, start=1):
            rhs = rhs * pow(char_det(tower, g, i), b, p) * pow(char_det(tower, h, i), b, p) % p
        if lhs != rhs:
            bad.append((lhs, rhs))
    return WeightLawResult(sigma, pairs, bad, cokernel(pres.map).dims)


__all__ = [
    "Oracle", "oracle_for", "ModulatedRep", "RepMorphism", "Presentation", "HomExt",
    "check_rep", "check_morphism", "random_rep", "rep_from_coeffs", "rep_space_dim",
    "hom_ext", "euler_check", "combine", "iter_homs", "free_basis", "quotient", "direct_sum",
    "projective_rep", "projective_sum", "cokernel", "kernel_dims", "presentation",
    "rep_of_presentation_cokernel", "build_exceptional", "is_division_endo", "is_isomorphic",
    "is_subroot", "subroots", "perp_simples", "det_semiinvariant", "char_det",
    "hom_induced_matrix", "random_automorphism", "simple_rep", "zero_morphism",
    "identity_morphism", "WeightLawResult", "weight_law_check",
]
