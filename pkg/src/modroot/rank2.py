"""Rank-2 hereditary algebras F_1 <- F_2: preprojectives, preinjectives and consecutive roots.

Objects are labelled "Y<i>" (preprojective), "Z<j>" (preinjective) and
"Y1[1]", "Y2[1]" (shifted projectives). In finite type Z_j = Y_{s-j+1} and
labels are normalized to the Y form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import TheoremViolation
from .report import Report

SHIFTED = ("Y1[1]", "Y2[1]")
_S_OF = {0: 2, 1: 3, 2: 4, 3: 6}


@dataclass(frozen=True)
class Rank2State:
    d1: int
    d2: int
    f1: int
    f2: int
    Y: tuple  # Y[0] = dim Y_1
    Z: tuple  # Z[0] = dim Z_1
    s: int | None  # None for infinite type

    @property
    def m(self) -> int:
        return self.f1 * self.d1

    @property
    def finite(self) -> bool:
        return self.s is not None

    def euler(self, x, y) -> int:
        """<x, y> for the quiver 1 <- 2 with E = [[f1, 0], [-m, f2]]."""
        return self.f1 * x[0] * y[0] + self.f2 * x[1] * y[1] - self.m * x[1] * y[0]

    def d(self, i: int) -> int:
        """d_i with the index taken mod 2."""
        return self.d1 if i % 2 else self.d2

    def dim(self, label: str) -> tuple:
        if label == "Y1[1]":
            return tuple(-x for x in self.Y[0])
        if label == "Y2[1]":
            return tuple(-x for x in self.Y[1])
        kind, idx = label[0], int(label[1:])
        lst = self.Y if kind == "Y" else self.Z
        if not 1 <= idx <= len(lst):
            raise KeyError(f"{label} is beyond the computed range")
        return lst[idx - 1]

    def normalize(self, label: str) -> str:
        if self.finite and label.startswith("Z"):
            return f"Y{self.s - int(label[1:]) + 1}"
        return label


def _in_n2(v) -> bool:
    return v[0] >= 0 and v[1] >= 0


def rank2_sequences(d1: int, d2: int, f1: int, f2: int, steps: int = 32) -> Rank2State:
    if f1 * d1 != f2 * d2:
        raise ValueError(f"f1*d1 = {f1 * d1} differs from f2*d2 = {f2 * d2}")
    dd = d1 * d2
    s = _S_OF.get(dd)
    Y = [(1, 0), (d1, 1)]
    Z = [(0, 1), (1, d2)]
    d = lambda i: d1 if i % 2 else d2
    for lst, idx in ((Y, lambda i: i - 1), (Z, lambda i: i)):
        i = 3
        while len(lst) < steps + 2:
            k = d(idx(i))
            v = (k * lst[-1][0] - lst[-2][0], k * lst[-1][1] - lst[-2][1])
            if not _in_n2(v):
                break
            lst.append(v)
            i += 1
    if s is not None:
        if len(Y) != s or len(Z) != s or any(Z[j] != Y[s - j - 1] for j in range(s)):
            raise TheoremViolation(f"finite-type lists have unexpected shape for d=({d1},{d2})", (Y, Z))
    return Rank2State(d1, d2, f1, f2, tuple(Y), tuple(Z), s)


def _forward_rules(st: Rank2State) -> dict:
    """The six cases as ((sign, root, U), (sign, root, U)) with root/U labels."""
    rules = []
    nz = len(st.Z)
    ny = len(st.Y)
    jmax = st.s - 2 if st.finite else nz - 2
    for j in range(1, jmax + 1):
        rules.append(((1, f"Z{j + 2}", f"Z{j + 1}"), (1, f"Z{j + 1}", f"Z{j}")))
    rules.append(((1, "Z2", "Z1"), (1, "Z1", "Y1[1]")))
    rules.append(((1, "Z1", "Y1[1]"), (-1, "Y1", "Y2[1]")))
    rules.append(((-1, "Y1", "Y2[1]"), (-1, "Z1", "Y1")))
    rules.append(((-1, "Z1", "Y1"), (1, "Y1", "Y2")))
    imax = st.s - 2 if st.finite else ny - 2
    for i in range(1, imax + 1):
        rules.append(((1, f"Y{i}", f"Y{i + 1}"), (1, f"Y{i + 1}", f"Y{i + 2}")))
    norm = lambda t: (t[0], st.normalize(t[1]), st.normalize(t[2]))
    out = {}
    for a, b in rules:
        a, b = norm(a), norm(b)
        out[a] = b
        out[(-b[0], b[1], b[2])] = (-a[0], a[1], a[2])  # mirror
    return out


def _key(st: Rank2State, pair) -> tuple:
    gamma, U = pair
    gamma = tuple(gamma)
    U = st.normalize(U)
    for lst, kind in ((st.Y, "Y"), (st.Z, "Z")):
        for idx, v in enumerate(lst, start=1):
            for sign in (1, -1):
                if tuple(sign * x for x in v) == gamma:
                    return sign, st.normalize(f"{kind}{idx}"), U
    raise KeyError(f"{gamma} is not plus or minus a computed root")


def rank2_rho(st: Rank2State, pair) -> tuple:
    """rho(gamma, U) = (gamma', U') by table lookup."""
    table = _forward_rules(st)
    k = _key(st, pair)
    if k not in table:
        raise KeyError(f"rho undefined on {pair} within the computed range")
    sign, root, U = table[k]
    return tuple(sign * x for x in st.dim(root)), U


def consecutive_triple(st: Rank2State, g, g1) -> dict:
    """b, sign and predicted gamma'' for consecutive roots gamma, gamma'."""
    a = tuple(abs(x) for x in g1)
    f = st.euler(a, a)
    b = Fraction(st.euler(g1, g) - st.euler(g, g1), f)
    bg = [b * x for x in g1]
    neg = all(x <= 0 for x in bg) and any(bg)
    pred = tuple(-x + abs(b) * y for x, y in zip(g, g1)) if neg else tuple(-x for x in g)
    return {"f": f, "pair_10": st.euler(g1, g), "pair_01": st.euler(g, g1), "b": b,
            "sign": "-" if neg else "+", "predicted": tuple(int(x) for x in pred)}


def rho_orbits(st: Rank2State) -> list[list[tuple]]:
    """The two orbits through (Z_1, Y1[1]) and (-Y_1, Y_2), as lists of pairs."""
    table = _forward_rules(st)
    orbits = []
    for start in ((1, st.normalize("Z1"), "Y1[1]"), (-1, "Y1", "Y2")):
        orbit, k = [start], start
        while k in table and len(orbit) <= len(table):
            k = table[k]
            if k == start:
                break
            orbit.append(k)
        orbits.append(orbit)
    return orbits


def consecutive_formula_check(st: Rank2State) -> Report:
    """Each consecutive triple along both rho-orbits obeys the gamma'' formula."""
    rep = Report(f"rank2 d=({st.d1},{st.d2}) f=({st.f1},{st.f2})",
                 ("orbit", "gamma", "gamma1", "gamma2", "f_gamma1", "pair_10", "pair_01", "b", "sign",
                  "predicted"))
    table = _forward_rules(st)
    for o_idx, orbit in enumerate(rho_orbits(st), start=1):
        cyclic = st.finite and table.get(orbit[-1]) == orbit[0]
        if st.finite and not cyclic:
            rep.fail("orbit-not-closed", f"orbit {o_idx}", orbit[-1])
        labels = [k[2] for k in orbit]
        if st.finite and len(set(labels)) != len(labels):
            rep.fail("label-repeated", f"orbit {o_idx}", labels)
        gam = [tuple(k[0] * x for x in st.dim(k[1])) for k in orbit]
        span = len(gam) if cyclic else len(gam) - 2
        for t in range(span):
            g, g1, g2 = gam[t], gam[(t + 1) % len(gam)], gam[(t + 2) % len(gam)]
            row = consecutive_triple(st, g, g1)
            if row["predicted"] != g2:
                rep.fail("formula", f"orbit {o_idx} step {t}", (g, g1, g2, row["predicted"]))
            rep.add(o_idx, g, g1, g2, row["f"], row["pair_10"], row["pair_01"], row["b"],
                    row["sign"], row["predicted"])
    if st.finite:
        n_pairs = len(table)
        if n_pairs != 2 * st.s + 4:
            rep.fail("pair-count", "table", n_pairs)
    return rep


def chart(st: Rank2State) -> list[dict]:
    """The six chart rows along the first consecutive sequence, Z_3 through Y_3."""
    seq = [st.dim("Z3"), st.dim("Z2"), st.dim("Z1"), tuple(-x for x in st.Y[0]),
           tuple(-x for x in st.Z[0]), st.Y[0], st.Y[1], st.dim("Y3")]
    rows = []
    for t in range(6):
        row = consecutive_triple(st, seq[t], seq[t + 1])
        row.update(gamma=seq[t], gamma1=seq[t + 1], gamma2=seq[t + 2])
        rows.append(row)
    return rows


__all__ = ["Rank2State", "rank2_sequences", "rank2_rho", "consecutive_triple", "rho_orbits",
           "consecutive_formula_check", "chart", "SHIFTED"]
