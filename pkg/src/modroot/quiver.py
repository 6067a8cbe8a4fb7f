"""Valued quivers, their Euler matrices and the Euler-Ringel form."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import intmat as im
from .errors import IntegralityError, NonExceptionalAxis, SchemaError, Violation


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    d_st: int  # dimension of the bimodule over the target field
    d_ts: int  # dimension over the source field


@dataclass(frozen=True)
class ValuedQuiver:
    """Vertices carry (f, n_red); arrows carry (d_st, d_ts). Indices are 1-based."""

    f: tuple
    n_red: tuple
    arrows: tuple = ()
    name: str = ""

    @property
    def n(self) -> int:
        return len(self.f)

    @property
    def z(self) -> tuple:
        return tuple(f // r for f, r in zip(self.f, self.n_red))

    def arrow(self, source: int, target: int) -> Arrow | None:
        for a in self.arrows:
            if a.source == source and a.target == target:
                return a
        return None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "vertices": [{"f": f, "n_red": r} for f, r in zip(self.f, self.n_red)],
            "arrows": [{"source": a.source, "target": a.target, "d_st": a.d_st, "d_ts": a.d_ts}
                       for a in self.arrows],
        }

    def canonical_hash(self) -> str:
        data = self.to_dict()
        data["arrows"] = sorted(data["arrows"], key=lambda a: (a["source"], a["target"]))
        blob = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def delete_vertex(self, j: int) -> "ValuedQuiver":
        """Quiver with vertex j removed; remaining vertices keep their relative order."""
        keep = [i for i in range(1, self.n + 1) if i != j]
        new = {old: k + 1 for k, old in enumerate(keep)}
        arrows = tuple(Arrow(new[a.source], new[a.target], a.d_st, a.d_ts)
                       for a in self.arrows if j not in (a.source, a.target))
        return ValuedQuiver(tuple(self.f[i - 1] for i in keep),
                            tuple(self.n_red[i - 1] for i in keep), arrows,
                            f"{self.name}-minus-{j}")


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where} must be an integer, got {value!r}")
    return value


def from_dict(data: dict, check: bool = True) -> ValuedQuiver:
    """Build a quiver from the JSON schema; with check=True invalid input raises."""
    if not isinstance(data, dict) or not isinstance(data.get("vertices"), list):
        raise SchemaError("expected an object with a 'vertices' list")
    f, n_red = [], []
    for k, v in enumerate(data["vertices"], start=1):
        if not isinstance(v, dict) or "f" not in v:
            raise SchemaError(f"vertex {k} needs an 'f' entry")
        f.append(_int(v["f"], f"vertex {k} f"))
        n_red.append(_int(v.get("n_red", v["f"]), f"vertex {k} n_red"))
    arrows = []
    for k, a in enumerate(data.get("arrows", []), start=1):
        if not isinstance(a, dict):
            raise SchemaError(f"arrow {k} must be an object")
        try:
            arrows.append(Arrow(*(_int(a[key], f"arrow {k} {key}")
                                  for key in ("source", "target", "d_st", "d_ts"))))
        except KeyError as e:
            raise SchemaError(f"arrow {k} is missing {e}") from None
    q = ValuedQuiver(tuple(f), tuple(n_red), tuple(arrows), str(data.get("name", "")))
    if check:
        rep = validate(q)
        if not rep.ok:
            raise rep.violations[0]
    return q


def load_quiver(path: str | Path) -> ValuedQuiver:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: {e}") from None
    return from_dict(data)


def quiver(f: Sequence[int], arrows: Sequence[tuple] = (), n_red: Sequence[int] | None = None,
           name: str = "") -> ValuedQuiver:
    """Shorthand constructor; arrows are (source, target, d_st, d_ts)."""
    q = ValuedQuiver(tuple(f), tuple(n_red) if n_red is not None else tuple(f),
                     tuple(Arrow(*a) for a in arrows), name)
    rep = validate(q)
    if not rep.ok:
        raise rep.violations[0]
    return q


def validate(q: ValuedQuiver) -> ValidationReport:
    rep = ValidationReport()
    bad = rep.violations.append
    if q.n == 0:
        bad(Violation("empty", "quiver"))
    for i, (f, r) in enumerate(zip(q.f, q.n_red), start=1):
        if f <= 0 or r <= 0:
            bad(Violation("nonpositive-valuation", f"vertex {i}", f"f={f}, n_red={r}"))
        elif f % r:
            bad(Violation("n_red-does-not-divide-f", f"vertex {i}", f"f={f}, n_red={r}"))
    seen = set()
    for a in q.arrows:
        loc = f"arrow {a.source}->{a.target}"
        if not (1 <= a.source <= q.n and 1 <= a.target <= q.n):
            bad(Violation("vertex-out-of-range", loc))
            continue
        if a.source <= a.target:
            bad(Violation("non-admissible-order", loc, "arrows must decrease the index"))
        if (a.source, a.target) in seen:
            bad(Violation("multiple-arrows", loc, "fold multiplicities into the valuation"))
        seen.add((a.source, a.target))
        if a.d_st <= 0 or a.d_ts <= 0:
            bad(Violation("nonpositive-valuation", loc))
        elif a.d_st * q.f[a.target - 1] != q.f[a.source - 1] * a.d_ts:
            bad(Violation("valuation-mismatch", loc,
                          f"d_st*f_target={a.d_st * q.f[a.target - 1]} "
                          f"!= f_source*d_ts={q.f[a.source - 1] * a.d_ts}"))
    return rep


@dataclass(frozen=True)
class EulerData:
    n: int
    f: tuple
    E: tuple
    L: tuple
    R: tuple
    D: tuple
    Z: tuple
    N: tuple
    B: tuple
    B_reduced: tuple
    P: tuple

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        return euler_form(self, x, y)


def euler_data(q: ValuedQuiver) -> EulerData:
    n = q.n
    L = [[int(i == j) for j in range(n)] for i in range(n)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    for a in q.arrows:
        i, j = a.source - 1, a.target - 1
        L[i][j] = -a.d_st
        R[i][j] = -a.d_ts
    L, R = im.mat(L), im.mat(R)
    D = im.diag(q.f)
    E = im.matmul(L, D)
    if E != im.matmul(D, R):
        raise Violation("euler-mismatch", "quiver", "LD != DR")
    B = im.sub(im.transpose(L), R)
    P = im.to_int(im.inverse(L), "L^-1")
    z = q.z
    B_red = im.to_int([[Fraction(z[i] * B[i][j], z[j]) for j in range(n)] for i in range(n)],
                      "reduced exchange matrix")
    return EulerData(n, tuple(q.f), E, L, R, D, im.diag(z), im.diag(q.n_red), B, B_red, P)


def _check_len(ed: EulerData, *vs) -> None:
    for v in vs:
        if len(v) != ed.n:
            raise ValueError(f"vector {tuple(v)} has length {len(v)}, expected {ed.n}")


def euler_form(ed: EulerData, x: Sequence[int], y: Sequence[int]) -> int:
    _check_len(ed, x, y)
    E = ed.E
    return sum(x[i] * E[i][j] * y[j] for i in range(ed.n) for j in range(ed.n)
               if x[i] and y[j])


def symmetrized_form(ed: EulerData, x: Sequence[int], y: Sequence[int]) -> int:
    return euler_form(ed, x, y) + euler_form(ed, y, x)


def reflect(ed: EulerData, beta: Sequence[int], x: Sequence[int]) -> tuple:
    """x - (sym(x, beta) / <beta, beta>) beta, exact."""
    norm = euler_form(ed, beta, beta)
    s = symmetrized_form(ed, x, beta)
    if norm <= 0 or s % norm:
        raise NonExceptionalAxis(f"cannot reflect along {tuple(beta)}: <b,b>={norm}, sym={s}")
    c = s // norm
    return tuple(xi - c * bi for xi, bi in zip(x, beta))


def unit(n: int, i: int) -> tuple:
    """The unit vector e_i, 1-based."""
    return tuple(int(k == i - 1) for k in range(n))


def fixture_path(name: str) -> Path:
    return Path(__file__).parent / "data" / (name if name.endswith(".json") else name + ".json")


def load_fixture(name: str) -> ValuedQuiver:
    return load_quiver(fixture_path(name))


__all__ = [
    "Arrow", "ValuedQuiver", "ValidationReport", "EulerData", "from_dict", "load_quiver",
    "quiver", "validate", "euler_data", "euler_form", "symmetrized_form", "reflect",
    "unit", "fixture_path", "load_fixture", "IntegralityError",
]
