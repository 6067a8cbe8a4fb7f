"""Stereographic pictures of rank-3 semi-invariant domains and the cluster fan.

Incidence (which vertices bound which regions, which domains are arcs, half
circles or full circles) is decided from exact data; floats are used only to
place points on the canvas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intmat as im
from .cluster import Fan, gamma_of
from .errors import RankUnsupported, TheoremViolation
from .quiver import ValuedQuiver, euler_data
from .stability import StabilityDomain, _perp_coords, delta_contains

SAMPLES_PER_QUARTER = 128
MARGIN = 0.10


@dataclass(frozen=True)
class Curve:
    beta: tuple
    kind: str  # "arc", "half" or "circle"
    path: tuple  # integer direction vectors joined by minor geodesics

    @property
    def endpoints(self) -> tuple:
        return () if self.kind == "circle" else (self.path[0], self.path[-1])


@dataclass
class PictureModel:
    vertices: dict = field(default_factory=dict)  # integer vector -> occurrence count
    labels: dict = field(default_factory=dict)
    curves: list = field(default_factory=list)
    regions: list = field(default_factory=list)  # triples of integer vectors
    adjacency: list = field(default_factory=list)  # index pairs sharing two vertices
    center: tuple = (0.0, 0.0, 1.0)
    basis: tuple = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    scale: float = 1.0

    def project(self, v: Sequence[float]) -> tuple[float, float]:
        """Stereographic projection of the direction v from the antipode of the center."""
        x = _unit(v)
        h = _dot(x, self.center)
        return _dot(x, self.basis[0]) / (1.0 + h), _dot(x, self.basis[1]) / (1.0 + h)


def _dot(a, b) -> float:
    return sum(float(x) * float(y) for x, y in zip(a, b))


def _unit(v) -> tuple:
    r = math.sqrt(_dot(v, v))
    return tuple(float(x) / r for x in v)


def domain_curve(domain: StabilityDomain) -> Curve:
    """The shape of D(beta) on the sphere from the exact generator coordinates."""
    E = domain.perp_simples
    if len(E) != 2:
        raise RankUnsupported("domains are drawn for rank 3 only")
    m = 2
    covered = set()
    for g in domain.proj_gens:
        c = _perp_coords(domain, g)[:m]
        covered |= {t for t in range(m) if c[t] > 0}
    neg = lambda v: tuple(-x for x in v)
    if covered == {0, 1}:
        return Curve(domain.beta, "circle", (E[0], E[1], neg(E[0]), neg(E[1]), E[0]))
    if covered:
        t = covered.pop()
        return Curve(domain.beta, "half", (E[t], E[1 - t], neg(E[t])))
    return Curve(domain.beta, "arc", (E[0], E[1]))


def _label(v: tuple, P: tuple) -> str:
    for j, row in enumerate(P, start=1):
        if tuple(-x for x in row) == v:
            return f"P{j}[1]"
    return "".join(map(str, v)) if all(0 <= x < 10 for x in v) else ",".join(map(str, v))


def build_model(q: ValuedQuiver, fan: Fan, domains: dict) -> PictureModel:
    """Assemble the picture, asserting region walls and region disjointness exactly."""
    if q.n != 3:
        raise RankUnsupported(f"pictures need rank 3, got {q.n}")
    if not fan.complete:
        raise RankUnsupported("pictures need a complete fan")
    ed = euler_data(q)
    model = PictureModel()
    for st in fan.states:
        cols = im.columns(st.V)
        model.regions.append(tuple(cols))
        for v in cols:
            model.vertices[v] = model.vertices.get(v, 0) + 1
        G = gamma_of(ed, st)
        for i, g in enumerate(im.columns(G)):
            beta = tuple(abs(x) for x in g)
            dom = domains.get(beta)
            if dom is None:
                raise TheoremViolation(f"no domain for wall {beta}", beta)
            for a, v in enumerate(cols):
                if a != i and not delta_contains(dom, v)[0]:
                    raise TheoremViolation(f"vertex {v} is off the wall D({beta})", (st.C, beta))
    model.vertices = dict(sorted(model.vertices.items()))
    model.labels = {v: _label(v, ed.P) for v in model.vertices}
    sets = [set(r) for r in model.regions]
    model.adjacency = [(a, b) for a in range(len(sets)) for b in range(a + 1, len(sets))
                       if len(sets[a] & sets[b]) == 2]
    for r in model.regions:
        x = tuple(sum(c) for c in zip(*r))
        hits = 0
        for other in model.regions:
            coef = im.solve(im.from_columns(other), x)
            hits += all(Fraction(c) > 0 for c in coef)
        if hits != 1:
            raise TheoremViolation(f"interior point {x} lies in {hits} regions", r)
    model.curves = [domain_curve(domains[b]) for b in sorted(domains)]
    dim_lambda = tuple(sum(col) for col in zip(*ed.P))
    c = _unit(dim_lambda)
    k = min(range(3), key=lambda t: (abs(c[t]), t))
    e = tuple(float(t == k) for t in range(3))
    u = _unit(tuple(a - _dot(e, c) * b for a, b in zip(e, c)))
    w = (c[1] * u[2] - c[2] * u[1], c[2] * u[0] - c[0] * u[2], c[0] * u[1] - c[1] * u[0])
    model.center, model.basis = c, (u, w)
    pts = [model.project(v) for v in model.vertices]
    reach = max((max(abs(a), abs(b)) for a, b in pts), default=1.0)
    model.scale = 1.0 / (reach * (1.0 + MARGIN)) if reach else 1.0
    return model


def compute_domains(q: ValuedQuiver, roots: Sequence[Sequence[int]], size: int = 2,
                    seed: int = 0) -> dict:
    """Oracle-certified stability domains for every root."""
    from .fields import build_tower
    from .stability import delta_generators

    tower = build_tower(q, size)
    return {tuple(b): delta_generators(q, tower, b, roots, seed) for b in sorted(map(tuple, roots))}


def geodesic(a: Sequence[float], b: Sequence[float]) -> list[tuple]:
    """Points along the minor great-circle arc from a to b, 128 per quarter turn."""
    a, b = _unit(a), _unit(b)
    theta = math.acos(max(-1.0, min(1.0, _dot(a, b))))
    steps = max(1, math.ceil(SAMPLES_PER_QUARTER * theta / (math.pi / 2)))
    if theta < 1e-12:
        return [a, b]
    s = math.sin(theta)
    out = []
    for i in range(steps + 1):
        t = i / steps
        wa, wb = math.sin((1 - t) * theta) / s, math.sin(t * theta) / s
        out.append(tuple(wa * x + wb * y for x, y in zip(a, b)))
    return out


def curve_points(model: PictureModel, curve: Curve) -> list[tuple[float, float]]:
    pts: list = []
    for a, b in zip(curve.path, curve.path[1:]):
        seg = [model.project(p) for p in geodesic(a, b)]
        pts.extend(seg if not pts else seg[1:])
    return pts


def _canvas(model: PictureModel, size: int):
    half = size / 2.0
    return lambda p: (half + half * model.scale * p[0], half - half * model.scale * p[1])


def render_svg(model: PictureModel, highlight: Sequence[Sequence[int]] = (), size: int = 600,
               labels: bool = True) -> str:
    """Deterministic SVG 1.1 text for the model."""
    hl = {tuple(h) for h in highlight}
    to_px = _canvas(model, size)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    for curve in model.curves:
        pts = [to_px(p) for p in curve_points(model, curve)]
        d = " ".join(f"{'M' if i == 0 else 'L'}{x:.3f},{y:.3f}" for i, (x, y) in enumerate(pts))
        if curve.kind == "circle":
            d += " Z"
        dark = curve.beta in hl
        out.append(f'<path class="domain {curve.kind}{" highlight" if dark else ""}" '
                   f'data-beta="{",".join(map(str, curve.beta))}" d="{d}" fill="none" '
                   f'stroke="{"black" if dark else "#777777"}" '
                   f'stroke-width="{2.5 if dark else 1.0}"/>')
    for v in model.vertices:
        x, y = to_px(model.project(v))
        shifted = any(c < 0 for c in v)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" '
                   f'fill="{"white" if shifted else "black"}" stroke="black"/>')
        if labels:
            out.append(f'<text x="{x + 6:.3f}" y="{y - 6:.3f}" font-family="sans-serif" '
                       f'font-size="12">{model.labels.get(v, "")}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_png(model: PictureModel, path: str, highlight: Sequence[Sequence[int]] = (),
               size: int = 600) -> None:
    """Raster version of render_svg via matplotlib (Agg backend)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    hl = {tuple(h) for h in highlight}
    to_px = _canvas(model, size)
    fig, ax = plt.subplots(figsize=(size / 100, size / 100), dpi=100)
    for curve in model.curves:
        pts = [to_px(p) for p in curve_points(model, curve)]
        dark = curve.beta in hl
        ax.plot([p[0] for p in pts], [p[1] for p in pts], color="black" if dark else "#777777",
                linewidth=2.5 if dark else 1.0)
    for v in model.vertices:
        x, y = to_px(model.project(v))
        ax.plot([x], [y], "o", color="white" if any(c < 0 for c in v) else "black",
                markeredgecolor="black", markersize=5)
        ax.annotate(model.labels.get(v, ""), (x + 6, y - 6), fontsize=8)
    ax.set_xlim(0, size)
    ax.set_ylim(size, 0)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


__all__ = ["Curve", "PictureModel", "domain_curve", "build_model", "compute_domains", "geodesic",
           "curve_points", "render_svg", "render_png"]
