import re
from pathlib import Path

import pytest

from modroot.cluster import enumerate_fan
from modroot.errors import RankUnsupported
from modroot.picture import (PictureModel, build_model, compute_domains, curve_points, geodesic,
                             render_png, render_svg)

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def models(a3, b3, roots_of, fan_of):
    return {q.name: build_model(q, fan_of(q), compute_domains(q, roots_of(q).roots))
            for q in (a3, b3)}


def model_of(models, q):
    return models[q.name]


def test_a3_counts(a3, models):
    m = model_of(models, a3)
    assert (len(m.vertices), len(m.curves), len(m.regions)) == (9, 6, 14)
    kinds = {c.beta: c.kind for c in m.curves}
    assert kinds == {(0, 0, 1): "circle", (0, 1, 0): "circle", (1, 0, 0): "circle",
                     (0, 1, 1): "half", (1, 1, 0): "half", (1, 1, 1): "arc"}


def test_b3_counts(b3, models):
    m = model_of(models, b3)
    assert (len(m.vertices), len(m.curves), len(m.regions)) == (12, 9, 20)
    kinds = {c.beta: c.kind for c in m.curves}
    assert kinds[(1, 2, 0)] == "half"
    assert kinds[(1, 2, 1)] == kinds[(1, 2, 2)] == "arc"


@pytest.mark.parametrize("name", ["a3", "b3"])
def test_regions_triangulate_the_sphere(name, request, models):
    m = model_of(models, request.getfixturevalue(name))
    assert len(m.vertices) - len(m.adjacency) + len(m.regions) == 2
    assert all(sum(1 for e in m.adjacency if r in e) == 3 for r in range(len(m.regions)))


def test_labels(a3, models):
    m = model_of(models, a3)
    assert m.labels[(-1, 0, 0)] == "P1[1]"
    assert m.labels[(1, 1, 0)] == "110"


@pytest.mark.parametrize("name", ["a3", "b3"])
def test_curve_endpoints_hit_vertices(name, request, models):
    m = model_of(models, request.getfixturevalue(name))
    for c in m.curves:
        pts = curve_points(m, c)
        if c.kind == "circle":
            assert abs(pts[0][0] - pts[-1][0]) < 1e-9 and abs(pts[0][1] - pts[-1][1]) < 1e-9
            continue
        for end, p in zip(c.endpoints, (pts[0], pts[-1])):
            assert end in m.vertices
            v = m.project(end)
            assert abs(v[0] - p[0]) < 1e-9 and abs(v[1] - p[1]) < 1e-9


def test_geodesic_sampling():
    pts = geodesic((1, 0, 0), (0, 1, 0))
    assert len(pts) == 129
    assert all(abs(sum(x * x for x in p) - 1) < 1e-12 for p in pts)


def test_golden_svg(a3, models):
    assert render_svg(model_of(models, a3)) == (GOLDEN / "a3.svg").read_text()


def test_svg_is_deterministic(a3, roots_of):
    svgs = {render_svg(build_model(a3, enumerate_fan(a3), compute_domains(a3, roots_of(a3).roots)))
            for _ in range(2)}
    assert len(svgs) == 1


def test_highlight(a3, models):
    svg = render_svg(model_of(models, a3), highlight=[(1, 1, 1)])
    dark = re.findall(r'<path class="domain \w+ highlight" data-beta="([\d,]+)"', svg)
    assert dark == ["1,1,1"]
    assert svg.count('stroke="black" stroke-width="2.5"') == 1


def test_empty_model():
    svg = render_svg(PictureModel())
    assert svg.startswith("<?xml") and svg.rstrip().endswith("</svg>")
    assert "<path" not in svg and "<circle" not in svg


def test_png(a3, models, tmp_path):
    out = tmp_path / "a3.png"
    render_png(model_of(models, a3), str(out))
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_rank_guard(g2, fan_of):
    with pytest.raises(RankUnsupported):
        build_model(g2, enumerate_fan(g2, cap=50, max_entry=8), {})
