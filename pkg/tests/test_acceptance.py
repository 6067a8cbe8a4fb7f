"""Acceptance criteria 1-9, one PASS/FAIL line each.

Every check recomputes from scratch (no result cache) so the timings are honest.
"""

import time
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from modroot import intmat as im
from modroot.braid import enumerate_roots
from modroot.cli import main
from modroot.cluster import enumerate_fan, gamma_of, initial_state, verify_cvector_theorem
from modroot.errors import UnsupportedModulation
from modroot.fields import build_tower
from modroot.picture import build_model, compute_domains
from modroot.quiver import euler_data, load_fixture
from modroot.rank2 import chart, consecutive_formula_check, rank2_sequences
from modroot.reduced import reduced_table, reduced_weights
from modroot.reps import euler_check, random_rep, weight_law_check
from modroot.stability import delta_contains, delta_generators, verify_stability_theorem

FIXTURES = ("a3", "b3_real", "b3_quat", "g2ish")


def report(n, ok, detail, seconds):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}  ({seconds:.3f} s)"
    print("\n" + line)
    return line


@pytest.fixture()
def say(capsys):
    def emit(n, ok, detail, seconds):
        with capsys.disabled():
            report(n, ok, detail, seconds)
        assert ok, detail
    return emit


def test_criterion_1_euler_example(say):
    q = load_fixture("g2ish")
    t0 = time.perf_counter()
    ed = euler_data(q)
    DB = im.matmul(ed.D, ed.B)
    dt = time.perf_counter() - t0
    ok = (ed.L == ((1, 0), (-3, 1)) and ed.D == ((2, 0), (0, 3)) and ed.E == ((2, 0), (-6, 3))
          and ed.R == ((1, 0), (-2, 1)) and ed.B == ((0, -3), (2, 0)) and DB == ((0, -6), (6, 0))
          and im.matmul(ed.L, ed.D) == ed.E == im.matmul(ed.D, ed.R))
    say(1, ok and dt < 1e-3, "L, D, E, R, B, DB as printed", dt)


def test_criterion_2_a3(say):
    q = load_fixture("a3")
    times = []
    t0 = time.perf_counter()
    rs = enumerate_roots(q)
    times.append(time.perf_counter() - t0)
    t0 = time.perf_counter()
    fan = enumerate_fan(q)
    times.append(time.perf_counter() - t0)
    t0 = time.perf_counter()
    model = build_model(q, fan, compute_domains(q, rs.roots))
    times.append(time.perf_counter() - t0)
    counts = (len(rs.roots), len(fan.states), len(model.vertices), len(model.curves))
    ok = counts == (6, 14, 9, 6) and rs.complete and fan.complete and max(times) < 1.0
    say(2, ok, f"roots/c-matrices/vertices/curves = {counts}", max(times))


def test_criterion_3_cvector_sweep(say):
    t0 = time.perf_counter()
    states = fails = 0
    for name in ("a3", "b3_real"):
        q = load_fixture(name)
        fan = enumerate_fan(q)
        rep = verify_cvector_theorem(q, fan, enumerate_roots(q).roots)
        states += len(fan.states)
        fails += len(rep.failures)
    dt = time.perf_counter() - t0
    say(3, fails == 0 and states == 34 and dt < 10, f"{states} states, {fails} violations", dt)


def test_criterion_4_initial_gamma(say):
    t0 = time.perf_counter()
    bad = [n for n in FIXTURES
           if gamma_of(euler_data(load_fixture(n)), initial_state(load_fixture(n)))
           != im.neg(im.identity(load_fixture(n).n))]
    say(4, not bad, f"Gamma = -I on {len(FIXTURES)} fixtures; failing: {bad or 'none'}",
        time.perf_counter() - t0)


def test_criterion_5_stability(say):
    t0 = time.perf_counter()
    mismatches = checked = 0
    certs_ok = False
    for name in ("a3", "b3_real"):
        q = load_fixture(name)
        roots = enumerate_roots(q).roots
        tower = build_tower(q, 2)
        for beta in roots:
            dom = delta_generators(q, tower, beta, roots)
            mismatches += len(verify_stability_theorem(dom, 4, raise_on_violation=False).failures)
            checked += 1
            if name == "b3_real" and beta == (1, 1, 1):
                alpha1, alpha2 = dom.perp_simples
                z2, x = delta_contains(dom, (1, 2, 2)), delta_contains(dom, (1, 2, 1))
                certs_ok = (alpha1 == (0, 0, 1) and alpha2 == (1, 2, 0)
                            and z2[1].k == (2, 1) and x[1].k == (1, 1))
    dt = time.perf_counter() - t0
    say(5, mismatches == 0 and certs_ok and checked == 15 and dt < 120,
        f"{checked} domains on [-4,4]^3, {mismatches} mismatches, certificates "
        f"{'reproduced' if certs_ok else 'differ'}", dt)


WEIGHT_CASES = {
    "a3": (3, [((1, 0, 0), (0, 1, 0), (1, 1, 0)), ((0, 1, 0), (1, 0, 1), (0, 1, 1))]),
    "b3_real": (3, [((1, 0, 0), (0, 0, 1), (1, 2, 2)), ((1, 0, 0), (0, 1, 0), (1, 2, 1)),
                    ((0, 1, 0), (1, 0, 1), (0, 1, 1))]),
    "g2ish": (5, [((0, 1), (1, 1), (0, 1)), ((1, 0), (1, 1), (1, 0))]),
}


def test_criterion_6_oracle_soundness(say):
    t0 = time.perf_counter()
    euler_bad = weight_bad = trivial = 0
    for name, (size, cases) in WEIGHT_CASES.items():
        q = load_fixture(name)
        tower = build_tower(q, 2)
        rng = np.random.default_rng([6, q.n])
        for _ in range(200):
            dv, dw = (tuple(int(x) for x in rng.integers(0, 3, q.n)) for _ in range(2))
            h, e, chi = euler_check(tower, random_rep(tower, dv, rng), random_rep(tower, dw, rng))
            euler_bad += h - e != chi
        tower = build_tower(q, size)
        for g1, g0, beta in cases:
            assert all(b >= 0 for b in beta) and any(beta)  # det-weights are sign-coherent
            res = weight_law_check(tower, g1, g0, beta, pairs=100)
            weight_bad += len(res.failures)
            trivial += res.sigma in (0, 1)
    try:
        build_tower(load_fixture("b3_quat"), 2)
        refused = False
    except UnsupportedModulation:
        refused = True
    dt = time.perf_counter() - t0
    ok = euler_bad == 0 and weight_bad == 0 and trivial == 0 and refused
    say(6, ok, f"600 Hom/Ext pairs, {euler_bad} Euler failures; "
               f"{sum(len(c) for _, c in WEIGHT_CASES.values())} presentations x 100 automorphism "
               f"pairs, {weight_bad} weight-law failures; quaternion fixture refused={refused}", dt)


def test_criterion_7_rank2(say):
    t0 = time.perf_counter()
    s_ok = all(rank2_sequences(d1, d2, d2, d1).s == s
               for d1, d2, s in [(1, 1, 3), (1, 2, 4), (2, 1, 4), (1, 3, 6), (3, 1, 6)])
    inf_ok = all(not rank2_sequences(d1, d2, d2, d1, 8).finite
                 for d1, d2 in [(2, 2), (4, 1), (1, 4), (3, 2)])
    formula_ok = all(consecutive_formula_check(rank2_sequences(d1, d2, d2, d1)).ok
                     for d1, d2 in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)])
    chart_ok = True
    for d1, d2 in [(1, 2), (1, 3)]:
        st = rank2_sequences(d1, d2, d2, d1)
        fs, bs = (st.f1, st.f2) * 3, (-d1, -d2) * 3
        for t, row in enumerate(chart(st)):
            chart_ok &= (row["f"] == fs[t] and row["b"] == bs[t]
                         and row["sign"] == "--++--"[t] and row["predicted"] == row["gamma2"])
    dt = time.perf_counter() - t0
    ok = s_ok and inf_ok and formula_ok and chart_ok and dt < 1
    say(7, ok, f"s values {s_ok}, infinite flag {inf_ok}, formula {formula_ok}, "
               f"B2/G2 chart {chart_ok}", dt)


QUAT_TABLE = [
    ((0, 0, 1), 1, (0, 0, 1)), ((0, 1, 0), 1, (0, 1, 0)), ((0, 1, 1), 1, (0, 1, 1)),
    ((1, 0, 0), 2, (1, 0, 0)), ((1, 1, 0), 1, (2, 1, 0)), ((1, 1, 1), 1, (2, 1, 1)),
    ((1, 2, 0), 2, (1, 1, 0)), ((1, 2, 1), 1, (2, 2, 1)), ((1, 2, 2), 2, (1, 1, 1)),
]


def test_criterion_8_reduced_weights(say):
    t0 = time.perf_counter()
    q = load_fixture("b3_quat")
    table_ok = reduced_table(q, enumerate_roots(q).roots) == QUAT_TABLE
    integral = all(isinstance(x, int) for n in FIXTURES
                   for row in euler_data(load_fixture(n)).B_reduced for x in row)
    fails = 0
    for n in ("a3", "b3_real", "b3_quat"):
        p = load_fixture(n)
        fails += len(reduced_weights(p, enumerate_fan(p), n_words=100).failures)
    dt = time.perf_counter() - t0
    say(8, table_ok and integral and fails == 0 and dt < 5,
        f"9-row table {'exact' if table_ok else 'differs'}, reduced B integral on all fixtures, "
        f"{fails} commutation failures over 100 words", dt)


def test_criterion_9_determinism(say, tmp_path, monkeypatch):
    data = Path(__file__).parent.parent / "src" / "modroot" / "data"
    monkeypatch.chdir(tmp_path)
    t0 = time.perf_counter()
    outs = []
    for _ in range(2):
        r = CliRunner().invoke(main, ["verify-all", str(data / "b3_real.json"), "--q", "2",
                                      "--seed", "0", "--no-cache", "--figures", "figs",
                                      "--out", "report.tsv"])
        outs.append((r.exit_code, (tmp_path / "report.tsv").read_bytes(),
                     (tmp_path / "figs" / "B3-real.svg").read_bytes()))
    dt = time.perf_counter() - t0
    say(9, outs[0] == outs[1] and outs[0][0] == 0,
        "two verify-all runs: report and SVG byte-identical", dt)
