import json
import shutil
from pathlib import Path

import pytest
from click.testing import CliRunner

from modroot import __version__
from modroot.cli import main

DATA = Path(__file__).parent.parent / "src" / "modroot" / "data"


@pytest.fixture()
def work(tmp_path, monkeypatch):
    for f in DATA.glob("*.json"):
        shutil.copy(f, tmp_path / f.name)
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("MODROOT_CACHE", str(tmp_path / "cache"))
    return tmp_path


def run(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def body(text):
    return [line.split("\t") for line in text.splitlines() if line and not line.startswith("#")]


def test_version():
    assert __version__ in run("--version").output


def test_info(work):
    r = run("info", "a3.json")
    assert r.exit_code == 0
    rows = dict(body(r.output)[1:])
    assert rows["finite_type"] == "true" and rows["B"] == "0,-1,0;1,0,-1;0,1,0"


def test_roots_with_witnesses(work):
    r = run("roots", "b3_real.json", "--witness")
    assert r.exit_code == 0
    assert len(body(r.output)) == 10


def test_domain(work):
    r = run("domain", "b3_real.json", "--beta", "1,1,1")
    rows = body(r.output)
    assert ["perp_simple", "0,0,1"] in rows and ["perp_simple", "1,2,0"] in rows


def test_decompose(work):
    r = run("decompose", "a3.json", "--alpha", "2,2,1")
    assert sorted(map(tuple, body(r.output)[1:])) == [("0,1,0", "0"), ("1,1,0", "1"), ("1,1,1", "1")]


def test_rank2_suite(work):
    r = run("rank2", "--d1", "1", "--d2", "3")
    assert r.exit_code == 0 and "s=6" in r.output
    r = run("rank2", "--d1", "2", "--d2", "2", "--steps", "6")
    assert r.exit_code == 0 and "infinite" in r.output


def test_oracles(work):
    r = run("oracle", "hom-ext", "b3_real.json", "--q", "3", "--v", "1,2,2", "--w", "1,1,1",
            "--exceptional")
    assert body(r.output)[1] == ["1,2,2", "1,1,1", "0", "0", "0"]
    r = run("oracle", "semi-invariant", "b3_real.json", "--q", "3", "--gamma1", "1,0,0",
            "--gamma0", "0,0,1", "--beta", "1,2,2", "--pairs", "20")
    assert r.exit_code == 0 and body(r.output)[1][-1] == "0"


def test_picture(work):
    r = run("picture", "a3.json", "--out", "a3.svg", "--png", "a3.png", "--highlight", "1,1,1")
    assert r.exit_code == 0
    assert (work / "a3.svg").read_text().count("highlight") == 1
    assert (work / "a3.png").exists()
    assert run("picture", "g2ish.json", "--out", "g.svg").exit_code == 1


def test_verify_all_a3(work):
    r = run("verify-all", "a3.json", "--q", "2", "--box", "4", "--out", "rep.tsv")
    assert r.exit_code == 0
    lines = body((work / "rep.tsv").read_text())
    assert [l[0] for l in lines[1:]] == ["schema", "euler", "roots", "stability", "fan", "cvectors",
                                         "one-positive-column", "reduced", "oracle-euler"]
    assert all(l[1] == "PASS" for l in lines[1:])


def test_verify_all_quaternion_skips_oracle(work):
    r = run("verify-all", "b3_quat.json", "--q", "2")
    assert r.exit_code == 0
    status = {l[0]: l[1] for l in body(r.output)[1:]}
    assert status["stability"] == status["oracle-euler"] == "SKIP"
    assert status["cvectors"] == "PASS"


def test_verify_all_with_user_domains(work):
    doms = [{"beta": [1, 1, 1], "subroots": [[1, 0, 0], [1, 1, 0]], "perp": [[0, 0, 1], [1, 2, 0]]}]
    (work / "d.json").write_text(json.dumps(doms))
    r = run("verify-stability", "b3_quat.json", "--domains", "d.json")
    assert r.exit_code == 0


def test_verify_all_infinite_type(work):
    r = run("verify-all", "g2ish.json")
    assert r.exit_code == 0
    assert "SKIP" in r.output


@pytest.mark.parametrize("content,code", [("{bad", 2), ('{"vertices": []}', 2)])
def test_bad_input_exit_codes(work, content, code):
    (work / "bad.json").write_text(content)
    r = CliRunner().invoke(main, ["verify-all", "bad.json"])
    assert r.exit_code == code
    assert r.output.startswith("error:") or "error" in (r.stderr if hasattr(r, "stderr") else "")


def test_valuation_mismatch_exit_code(work):
    q = {"vertices": [{"f": 2}, {"f": 1}], "arrows": [{"source": 2, "target": 1, "d_st": 1, "d_ts": 1}]}
    (work / "v.json").write_text(json.dumps(q))
    assert CliRunner().invoke(main, ["info", "v.json"]).exit_code == 2
    assert CliRunner().invoke(main, ["info", "missing.json"]).exit_code == 2


def test_verify_all_is_deterministic(work):
    outs = []
    for i in range(2):
        r = run("verify-all", "b3_real.json", "--q", "2", "--no-cache", "--figures", "figs")
        outs.append((r.output, (work / "figs" / "B3-real.svg").read_bytes()))
    assert outs[0][0] == outs[1][0]
    assert outs[0][1] == outs[1][1]
