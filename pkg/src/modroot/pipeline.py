"""Cached computations shared by the CLI and the verification harness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import intmat as im
from .braid import DEFAULT_MAX_COORD, DEFAULT_MAX_SEQUENCES, enumerate_roots, is_finite_type
from .cache import (Cache, cache_dir_for, decode_domains, decode_fan, decode_roots, encode_domains,
                    encode_fan, encode_roots)
from .cluster import (enumerate_fan, gamma_of, initial_state, one_positive_column_check,
                      verify_cvector_theorem)
from .errors import ModrootError, UnsupportedModulation
from .quiver import ValuedQuiver, euler_data, euler_form, load_quiver, validate
from .reduced import reduced_weights
from .report import Report, cell


@dataclass
class Session:
    quiver: ValuedQuiver
    path: str | None = None
    cache: Cache = field(default_factory=lambda: Cache(None, False))
    seed: int = 0
    max_coord: int = DEFAULT_MAX_COORD
    max_sequences: int = DEFAULT_MAX_SEQUENCES

    @classmethod
    def open(cls, path: str, use_cache: bool = True, seed: int = 0, **kw) -> "Session":
        q = load_quiver(path)
        return cls(q, str(path), Cache(cache_dir_for(path), use_cache), seed, **kw)

    def meta(self, **extra) -> dict:
        out = {"quiver": self.quiver.name or Path(self.path or "-").name,
               "hash": self.quiver.canonical_hash(), "version": __version__, "seed": self.seed}
        out.update(extra)
        return out

    def roots(self):
        params = {"max_coord": self.max_coord, "max_sequences": self.max_sequences}
        return self.cache.get_or_compute(
            self.quiver, "roots", params,
            lambda: enumerate_roots(self.quiver, self.max_coord, self.max_sequences),
            encode_roots, decode_roots)

    def fan(self, cap: int = 10_000, max_entry: int = 64):
        return self.cache.get_or_compute(self.quiver, "fan", {"cap": cap, "max_entry": max_entry},
                                         lambda: enumerate_fan(self.quiver, cap, max_entry),
                                         encode_fan, decode_fan)

    def domains(self, size: int = 2, override: str | None = None) -> dict:
        """Stability domains for all roots: from a user file, or oracle-certified at q=size."""
        q = self.quiver
        if override:
            data = json.loads(Path(override).read_text())
            for x in data:
                x.setdefault("provenance", f"user file {Path(override).name}")
            return decode_domains(q, data)
        roots = self.roots().roots

        def compute():
            from .picture import compute_domains
            return compute_domains(q, roots, size, self.seed)

        return self.cache.get_or_compute(q, "domains", {"q": size, "seed": self.seed}, compute,
                                         encode_domains, lambda d: decode_domains(q, d))


def euler_report(q: ValuedQuiver) -> Report:
    ed = euler_data(q)
    rep = Report(f"euler {q.name}", ("matrix", "value"))
    for name in ("L", "R", "D", "E", "B", "P", "Z", "B_reduced"):
        rep.add(name, getattr(ed, name))
    rep.add("DB", im.matmul(ed.D, ed.B))
    if im.matmul(ed.L, ed.D) != ed.E or im.matmul(ed.D, ed.R) != ed.E:
        rep.fail("E=LD=DR", "E")
    if not im.is_skew(im.matmul(ed.D, ed.B)):
        rep.fail("DB-skew", "DB")
    if im.sub(im.transpose(ed.L), ed.R) != ed.B:
        rep.fail("B=L^t-R", "B")
    for i in range(ed.n):
        e = tuple(int(t == i) for t in range(ed.n))
        if euler_form(ed, ed.P[i], e) != q.f[i]:
            rep.fail("<P_i,e_i>=f_i", i + 1)
    G = gamma_of(ed, initial_state(ed))
    if G != im.neg(im.identity(ed.n)):
        rep.fail("initial-gamma", "Lambda[1]", G)
    return rep


def oracle_euler_report(q: ValuedQuiver, size: int, pairs: int, seed: int) -> Report:
    from .fields import build_tower
    from .reps import euler_check, random_rep

    tower = build_tower(q, size)
    rng = np.random.default_rng([seed, size])
    rep = Report(f"oracle euler {q.name} q={size}", ("V", "W", "hom", "ext", "euler"))
    for _ in range(pairs):
        dv = tuple(int(x) for x in rng.integers(0, 3, q.n))
        dw = tuple(int(x) for x in rng.integers(0, 3, q.n))
        V, W = random_rep(tower, dv, rng), random_rep(tower, dw, rng)
        h, e, chi = euler_check(tower, V, W)
        if h - e != chi:
            rep.fail("hom-ext=euler", (dv, dw), (h, e, chi))
        rep.add(dv, dw, h, e, chi)
    return rep


def stability_reports(sess: Session, size: int, box_radius: int, override: str | None = None) -> list:
    from .stability import deleted_vertex_check, verify_stability_theorem

    out = []
    for beta, dom in sorted(sess.domains(size, override).items()):
        out.append(verify_stability_theorem(dom, box_radius, raise_on_violation=False))
        for j, b in enumerate(beta, start=1):
            if b == 0:
                out.append(deleted_vertex_check(sess.quiver, dom, j, box_radius, False))
    return out


@dataclass
class VerifyResult:
    lines: list  # (check, status, detail)
    reports: list

    @property
    def exit_code(self) -> int:
        return 0 if all(s != "FAIL" for _, s, _ in self.lines) else 1

    def to_tsv(self, meta: dict) -> str:
        out = ["# verify-all"] + [f"# {k}: {v}" for k, v in meta.items()]
        out.append("check\tstatus\tdetail")
        out += [f"{c}\t{s}\t{cell(d)}" for c, s, d in self.lines]
        bad = [r for r in self.reports if not r.ok]
        if bad:
            out.append("# failures")
            out.append("report\tcheck\tlocation\tdetail")
            out += [r.failures_tsv().rstrip("\n") for r in bad]
        return "\n".join(out) + "\n"


def run_verify_all(sess: Session, size: int | None = None, box_radius: int = 4, pairs: int = 50,
                   override: str | None = None, figures: str | None = None) -> VerifyResult:
    q = sess.quiver
    lines, reports = [], []

    def record(check, rep_or_ok, detail=""):
        if isinstance(rep_or_ok, Report):
            reports.append(rep_or_ok)
            ok = rep_or_ok.ok
            detail = detail or f"{len(rep_or_ok.rows)} rows, {len(rep_or_ok.failures)} failures"
        else:
            ok = rep_or_ok
        lines.append((check, "PASS" if ok else "FAIL", detail))

    v = validate(q)
    record("schema", v.ok, "; ".join(str(x) for x in v.violations) or "valid")
    record("euler", euler_report(q))
    rs = sess.roots()
    finite = is_finite_type(q)
    bad_norm = [r for r in rs.roots if euler_form(euler_data(q), r, r) not in q.f]
    record("roots", not bad_norm and (rs.complete or not finite),
           f"{len(rs.roots)} roots, complete={cell(rs.complete)}")
    if not finite or not rs.complete:
        lines.append(("stability", "SKIP", "infinite type: root set is a truncation"))
        lines.append(("cvectors", "SKIP", "infinite type: fan is not enumerable"))
        lines.append(("reduced", "SKIP", "infinite type"))
    else:
        dom_size = size or 2
        try:
            reps = stability_reports(sess, dom_size, box_radius, override)
            for r in reps:
                reports.append(r)
            nfail = sum(len(r.failures) for r in reps)
            src = "user override" if override else f"oracle q={dom_size}"
            lines.append(("stability", "PASS" if nfail == 0 else "FAIL",
                          f"{len(reps)} domain checks on [-{box_radius},{box_radius}]^{q.n}, "
                          f"{nfail} mismatches, subroots from {src}"))
        except UnsupportedModulation as e:
            lines.append(("stability", "SKIP", f"oracle unsupported ({e}); pass --domains FILE"))
        fan = sess.fan()
        record("fan", fan.complete, f"{len(fan.states)} cluster tilting objects")
        record("cvectors", verify_cvector_theorem(q, fan, rs.roots))
        record("one-positive-column", one_positive_column_check(q, fan))
        record("reduced", reduced_weights(q, fan, seed=sess.seed))
        if figures and q.n == 3:
            try:
                from .picture import build_model, render_png, render_svg
                model = build_model(q, fan, sess.domains(dom_size, override))
                out = Path(figures)
                out.mkdir(parents=True, exist_ok=True)
                stem = q.name or "quiver"
                (out / f"{stem}.svg").write_text(render_svg(model))
                render_png(model, str(out / f"{stem}.png"))
                lines.append(("figures", "PASS", f"{stem}.svg, {stem}.png in {out}"))
            except (ModrootError, OSError) as e:
                lines.append(("figures", "SKIP", str(e)))
    if size:
        try:
            record("oracle-euler", oracle_euler_report(q, size, pairs, sess.seed))
        except UnsupportedModulation as e:
            lines.append(("oracle-euler", "SKIP", str(e)))
    return VerifyResult(lines, reports)


__all__ = ["Session", "euler_report", "oracle_euler_report", "stability_reports", "VerifyResult",
           "run_verify_all"]
