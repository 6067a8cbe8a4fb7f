"""Command-line interface: `modroot <command> ...`.

Exit codes: 0 all checks pass, 1 a check failed, 2 input, I/O or schema error.
"""

from __future__ import annotations

import json
import sys
from functools import wraps

import click
import numpy as np

from . import __version__
from . import intmat as im
from .braid import DEFAULT_MAX_COORD, DEFAULT_MAX_SEQUENCES, format_word, is_finite_type
from .errors import ModrootError, RankUnsupported, SchemaError, UnsupportedModulation, Violation
from .pipeline import Session, run_verify_all, stability_reports
from .quiver import euler_data, euler_form, validate
from .report import Report, cell


def _fail_input(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(2)


def handled(fn):
    """Map library and I/O errors to exit codes."""

    @wraps(fn)
    def inner(*a, **kw):
        try:
            return fn(*a, **kw)
        except (SchemaError, Violation, OSError, json.JSONDecodeError) as e:
            _fail_input(str(e))
        except ModrootError as e:
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            sys.exit(1)

    return inner


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _finish(reports: list[Report], out: str | None, meta: dict) -> None:
    _emit("".join(r.to_tsv(meta) for r in reports), out)
    bad = [r for r in reports if not r.ok]
    if bad:
        click.echo("report\tcheck\tlocation\tdetail", err=True)
        for r in bad:
            click.echo(r.failures_tsv(), err=True, nl=False)
        sys.exit(1)


def _vec(s: str) -> tuple:
    try:
        return im.parse_vec(s)
    except ValueError as e:
        _fail_input(str(e))


def _session(path, no_cache, seed, **kw) -> Session:
    return Session.open(path, use_cache=not no_cache, seed=seed, **kw)


quiver_arg = click.argument("quiver_json", type=click.Path(dir_okay=False))
seed_opt = click.option("--seed", default=0, show_default=True, help="Seed for oracle sampling.")
cache_opt = click.option("--no-cache", is_flag=True, help="Bypass the result cache.")
out_opt = click.option("--out", "out", type=click.Path(dir_okay=False), help="Write TSV here.")


@click.group()
@click.version_option(__version__, prog_name="modroot")
def main():
    """Real Schur roots, semi-invariant domains and c-vectors of valued quivers."""


@main.command()
@quiver_arg
@handled
def info(quiver_json):
    """Quiver summary and Euler data."""
    sess = _session(quiver_json, True, 0)
    q = sess.quiver
    ed = euler_data(q)
    rep = Report("info", ("key", "value"))
    rep.add("n", q.n)
    rep.add("f", q.f)
    rep.add("n_red", q.n_red)
    rep.add("z", q.z)
    rep.add("finite_type", is_finite_type(q))
    rep.add("valid", validate(q).ok)
    for name in ("L", "R", "D", "E", "B", "P", "B_reduced"):
        rep.add(name, getattr(ed, name))
    _emit(rep.to_tsv(sess.meta()), None)


@main.command()
@quiver_arg
@click.option("--witness", is_flag=True, help="Show a braid word producing each root.")
@click.option("--max-coord", default=DEFAULT_MAX_COORD, show_default=True)
@click.option("--max-seq", default=DEFAULT_MAX_SEQUENCES, show_default=True)
@cache_opt
@out_opt
@handled
def roots(quiver_json, witness, max_coord, max_seq, no_cache, out):
    """Real Schur roots from the braid-group orbit of the initial sequence."""
    sess = _session(quiver_json, no_cache, 0, max_coord=max_coord, max_sequences=max_seq)
    rs = sess.roots()
    ed = euler_data(sess.quiver)
    cols = ("root", "f_beta") + (("witness",) if witness else ())
    rep = Report("roots", cols)
    for r in rs.roots:
        row = [r, euler_form(ed, r, r)]
        if witness:
            row.append(format_word(rs.witnesses.get(r, ())) or "initial")
        rep.add(*row)
    rep.notes.append(f"complete={cell(rs.complete)} sequences={rs.n_sequences}")
    _emit(rep.to_tsv(sess.meta(max_coord=max_coord, max_seq=max_seq)), out)


@main.command()
@quiver_arg
@click.option("--beta", required=True, help="Root, e.g. 1,1,1.")
@click.option("--q", "size", default=2, show_default=True, help="Field size for the oracle.")
@seed_opt
@cache_opt
@out_opt
@handled
def domain(quiver_json, beta, size, seed, no_cache, out):
    """Subroots, perpendicular simples and projective generators of D(beta)."""
    sess = _session(quiver_json, no_cache, seed)
    b = _vec(beta)
    doms = sess.domains(size)
    if b not in doms:
        raise ModrootError(f"{b} is not a real Schur root of this quiver")
    d = doms[b]
    rep = Report(f"domain beta={cell(b)}", ("kind", "vector"))
    for s in d.subroots:
        rep.add("subroot", s)
    for e in d.perp_simples:
        rep.add("perp_simple", e)
    for g in d.proj_gens:
        rep.add("proj_gen", g)
    rep.notes.append(d.provenance)
    _emit(rep.to_tsv(sess.meta(q=size)), out)


@main.command("verify-stability")
@quiver_arg
@click.option("--q", "size", default=2, show_default=True)
@click.option("--box", "box_radius", default=4, show_default=True)
@click.option("--domains", "override", type=click.Path(dir_okay=False),
              help="JSON list of {beta, subroots, perp} to use instead of the oracle.")
@seed_opt
@cache_opt
@out_opt
@handled
def verify_stability(quiver_json, size, box_radius, override, seed, no_cache, out):
    """Semistable domain versus Delta(beta) on a lattice box, for every root."""
    sess = _session(quiver_json, no_cache, seed)
    try:
        reps = stability_reports(sess, size, box_radius, override)
    except UnsupportedModulation as e:
        click.echo(f"skipped: oracle unsupported ({e}); supply --domains", err=True)
        return
    _finish(reps, out, sess.meta(q=size, box=box_radius))


@main.command()
@quiver_arg
@click.option("--cap", default=10_000, show_default=True)
@cache_opt
@out_opt
@handled
def cmatrices(quiver_json, cap, no_cache, out):
    """All c-matrices of the cluster fan, one block each."""
    sess = _session(quiver_json, no_cache, 0)
    fan = sess.fan(cap)
    blocks = []
    for k, st in enumerate(fan.states):
        rep = Report(f"state {k} word={format_word([(i, 1) for i in st.word]) or 'initial'}",
                     ("C", "B", "V"))
        for rc, rb, rv in zip(st.C, st.B, st.V):
            rep.add(rc, rb, rv)
        blocks.append(rep)
    meta = sess.meta(cap=cap, states=len(fan.states), complete=cell(fan.complete))
    _emit("".join(b.to_tsv(meta if i == 0 else None) for i, b in enumerate(blocks)), out)


@main.command("verify-cvectors")
@quiver_arg
@cache_opt
@out_opt
@handled
def verify_cvectors(quiver_json, no_cache, out):
    """c-vector theorem on every state of the fan."""
    from .cluster import one_positive_column_check, verify_cvector_theorem

    sess = _session(quiver_json, no_cache, 0)
    if not is_finite_type(sess.quiver):
        raise RankUnsupported("the c-vector sweep needs a quiver of finite type")
    fan = sess.fan()
    rs = sess.roots()
    _finish([verify_cvector_theorem(sess.quiver, fan, rs.roots),
             one_positive_column_check(sess.quiver, fan)], out, sess.meta())


@main.command()
@quiver_arg
@click.option("--alpha", required=True, help="Dimension vector, e.g. 2,2,1.")
@cache_opt
@out_opt
@handled
def decompose(quiver_json, alpha, no_cache, out):
    """Cone of the fan containing alpha and its coefficients."""
    from .cluster import generic_decomposition

    sess = _session(quiver_json, no_cache, 0)
    a = _vec(alpha)
    st, r = generic_decomposition(sess.fan(), a)
    rep = Report(f"decompose alpha={cell(a)}", ("dim_T", "multiplicity"))
    for v, c in zip(im.columns(st.V), r):
        rep.add(v, c)
    _emit(rep.to_tsv(sess.meta()), out)


@main.command()
@click.option("--d1", type=int, required=True)
@click.option("--d2", type=int, required=True)
@click.option("--f1", type=int, default=None, help="Defaults to d2 / gcd.")
@click.option("--f2", type=int, default=None, help="Defaults to d1 / gcd.")
@click.option("--steps", default=16, show_default=True)
@out_opt
@handled
def rank2(d1, d2, f1, f2, steps, out):
    """Preprojective and preinjective sequences and the consecutive-root check."""
    from math import gcd

    from .rank2 import chart, consecutive_formula_check, rank2_sequences

    g = gcd(d1, d2) or 1
    f1 = f1 if f1 is not None else max(d2 // g, 1)
    f2 = f2 if f2 is not None else max(d1 // g, 1)
    try:
        st = rank2_sequences(d1, d2, f1, f2, steps)
    except ValueError as e:
        _fail_input(str(e))
    seq = Report("sequences", ("index", "Y", "Z"))
    for i in range(max(len(st.Y), len(st.Z))):
        seq.add(i + 1, st.Y[i] if i < len(st.Y) else None, st.Z[i] if i < len(st.Z) else None)
    seq.notes.append(f"s={st.s if st.finite else 'infinite'}")
    reports = [seq, consecutive_formula_check(st)]
    if not st.finite or st.s >= 3:
        ch = Report("chart", ("gamma", "gamma1", "gamma2", "f_gamma1", "pair_10", "pair_01", "b",
                              "sign", "predicted"))
        for row in chart(st):
            ch.add(row["gamma"], row["gamma1"], row["gamma2"], row["f"], row["pair_10"],
                   row["pair_01"], row["b"], row["sign"], row["predicted"])
        reports.append(ch)
    meta = {"d": (d1, d2), "f": (f1, f2), "version": __version__}
    _finish(reports, out, {k: cell(v) for k, v in meta.items()})


@main.command()
@quiver_arg
@seed_opt
@cache_opt
@out_opt
@handled
def reduced(quiver_json, seed, no_cache, out):
    """Reduced weights and reduced c-vectors."""
    from .reduced import reduced_table, reduced_weights

    sess = _session(quiver_json, no_cache, seed)
    q = sess.quiver
    table = Report("reduced weights", ("beta", "z_beta", "beta_bar"))
    for row in reduced_table(q, sess.roots().roots):
        table.add(*row)
    table.notes.append(f"B_reduced={cell(euler_data(q).B_reduced)}")
    _finish([table, reduced_weights(q, sess.fan(), seed=seed)], out, sess.meta())


@main.group()
def oracle():
    """Finite-field representation oracle."""


@oracle.command("hom-ext")
@quiver_arg
@click.option("--q", "size", type=int, required=True)
@click.option("--v", "dv", required=True, help="Dimension vector of V.")
@click.option("--w", "dw", required=True, help="Dimension vector of W.")
@click.option("--exceptional", is_flag=True, help="Use exceptional modules instead of random reps.")
@seed_opt
@out_opt
@handled
def oracle_hom_ext(quiver_json, size, dv, dw, exceptional, seed, out):
    """dim Hom and dim Ext between two representations over F_q."""
    from .fields import build_tower
    from .reps import build_exceptional, hom_ext, random_rep

    sess = _session(quiver_json, True, seed)
    tower = build_tower(sess.quiver, size)
    a, b = _vec(dv), _vec(dw)
    rng = np.random.default_rng(seed)
    if exceptional:
        V, W = build_exceptional(tower, a, seed), build_exceptional(tower, b, seed)
    else:
        V, W = random_rep(tower, a, rng), random_rep(tower, b, rng)
    he = hom_ext(tower, V, W)
    chi = euler_form(euler_data(sess.quiver), a, b)
    rep = Report("hom-ext", ("V", "W", "hom_K", "ext_K", "euler"))
    rep.add(a, b, he.hom_dim_K, he.ext_dim_K, chi)
    if he.hom_dim_K - he.ext_dim_K != chi:
        rep.fail("hom-ext=euler", (a, b), (he.hom_dim_K, he.ext_dim_K, chi))
    _finish([rep], out, sess.meta(q=size))


@oracle.command("semi-invariant")
@quiver_arg
@click.option("--q", "size", type=int, required=True)
@click.option("--gamma1", required=True)
@click.option("--gamma0", required=True)
@click.option("--beta", required=True, help="Det-weight (a real Schur root).")
@click.option("--pairs", default=100, show_default=True)
@seed_opt
@out_opt
@handled
def oracle_semi_invariant(quiver_json, size, gamma1, gamma0, beta, pairs, seed, out):
    """sigma_beta on a presentation P(gamma1) -> P(gamma0) and its weight law."""
    from .fields import build_tower
    from .reps import weight_law_check

    sess = _session(quiver_json, True, seed)
    tower = build_tower(sess.quiver, size)
    g1, g0, b = _vec(gamma1), _vec(gamma0), _vec(beta)
    res = weight_law_check(tower, g1, g0, b, pairs, seed)
    rep = Report("semi-invariant", ("gamma1", "gamma0", "beta", "sigma", "coker_dims", "pairs",
                                    "violations"))
    rep.add(g1, g0, b, res.sigma, res.coker_dims, res.pairs, len(res.failures))
    for k, (lhs, rhs) in enumerate(res.failures):
        rep.fail("weight-law", k, f"sigma(gfh)={lhs} predicted={rhs}")
    _finish([rep], out, sess.meta(q=size))


@main.command()
@quiver_arg
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False), help="SVG path.")
@click.option("--highlight", default="", help="Roots to darken, e.g. '1,0,0;1,2,0'.")
@click.option("--png", type=click.Path(dir_okay=False), help="Also write a matplotlib PNG.")
@click.option("--q", "size", default=2, show_default=True)
@seed_opt
@cache_opt
@handled
def picture(quiver_json, out, highlight, png, size, seed, no_cache):
    """Stereographic picture of the domains and the fan (rank 3)."""
    from .picture import build_model, render_png, render_svg

    sess = _session(quiver_json, no_cache, seed)
    if sess.quiver.n != 3 or not is_finite_type(sess.quiver):
        raise RankUnsupported("pictures need a rank-3 quiver of finite type")
    hl = [_vec(h) for h in highlight.split(";") if h.strip()]
    model = build_model(sess.quiver, sess.fan(), sess.domains(size))
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(render_svg(model, hl))
    if png:
        render_png(model, png, hl)
    click.echo(f"# picture\t{len(model.vertices)} vertices\t{len(model.curves)} curves\t"
               f"{len(model.regions)} regions")


@main.command("verify-all")
@quiver_arg
@click.option("--q", "size", type=int, default=None, help="Field size; enables the oracle suite.")
@click.option("--box", "box_radius", default=4, show_default=True)
@click.option("--pairs", default=50, show_default=True, help="Random pairs for the oracle suite.")
@click.option("--domains", "override", type=click.Path(dir_okay=False))
@click.option("--figures", type=click.Path(file_okay=False), help="Write SVG and PNG pictures here.")
@seed_opt
@cache_opt
@out_opt
@handled
def verify_all(quiver_json, size, box_radius, pairs, override, figures, seed, no_cache, out):
    """Run every applicable verification suite."""
    sess = _session(quiver_json, no_cache, seed)
    res = run_verify_all(sess, size, box_radius, pairs, override, figures)
    _emit(res.to_tsv(sess.meta(q=size or "-", box=box_radius)), out)
    sys.exit(res.exit_code)


if __name__ == "__main__":
    main()
