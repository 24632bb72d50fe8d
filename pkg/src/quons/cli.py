"""Command line interface.

Exit status is 0 when every check passes, 1 when a check fails and 2 on usage
errors (bad arguments, unreadable input, unsupported category).
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, TextIO

from . import __version__, config
from .graphic import (GuardExceededError, brute_force_dim, check_6j_self_duality, check_genfun_series,
                      check_graph_duality, check_max_equals_s_ghz, check_wheel_self_duality, ghz,
                      ghz_genfun, max_genfun, max_state, verlinde_table)
from .graphs import GraphError, dual_graph, is_isomorphic, parse_graph_spec, reverse_all_edges
from .io import ParseError, file_to_mtc, fingerprint, mtc_to_file, parse_map, parse_mtc, serialize_map
from .mtc import MtcData, UnsupportedParameterError, builtin, verify_modular_data, verlinde_diagonalization
from .quon import (check_biprojection_duality, check_fourier_duality, check_gannon_inequality,
                   enumerate_fusion_subsets, mueger_center, projection, supp)
from .recoupling import MultiplicityError, RecouplingData, build_recoupling, verify_recoupling
from .report import VerificationReport


class UsageError(Exception):
    pass


USAGE_ERRORS = (UsageError, ParseError, GraphError, UnsupportedParameterError, MultiplicityError,
                GuardExceededError, FileNotFoundError, IsADirectoryError, KeyError, ValueError)


@dataclass
class Context:
    args: argparse.Namespace
    out: TextIO
    category: str = ""
    fingerprint: str = ""
    reports: list[VerificationReport] = field(default_factory=list)

    @property
    def json(self) -> bool:
        return self.args.format == "json-lines"

    def meta(self) -> dict:
        return {"version": __version__, "seed": self.args.seed, "tol": self.args.tol,
                "category": self.category, "fingerprint": self.fingerprint}

    def header(self) -> None:
        if not self.json:
            m = self.meta()
            self.out.write(f"quons {m['version']}  seed={m['seed']}  tol={m['tol']:g}  "
                           f"category={m['category']}  fingerprint={m['fingerprint']}\n")

    def data(self, text: str, **record) -> None:
        if self.json:
            self.out.write(json.dumps({"record": "data", **record, **self.meta()}, default=str) + "\n")
        else:
            self.out.write(text + "\n")

    def run(self, thunks: list[Callable[[], VerificationReport]]) -> None:
        threads = max(1, self.args.threads)
        if threads == 1 or len(thunks) == 1:
            reps = [t() for t in thunks]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                reps = list(pool.map(lambda t: t(), thunks))
        self.reports.extend(reps)

    def emit_reports(self) -> None:
        """Text mode keeps the logical check order; json-lines records are sorted
        by check id so the stream does not depend on scheduling."""
        if not self.json:
            for rep in self.reports:
                self.out.write(rep.summary() + "\n")
            return
        recs = [{"record": "check", "check_id": f"{rep.title}/{c.check_id}", "category": rep.category,
                 "parameters": rep.parameters, "max_error": c.max_error, "passed": c.passed,
                 "sampled": rep.sampled, "detail": c.detail, **self.meta()}
                for rep in self.reports for c in rep.checks]
        for rec in sorted(recs, key=lambda r: r["check_id"]):
            self.out.write(json.dumps(rec, default=str) + "\n")

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


def load_category(spec: str) -> tuple[MtcData, dict | None, str]:
    """A category from a data file path or a built-in name, with its fingerprint."""
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            f = parse_mtc(fh.read())
        m, F = file_to_mtc(f)
        return m, F, fingerprint(f)
    try:
        m = builtin(spec)
    except KeyError:
        raise UsageError(f"{spec!r} is neither a file nor a built-in category") from None
    return m, None, fingerprint(mtc_to_file(m))


def _recoupling(ctx: Context, m: MtcData, F) -> RecouplingData:
    return build_recoupling(m, F=F, tol=ctx.args.tol, seed=ctx.args.seed)


def _word(m: MtcData, X) -> str:
    return " ".join(m.labels[x] for x in X) if X else "()"


# ---------------------------------------------------------------------------
# commands

def cmd_verify(ctx: Context, m: MtcData, F) -> None:
    a = ctx.args

    def diag() -> VerificationReport:
        rep = VerificationReport("verlinde diagonalization", m.name, tol=a.tol)
        err = verlinde_diagonalization(m)
        rep.add("S-N-Sinv-diagonal", err <= a.tol, err)
        return rep

    thunks = [lambda: verify_modular_data(m, a.tol), diag,
              lambda: check_fourier_duality(m, tol=a.tol, seed=a.seed)]
    try:
        r = build_recoupling(m, F=F, validate=False)
        thunks.append(lambda: verify_recoupling(r, tol=a.tol, seed=a.seed))
    except UnsupportedParameterError as exc:
        ctx.data(f"recoupling: skipped ({exc})", note="recoupling skipped", reason=str(exc))
    except MultiplicityError as exc:
        ctx.data(f"recoupling: skipped ({exc})", note="recoupling skipped", reason=str(exc))
    ctx.run(thunks)


def cmd_subcategories(ctx: Context, m: MtcData, F) -> None:
    for K in enumerate_fusion_subsets(m):
        Kh = mueger_center(m, K)
        sK, sKh = supp(m, projection(m, K)), supp(m, projection(m, Kh))
        names = lambda S: "{" + ", ".join(m.labels[x] for x in sorted(S)) + "}"
        ctx.data(f"K={names(K)}  center={names(Kh)}  Supp(P_K)={sK:.6g}  Supp(P_center)={sKh:.6g}  "
                 f"product={sK * sKh:.6g}  mu={m.mu:.6g}",
                 K=[m.labels[x] for x in sorted(K)], center=[m.labels[x] for x in sorted(Kh)],
                 supp_K=sK, supp_center=sKh, mu=m.mu)
    ctx.run([lambda: check_biprojection_duality(m), lambda: check_gannon_inequality(m)])


def cmd_verlinde(ctx: Context, m: MtcData, F) -> None:
    a = ctx.args
    n, g = a.n, a.g
    ver = verlinde_table(m, n, g)
    for X in itertools.product(range(m.rank), repeat=n):
        dim = brute_force_dim(m, X, g)
        v = complex(ver[X])
        ctx.data(f"dim({_word(m, X)}; g={g}) = {dim}   S-sum = {v.real:.12g}",
                 labels=[m.labels[x] for x in X], g=g, dim=dim, s_sum=v.real)
    ctx.run([lambda: check_max_equals_s_ghz(m, n, g, tol=a.tol)])


def cmd_ghz_max(ctx: Context, m: MtcData, F) -> None:
    a = ctx.args
    G, M = ghz(m, a.n, a.g), max_state(m, a.n, a.g)
    ctx.data(f"GHZ_{a.n},{a.g} = {G!r}", state="ghz", value=repr(G))
    ctx.data(f"Max_{a.n},{a.g} = {M!r}", state="max", value=repr(M))
    ctx.run([lambda: check_max_equals_s_ghz(m, a.n, a.g, tol=a.tol)])


def cmd_genfun(ctx: Context, m: MtcData, F) -> None:
    a = ctx.args
    for name, table in (("GHZ", ghz_genfun(m, a.n)), ("Max", max_genfun(m, a.n))):
        for X in itertools.product(range(m.rank), repeat=a.n):
            fn = table[X]
            if not fn.terms:
                continue
            terms = " + ".join(f"({c.real:.6g})/({p:.6g} - z)" for p, c in fn.terms)
            series = ", ".join(f"{c.real:.6g}" for c in fn.series(a.terms))
            ctx.data(f"{name}[{_word(m, X)}](z) = {terms}   series: {series}",
                     state=name, labels=[m.labels[x] for x in X],
                     terms=[[p, c.real, c.imag] for p, c in fn.terms],
                     series=[c.real for c in fn.series(a.terms)])
    ctx.run([lambda: check_genfun_series(m, a.n, a.terms, tol=max(a.tol, 1e-7))])


def cmd_selfdual(ctx: Context, m: MtcData, F) -> None:
    a = ctx.args
    G = parse_graph_spec(a.graph)
    r = _recoupling(ctx, m, F)
    tol = max(a.tol, 1e-8)
    thunks = [lambda: check_graph_duality(m, r, G, tol=tol, seed=a.seed, samples=a.samples)]
    head, _, arg = a.graph.partition(":")
    if head == "tetrahedron":
        thunks.append(lambda: check_6j_self_duality(m, r, tol=tol))
    elif head == "wheel" and m.rank ** (4 * int(arg)) <= config.SWEEP_CAP:
        thunks.append(lambda: check_wheel_self_duality(m, r, int(arg), tol=tol))
    ctx.run(thunks)
    worst = max(rep.max_error for rep in ctx.reports)
    ctx.data(f"max residual = {worst:.3e}", max_residual=worst)


def cmd_dual_graph(ctx: Context) -> None:
    a = ctx.args
    with open(a.mapfile, encoding="utf-8") as fh:
        G = parse_map(fh.read())
    D = dual_graph(G, a.turn)
    if not ctx.json:
        ctx.out.write(serialize_map(D))
    else:
        ctx.data("", map=serialize_map(D), vertices=len(D.vertices()), edges=D.n_edges, faces=len(D.faces()))
    rep = VerificationReport("dual graph", "", parameters={"turn": a.turn})
    rep.add("primal-genus-zero", G.genus == 0)
    rep.add("dual-counts", (len(D.vertices()), len(D.faces())) == (len(G.faces()), len(G.vertices())),
            detail=f"V,E,F = {D.counts()}")
    rep.add("double-dual-reverses-edges", is_isomorphic(dual_graph(D, a.turn), reverse_all_edges(G)))
    ctx.reports.append(rep)


# ---------------------------------------------------------------------------
# parser

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol", type=float, default=argparse.SUPPRESS, help=f"tolerance (default {config.DEFAULT_TOL})")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=f"RNG seed (default {config.DEFAULT_SEED})")
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker threads (default 1)")
    p.add_argument("--format", choices=("text", "json-lines"), default=argparse.SUPPRESS,
                   help="output format (default text)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="quons", parents=[common],
                                     description="Verify modular data, quon identities and graphic quons.")
    parser.add_argument("--version", action="version", version=f"quons {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, category=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if category:
            sp.add_argument("category", help="built-in name (fibonacci, ising, semion, zN, su2_K) or data file")
        return sp

    add("verify", "check the modular data axioms, Fourier duality and F-symbols")
    add("subcategories", "biprojections, Mueger centers and support products")
    sp = add("verlinde", "generalized Verlinde formula against fusion counting")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--g", type=int, default=1)
    sp = add("ghz-max", "GHZ and Max states and their Fourier relation")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--g", type=int, default=0)
    sp = add("genfun", "generating functions in the genus variable")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--terms", type=int, default=4, help="highest power of z checked")
    sp = add("selfdual", "graph duality identity sweep")
    sp.add_argument("--graph", required=True, help="tetrahedron, wheel:N, cycle:N, dipole:N or theta")
    sp.add_argument("--samples", type=int, default=200, help="sample count when the sweep is too large")
    sp = add("dual-graph", "dual of a map file", category=False)
    sp.add_argument("mapfile")
    sp.add_argument("--turn", choices=("ccw", "cw"), default="ccw")
    return parser


COMMANDS = {
    "verify": cmd_verify,
    "subcategories": cmd_subcategories,
    "verlinde": cmd_verlinde,
    "ghz-max": cmd_ghz_max,
    "genfun": cmd_genfun,
    "selfdual": cmd_selfdual,
}


def cli_main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    defaults = {"tol": config.DEFAULT_TOL, "seed": config.DEFAULT_SEED, "threads": 1, "format": "text"}
    for k, v in defaults.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    for k in ("n", "g", "terms", "samples"):
        if getattr(args, k, 0) < 0:
            print(f"quons: error: --{k} must be nonnegative", file=sys.stderr)
            return 2
    ctx = Context(args, out)
    try:
        if args.command == "dual-graph":
            ctx.category = "-"
            ctx.header()
            cmd_dual_graph(ctx)
        else:
            m, F, fp = load_category(args.category)
            ctx.category, ctx.fingerprint = m.name, fp
            ctx.header()
            COMMANDS[args.command](ctx, m, F)
    except USAGE_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"quons: error: {msg}", file=sys.stderr)
        return 2
    ctx.emit_reports()
    if any(r.sampled for r in ctx.reports) and not ctx.json:
        out.write("SAMPLED: at least one sweep used seeded sampling\n")
    return 0 if ctx.passed else 1


def main() -> None:
    sys.exit(cli_main())
