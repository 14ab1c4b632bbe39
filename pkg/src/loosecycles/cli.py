"""Command-line front end.

Exit codes: 0 success, 2 bad parameters, 3 work-bound refusal,
4 failed internal verification.
"""

from __future__ import annotations

import json
import secrets
import sys
from itertools import combinations
from pathlib import Path

import click
import numpy as np

from . import counting
from .cycles import contains_loose_cycle
from .decomposition import MAX_ROUNDS, decompose
from .errors import CaptureFailure, PreconditionError, VerificationError, WorkBoundExceeded
from .hypergraph import Hypergraph, dumps, loads, loads_coloring

EXIT_PRECONDITION = 2
EXIT_WORK_BOUND = 3
EXIT_VERIFICATION = 4


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except PreconditionError as e:
            click.echo(f"precondition violated: {e}", err=True)
            ctx.exit(EXIT_PRECONDITION)
        except WorkBoundExceeded as e:
            click.echo(f"refused: {e}", err=True)
            ctx.exit(EXIT_WORK_BOUND)
        except (VerificationError, CaptureFailure) as e:
            click.echo(f"verification failed: {e}", err=True)
            ctx.exit(EXIT_VERIFICATION)


def _seed(seed: int | None) -> tuple[int, str]:
    if seed is not None:
        return seed, f"# seed={seed}\n"
    drawn = secrets.randbits(64)
    return drawn, f"# seed={drawn} (auto)\n"


def _emit(text: str, records: list[dict], fmt: str, out: str | None, name: str) -> None:
    if fmt == "records":
        body = "".join(json.dumps(rec, sort_keys=True, default=str) + "\n" for rec in records)
    else:
        body = text
    if out is None:
        click.echo(body, nl=False)
        return
    path = Path(out)
    if path.is_dir():
        path = path / f"{name}.{'jsonl' if fmt == 'records' else 'txt'}"
    path.write_text(body)


def _read_graph(path: str) -> Hypergraph:
    try:
        return loads(Path(path).read_text())
    except ValueError as e:
        raise PreconditionError(f"{path}: {e}") from e


format_option = click.option("--format", "fmt", type=click.Choice(["text", "records"]),
                             default="text", show_default=True)
out_option = click.option("--out", type=click.Path(), default=None,
                          help="Output file or directory (default: stdout).")
seed_option = click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None,
                           help="RNG seed; drawn and recorded in the output if omitted.")
threads_option = click.option("--threads", type=click.IntRange(min=1), default=1,
                              show_default=True)


@click.group(cls=_Group)
def cli():
    """Loose-cycle experiments on uniform hypergraphs."""


@cli.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--r", "r", type=click.IntRange(min=1), required=True)
@click.option("--edges", "m", type=click.IntRange(min=0), default=None,
              help="Exact number of edges, chosen uniformly.")
@click.option("--p", "p", type=click.FloatRange(0, 1), default=None,
              help="Independent edge probability.")
@seed_option
@out_option
def gen(n, r, m, p, seed, out):
    """Write a random r-graph on [n]."""
    if (m is None) == (p is None):
        raise PreconditionError("give exactly one of --edges and --p")
    if r > n:
        raise PreconditionError(f"r={r} exceeds n={n}")
    seed, header = _seed(seed)
    rng = np.random.default_rng(seed)
    slots = list(combinations(range(1, n + 1), r))
    if m is not None:
        if m > len(slots):
            raise PreconditionError(f"--edges {m} exceeds C({n},{r}) = {len(slots)}")
        pick = sorted(rng.choice(len(slots), size=m, replace=False).tolist())
    else:
        pick = np.flatnonzero(rng.random(len(slots)) < p).tolist()
    g = Hypergraph(r, n, tuple(slots[i] for i in pick))
    _emit(header + dumps(g), [], "text", out, "graph")


@cli.command("decompose")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--s", "s", type=int, required=True)
@click.option("--max-rounds", type=click.IntRange(min=1), default=MAX_ROUNDS, show_default=True)
@seed_option
@threads_option
@format_option
@out_option
def decompose_cmd(graph, s, max_rounds, seed, threads, fmt, out):
    """Split GRAPH into edge-disjoint r-partite parts with classes of size <= s."""
    g = _read_graph(graph)
    seed, header = _seed(seed)
    d = decompose(g, s, seed, max_rounds)
    d.verify(g)
    bound = d.bound()
    summary = {"t": d.t, "bound": float(bound), "s": s, "n": g.n, "r": g.r, "seed": seed,
               "verified": True}
    if out is not None:
        Path(out).write_text(header + d.dumps())
    if fmt == "records":
        _emit("", [summary], fmt, None, "decompose")
    else:
        click.echo(f"{header}t = {d.t}  bound (n/s)^r ceil(c log n) = {float(bound):.6g}  "
                   f"verified: ok")


@cli.command("find-cycle")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--ell", type=click.IntRange(min=3), required=True)
@format_option
@out_option
def find_cycle(graph, ell, fmt, out):
    """Print a loose ELL-cycle of GRAPH as a witness, or "none"."""
    g = _read_graph(graph)
    if g.r < 3:
        raise PreconditionError("loose cycles need uniformity at least 3")
    w = contains_loose_cycle(g, ell)
    if w is not None and not w.is_valid_in(g):
        raise VerificationError("witness embeds into the host graph")
    text = "none\n" if w is None else w.dumps()
    rec = {"ell": ell, "found": w is not None,
           "edges": None if w is None else [list(e) for e in w.edge_list],
           "vertex_map": None if w is None else w.vertex_map}
    _emit(text, [rec], fmt, out, "find-cycle")


@cli.group(cls=_Group)
def count():
    """Exact and estimated counts."""


def _report_out(reports, fmt, out, name):
    _emit("".join(rp.to_text() for rp in reports), [rp.to_record() for rp in reports],
          fmt, out, name)


@count.command("colorings")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--ell", type=click.IntRange(min=3), required=True)
@click.option("--work-bound", type=click.IntRange(min=1), default=counting.WORK_BOUND,
              show_default=True)
@format_option
@out_option
def count_colorings(graph, n, ell, work_bound, fmt, out):
    """Exact number of colorings of the (r-1)-graph GRAPH with cycle-free extension."""
    g = _read_graph(graph)
    _report_out([counting.count_colorings_exact(g, ell, n, work_bound=work_bound)],
                fmt, out, "colorings")


@count.command("colorings-mc")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--ell", type=click.IntRange(min=3), required=True)
@click.option("--effort", "samples", type=click.IntRange(min=1), default=10_000,
              show_default=True, help="Number of sampled colorings.")
@seed_option
@threads_option
@format_option
@out_option
def count_colorings_mc(graph, n, ell, samples, seed, threads, fmt, out):
    """Monte Carlo estimate of the cycle-free coloring count of GRAPH."""
    g = _read_graph(graph)
    seed, _ = _seed(seed)
    _report_out([counting.count_colorings_mc(g, ell, n, samples, seed, threads=threads)],
                fmt, out, "colorings-mc")


@count.command("forb")
@click.option("--n", "ns", type=click.IntRange(min=1), multiple=True, required=True)
@click.option("--r", "r", type=click.IntRange(min=3), required=True)
@click.option("--ell", type=click.IntRange(min=3), required=True)
@format_option
@out_option
def count_forb(ns, r, ell, fmt, out):
    """Exact number of r-graphs on [n] with no loose ELL-cycle."""
    _report_out([counting.enumerate_forb(n, r, ell) for n in ns], fmt, out, "forb")


@count.command("gr")
@click.option("--n", "ns", type=click.IntRange(min=1), multiple=True, required=True)
@click.option("--r", "r", type=click.IntRange(min=3), required=True)
@click.option("--ell", type=click.IntRange(min=3), required=True)
@click.option("--work-bound", type=click.IntRange(min=1), default=counting.WORK_BOUND,
              show_default=True)
@format_option
@out_option
def count_gr(ns, r, ell, work_bound, fmt, out):
    """Exact number of colored (r-1)-graphs on [n] with cycle-free extension."""
    _report_out([counting.count_gr_small(n, r, ell, work_bound=work_bound) for n in ns],
                fmt, out, "gr")


@count.command("color-set")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("coloring", type=click.Path(exists=True, dir_okay=False))
def count_color_set(graph, coloring):
    """Print |Z| and |Z minus V(G)| for COLORING of GRAPH."""
    g = _read_graph(graph)
    try:
        chi = loads_coloring(g, Path(coloring).read_text())
    except ValueError as e:
        raise PreconditionError(str(e)) from e
    cc = counting.color_set_size(g, chi)
    click.echo(f"used {cc.used} external {cc.external}")


@cli.command("probe-threshold")
@click.option("--r", "r", type=click.IntRange(min=3), required=True)
@click.option("--ell", type=click.IntRange(min=3), required=True)
@click.option("--s", "ss", type=click.IntRange(min=1), multiple=True, required=True)
@click.option("--effort", type=click.IntRange(min=1), default=8, show_default=True,
              help="Restarts of the local search when s is too large for exact mode.")
@seed_option
@format_option
@out_option
def probe_threshold(r, ell, ss, effort, seed, fmt, out):
    """Largest cycle-free subgraph of K_r(s) for each given s."""
    seed, header = _seed(seed)
    reports = [counting.probe_threshold(r, ell, s, effort, seed) for s in ss]
    lines = [header, f"{'s':>4} {'max_edges':>10} {'s^(r-1)':>8} {'ratio':>8}  mode\n"]
    for rp in reports:
        lines.append(f"{rp.s:>4} {rp.max_edges:>10} {rp.s ** (r - 1):>8} "
                     f"{rp.ratio:>8.4f}  {rp.mode}\n")
    _emit("".join(lines), [rp.to_record() | {"seed": seed} for rp in reports], fmt, out,
          "probe-threshold")


@cli.command("bound-report")
@click.option("--n", "ns", type=click.IntRange(min=1), multiple=True, required=True)
@click.option("--r", "r", type=click.IntRange(min=4), required=True)
@click.option("--ell", type=click.IntRange(min=3), required=True)
@click.option("--c-partite", type=click.FloatRange(min=0), default=0.0, show_default=True,
              help="Assumed constant of the dense r-partite cycle bound.")
@format_option
@out_option
def bound_report(ns, r, ell, c_partite, fmt, out):
    """Evaluate the inequality chain bounding the log of the cycle-free colored-graph count."""
    reports = [counting.bound_report(n, r, ell, c_partite) for n in ns]
    _emit("".join(rp.to_text() for rp in reports), [rp.to_record() for rp in reports],
          fmt, out, "bound-report")


def main(argv=None) -> int:
    try:
        code = cli.main(args=argv, prog_name="loosecycles", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    sys.exit(main())
