"""Desk-scale counting experiments around loose-cycle-free hypergraphs.

Every exhaustive routine checks a work estimate against a guard before
starting and raises :class:`~loosecycles.errors.WorkBoundExceeded` rather
than running for hours.  Exact counts are Python ints.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations, product
from typing import NamedTuple, Sequence

import numpy as np

from .cycles import IncrementalDetector
from .decomposition import c_of_r
from .errors import PreconditionError, WorkBoundExceeded
from .hypergraph import EdgeColoring, Hypergraph, edge_mask

WORK_BOUND = 10**8
FORB_WALK_LIMIT = 22       # max C(n, r) for the 2^C(n, r) subset walk
FORB_WIDTH_LIMIT = 24
THRESHOLD_EXACT_LIMIT = 16  # max s^r for the exact threshold walk
MC_SHARD = 512


class Estimate(NamedTuple):
    value: float
    stderr: float
    samples: int


@dataclass
class CountReport:
    kind: str
    params: dict
    method: str
    exact_count: int | None = None
    mc_estimate: Estimate | None = None
    bound_value: int | None = None
    bound_applies: bool = True
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.exact_count is None) == (self.mc_estimate is None):
            raise ValueError("exactly one of exact_count / mc_estimate must be set")

    def to_record(self) -> dict:
        rec = asdict(self)
        if self.mc_estimate is not None:
            rec["mc_estimate"] = self.mc_estimate._asdict()
        return rec

    def to_text(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.kind} [{self.method}] {ps}"]
        if self.exact_count is not None:
            lines.append(f"  exact count : {self.exact_count}")
        else:
            est = self.mc_estimate
            lines.append(f"  estimate    : {est.value:.6g} +- {est.stderr:.3g} "
                         f"({est.samples} samples)")
        if self.bound_value is not None:
            lines.append(f"  bound       : {self.bound_value}"
                         + ("" if self.bound_applies else " (not applicable)"))
        for k, v in self.extra.items():
            lines.append(f"  {k:<12}: {v}")
        return "\n".join(lines) + "\n"


# --- colorings --------------------------------------------------------------

def _color_options(g: Hypergraph, n: int) -> list[list[int]]:
    return [[c for c in range(1, n + 1) if c not in e] for e in g.edges]


def _check_coloring_params(g: Hypergraph, ell: int, n: int) -> None:
    if g.r < 2:
        raise PreconditionError("colored graphs need uniformity at least 2")
    if ell < 3:
        raise PreconditionError(f"cycle length must be at least 3, got {ell}")
    support = g.support()
    if support and max(support) > n:
        raise PreconditionError(f"graph has vertices outside 1..{n}")


def _colored_walk(masks: Sequence[int], options: Sequence[Sequence[int | None]],
                  r: int, ell: int) -> int:
    """Count choices (one option per edge) whose extension is cycle-free.

    An option is a color vertex, or ``None`` meaning the edge is absent.
    Extended edges are kept with multiplicity so collisions collapse.
    """
    det = IncrementalDetector(r, ell)
    present: dict[int, int] = {}
    m = len(masks)

    def walk(i: int) -> int:
        if i == m:
            return 1
        total = 0
        base = masks[i]
        for c in options[i]:
            if c is None:
                total += walk(i + 1)
                continue
            f = base | (1 << c)
            k = present.get(f, 0)
            if k:
                present[f] = k + 1
                total += walk(i + 1)
                present[f] = k
            elif not det.closes_cycle(f):
                det.push(f)
                present[f] = 1
                total += walk(i + 1)
                del present[f]
                det.pop()
        return total

    return walk(0)


def count_colorings_exact(g: Hypergraph, ell: int, n: int, *,
                          work_bound: int = WORK_BOUND) -> CountReport:
    """Number of colorings of ``g`` whose extension has no loose ``ell``-cycle."""
    _check_coloring_params(g, ell, n)
    options = _color_options(g, n)
    total = math.prod(len(o) for o in options)
    if total > work_bound:
        raise WorkBoundExceeded("count_colorings_exact", total, work_bound)
    count = _colored_walk(g.masks(), options, g.r + 1, ell)
    return CountReport(
        "colorings", {"n": n, "r": g.r + 1, "ell": ell, "m": len(g.edges)},
        "exhaustive", exact_count=count, bound_value=total,
    )


def _mc_shard(args) -> int:
    masks, options, r, ell, size, seed = args
    rng = np.random.default_rng(seed)
    opts = [np.asarray(o) for o in options]
    picks = np.stack([o[rng.integers(0, len(o), size=size)] for o in opts], axis=1) \
        if opts else np.zeros((size, 0), dtype=np.int64)
    free = 0
    for row in picks.tolist():
        det = IncrementalDetector(r, ell)
        seen = set()
        ok = True
        for base, c in zip(masks, row):
            f = base | (1 << c)
            if f in seen:
                continue
            if det.closes_cycle(f):
                ok = False
                break
            det.push(f)
            seen.add(f)
        free += ok
    return free


def count_colorings_mc(g: Hypergraph, ell: int, n: int, samples: int, seed=None, *,
                       threads: int = 1) -> CountReport:
    """Monte Carlo estimate of the number of cycle-free colorings.

    Samples are split into fixed-size shards, each with its own seed
    spawned from ``seed``, so the result does not depend on ``threads``.
    """
    _check_coloring_params(g, ell, n)
    if samples < 1:
        raise PreconditionError("samples must be at least 1")
    options = _color_options(g, n)
    total = math.prod(len(o) for o in options)
    masks = g.masks()
    sizes = [MC_SHARD] * (samples // MC_SHARD)
    if samples % MC_SHARD:
        sizes.append(samples % MC_SHARD)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(masks, options, g.r + 1, ell, k, sd) for k, sd in zip(sizes, seeds)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            free = sum(pool.map(_mc_shard, jobs))
    else:
        free = sum(map(_mc_shard, jobs))
    p = free / samples
    stderr = total * math.sqrt(p * (1 - p) / (samples - 1)) if samples > 1 else math.inf
    return CountReport(
        "colorings", {"n": n, "r": g.r + 1, "ell": ell, "m": len(g.edges), "seed": seed},
        "monte-carlo", mc_estimate=Estimate(p * total, stderr, samples), bound_value=total,
        extra={"free_samples": free},
    )


class ColorCount(NamedTuple):
    used: int       # |Z|
    external: int   # |Z \ V(G)|


def color_set_size(g: Hypergraph, chi: EdgeColoring) -> ColorCount:
    chi.check(g)
    z = chi.restrict(g).image()
    return ColorCount(len(z), len(z - g.support()))


# --- families of cycle-free graphs -----------------------------------------

def _free_subsets(masks: Sequence[int], r: int, ell: int) -> tuple[int, int]:
    """Count cycle-free subsets of ``masks`` and find the largest size.

    Adding an edge to a cycle-free set can only create cycles through
    that edge, and a set containing a cycle has no cycle-free supersets,
    so such branches are cut immediately.
    """
    det = IncrementalDetector(r, ell)
    m = len(masks)
    best = 0

    def walk(i: int) -> int:
        nonlocal best
        if i == m:
            best = max(best, len(det))
            return 1
        total = walk(i + 1)
        f = masks[i]
        if not det.closes_cycle(f):
            det.push(f)
            total += walk(i + 1)
            det.pop()
        return total

    return walk(0), best


def enumerate_forb(n: int, r: int, ell: int, *, walk_limit: int = FORB_WALK_LIMIT,
                   width_limit: int = FORB_WIDTH_LIMIT) -> CountReport:
    """Exact number of r-graphs on ``[n]`` with no loose ``ell``-cycle.

    When ``n < ell*(r-1)`` no cycle fits and the answer is ``2**C(n, r)``;
    that case is answered in closed form if the walk is over its limit.
    """
    if r < 3 or ell < 3 or n < 0:
        raise PreconditionError(f"need r >= 3, ell >= 3, n >= 0 (got {n}, {r}, {ell})")
    big_n = math.comb(n, r)
    params = {"n": n, "r": r, "ell": ell}
    too_small = n < ell * (r - 1)
    if big_n > min(walk_limit, width_limit):
        if not too_small:
            raise WorkBoundExceeded("enumerate_forb subset walk", 2**big_n,
                                    2**min(walk_limit, width_limit))
        return CountReport("forb", params, "exhaustive", exact_count=2**big_n,
                           bound_value=2**big_n,
                           extra={"max_free_edges": big_n, "note": "closed form, no cycle fits"})
    masks = [edge_mask(e) for e in combinations(range(1, n + 1), r)]
    count, ex = _free_subsets(masks, r, ell)
    bound = sum(math.comb(big_n, i) for i in range(ex + 1))
    return CountReport("forb", params, "exhaustive", exact_count=count, bound_value=bound,
                       extra={"max_free_edges": ex, "lower_bound": 2**ex})


def count_gr_small(n: int, r: int, ell: int, *, work_bound: int = WORK_BOUND) -> CountReport:
    """Number of edge-colored (r-1)-graphs on ``[n]`` with cycle-free extension.

    Colored graphs are identified by edge set and coloring; isolated
    vertices play no role.
    """
    if r < 3 or ell < 3 or n < 1:
        raise PreconditionError(f"need r >= 3, ell >= 3, n >= 1 (got {n}, {r}, {ell})")
    k = r - 1
    slots = list(combinations(range(1, n + 1), k))
    per_slot = 1 + max(n - k, 0)
    work = per_slot ** len(slots)
    params = {"n": n, "r": r, "ell": ell}
    if work > work_bound:
        if n < ell * (r - 1):
            return CountReport("gr", params, "exhaustive", exact_count=work, bound_value=work,
                               extra={"note": "closed form, no cycle fits"})
        raise WorkBoundExceeded("count_gr_small", work, work_bound)
    options = [[None, *(c for c in range(1, n + 1) if c not in e)] for e in slots]
    count = _colored_walk([edge_mask(e) for e in slots], options, r, ell)
    return CountReport("gr", params, "exhaustive", exact_count=count, bound_value=work)


# --- extremal probe ---------------------------------------------------------

@dataclass
class ThresholdReport:
    r: int
    ell: int
    s: int
    max_edges: int
    mode: str                  # "exact" or "heuristic" (a lower bound)
    edges: tuple = ()

    @property
    def ratio(self) -> float:
        return self.max_edges / self.s ** (self.r - 1)

    def to_record(self) -> dict:
        return {"r": self.r, "ell": self.ell, "s": self.s, "max_edges": self.max_edges,
                "ratio": self.ratio, "mode": self.mode}


def complete_partite(r: int, s: int) -> Hypergraph:
    classes = [range(j * s + 1, (j + 1) * s + 1) for j in range(r)]
    return Hypergraph(r, r * s, tuple(product(*classes)))


def _max_free_exact(masks: Sequence[int], r: int, ell: int) -> list[int]:
    det = IncrementalDetector(r, ell)
    m = len(masks)
    best: list[int] = []
    chosen: list[int] = []

    def walk(i: int) -> None:
        nonlocal best
        if len(chosen) + (m - i) <= len(best):
            return
        if i == m:
            best = list(chosen)
            return
        f = masks[i]
        if not det.closes_cycle(f):
            det.push(f)
            chosen.append(i)
            walk(i + 1)
            chosen.pop()
            det.pop()
        walk(i + 1)

    walk(0)
    return best


def _max_free_heuristic(masks: Sequence[int], r: int, ell: int, effort: int,
                        rng: np.random.Generator) -> list[int]:
    m = len(masks)

    def greedy(start: list[int], order) -> list[int]:
        det = IncrementalDetector(r, ell)
        for i in start:
            det.push(masks[i])
        inside = set(start)
        for i in order:
            if i not in inside and not det.closes_cycle(masks[i]):
                det.push(masks[i])
                inside.add(i)
        return sorted(inside)

    best: list[int] = []
    for _ in range(max(effort, 1)):
        cur = greedy([], rng.permutation(m).tolist())
        for _ in range(2 * m):
            if not cur:
                break
            drop = set(rng.choice(len(cur), size=min(2, len(cur)), replace=False).tolist())
            kept = [e for j, e in enumerate(cur) if j not in drop]
            cand = greedy(kept, rng.permutation(m).tolist())
            if len(cand) >= len(cur):
                cur = cand
        if len(cur) > len(best):
            best = cur
    return best


def probe_threshold(r: int, ell: int, s: int, effort: int = 8, seed=None, *,
                    exact_limit: int = THRESHOLD_EXACT_LIMIT) -> ThresholdReport:
    """Largest cycle-free subgraph of ``K_r(s)``: exact when ``s**r`` is
    within ``exact_limit``, otherwise the best found by randomized local
    search (a lower bound)."""
    if s < 1:
        raise PreconditionError(f"s must be at least 1, got {s}")
    k = complete_partite(r, s)
    masks = k.masks()
    if s**r <= exact_limit:
        best, mode = _max_free_exact(masks, r, ell), "exact"
    else:
        best = _max_free_heuristic(masks, r, ell, effort, np.random.default_rng(seed))
        mode = "heuristic"
    return ThresholdReport(r, ell, s, len(best), mode, tuple(k.edges[i] for i in best))


# --- bound arithmetic -------------------------------------------------------

@dataclass
class BoundStep:
    name: str
    lhs: float
    rhs: float
    holds: bool
    note: str = ""


@dataclass
class BoundReport:
    n: int
    r: int
    ell: int
    s: int
    c_decomp: float
    c_color: float
    t_bound: float
    ts_bound: float
    log_colorings_per_graph: float
    log_g_bound: float
    envelope: float
    steps: list[BoundStep]

    @property
    def asymptotic_regime(self) -> bool:
        return self.steps[-1].holds

    def to_record(self) -> dict:
        return asdict(self) | {"asymptotic_regime": self.asymptotic_regime}

    def to_text(self) -> str:
        lines = [
            f"n={self.n} r={self.r} ell={self.ell} s={self.s}",
            f"  c (decomposition, r-1) = {self.c_decomp:.6g}",
            f"  c (color-set bound)    = {self.c_color:.6g}",
            f"  t bound                = {self.t_bound:.6g}",
            f"  t s^(r-2) bound        = {self.ts_bound:.6g}",
            f"  log colorings per G0   = {self.log_colorings_per_graph:.6g}",
            f"  log g bound            = {self.log_g_bound:.6g}",
            f"  envelope               = {self.envelope:.6g}",
        ]
        for st in self.steps:
            mark = "holds" if st.holds else "FAILS"
            lines.append(f"  [{mark}] {st.name}: {st.lhs:.6g} <= {st.rhs:.6g}"
                         + (f"  ({st.note})" if st.note else ""))
        if not self.asymptotic_regime:
            lines.append("  asymptotic regime not reached")
        return "\n".join(lines) + "\n"


def bound_report(n: int, r: int, ell: int, c_partite: float = 0.0) -> BoundReport:
    """Evaluate each inequality in the chain bounding the log of the cycle-free colored-graph count.

    ``c_partite`` is the unknown constant of the dense r-partite cycle bound;
    the default 0 is the most favorable value, so any failing step also
    fails for the true constant.
    """
    if r < 4 or ell < 3:
        raise PreconditionError(f"need r >= 4 and ell >= 3, got r={r}, ell={ell}")
    if c_partite < 0:
        raise PreconditionError("c_partite must be non-negative")
    if n < 2:
        raise PreconditionError(f"n={n} gives block size s < 1")
    log_n = math.log2(n)
    s = math.floor(log_n**2)
    if s < 1:
        raise PreconditionError(f"n={n} gives block size s < 1")
    k = r - 1
    if s * k > (k - 1) * n:
        raise PreconditionError(
            f"n={n}: s={s} violates s <= (1 - 1/{k}) n; n too small")
    loglog_n = math.log2(log_n)
    c_decomp = c_of_r(k)
    c_color = c_partite + r
    nk = float(n) ** k
    t_cells = (n / s) ** k * math.ceil(c_decomp * log_n)
    t_bound = 2 * c_decomp * (n / s) ** k * log_n
    ts = t_bound * s ** (r - 2)
    ts_cap = 3 * c_decomp * nk / log_n
    log_base = math.log2(c_color * s ** (r - 2))
    e_max = math.comb(n, k)
    per_graph = c_color * ts * log_n + e_max * log_base
    per_graph_relaxed = 3 * c_color * c_decomp * nk + nk * log_base
    l1 = (3 * c_color * c_decomp + 1) * nk + (math.log2(c_color) + (r - 2) * math.log2(s)) * nk
    l2 = (3 * c_color * c_decomp + 1) * nk + (math.log2(c_color) + 2 * (r - 2) * loglog_n) * nk
    l3 = 2 * r * nk * loglog_n
    steps = [
        BoundStep("block size in range", s * k, (k - 1) * n, s * k <= (k - 1) * n,
                  "s(r-1) <= (r-2) n"),
        BoundStep("t relaxation", t_cells, t_bound, t_cells <= t_bound,
                  "(n/s)^(r-1) ceil(c log n) <= 2c (n/s)^(r-1) log n"),
        BoundStep("t s^(r-2) bound", ts, ts_cap, ts <= ts_cap),
        BoundStep("per-graph coloring bound", per_graph, per_graph_relaxed,
                  per_graph <= per_graph_relaxed and e_max <= nk and log_base >= 0,
                  "log of the product bound"),
        BoundStep("log s <= 2 log log n", (r - 2) * math.log2(s), 2 * (r - 2) * loglog_n,
                  math.log2(s) <= 2 * loglog_n),
        BoundStep("final envelope", l2, l3, l2 <= l3, "large-n step"),
    ]
    return BoundReport(n, r, ell, s, c_decomp, c_color, t_bound, ts, per_graph, l1, l3, steps)
