"""Loose cycle templates and detection.

A loose cycle of length ``ell`` in an r-graph is a cyclic sequence of
``ell`` edges where consecutive edges meet in exactly one vertex and
non-consecutive edges are disjoint (so it spans ``ell*(r-1)`` vertices).

The search works edge by edge: from the current end of a path it only
tries edges through a vertex that is private to the last edge, and it
requires the new edge to meet everything seen so far in that single
vertex.  Edges are handled as integer bitmasks over vertex labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import PreconditionError, WorkBoundExceeded
from .hypergraph import Edge, Hypergraph, as_edge, edge_mask

MAX_SUPPORT = 12
MAX_EDGES = 64


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_params(r: int, ell: int) -> None:
    if r < 3:
        raise PreconditionError(f"loose cycles need uniformity r >= 3, got {r}")
    if ell < 3:
        raise PreconditionError(f"loose cycles need length >= 3, got {ell}")


@dataclass(frozen=True)
class LooseCycleTemplate:
    r: int
    ell: int
    edges: tuple[Edge, ...]

    @property
    def vertex_count(self) -> int:
        return self.ell * (self.r - 1)

    def as_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.r, self.vertex_count, tuple(sorted(self.edges)))


def template(r: int, ell: int) -> LooseCycleTemplate:
    """Canonical loose cycle on labels ``1..ell*(r-1)``.

    Edge ``j`` holds the ``r`` consecutive labels starting at
    ``(j-1)*(r-1)+1``; the last edge wraps around to label 1.
    """
    _check_params(r, ell)
    nv = ell * (r - 1)
    edges = []
    for j in range(ell):
        start = j * (r - 1)
        edges.append(tuple((start + i) % nv + 1 for i in range(r)))
    return LooseCycleTemplate(r, ell, tuple(edges))


@dataclass(frozen=True)
class CycleWitness:
    """A labelled embedding of the template: ``vertex_map[t]`` is the host
    vertex for template label ``t``; ``edge_list`` the host edges in cyclic
    order (``edge_list[j]`` is the image of template edge ``j``)."""

    r: int
    ell: int
    vertex_map: dict[int, int]
    edge_list: tuple[Edge, ...]

    def is_valid_in(self, h: Hypergraph) -> bool:
        tpl = template(self.r, self.ell)
        if sorted(self.vertex_map) != list(range(1, tpl.vertex_count + 1)):
            return False
        if len(set(self.vertex_map.values())) != tpl.vertex_count:
            return False
        for te, he in zip(tpl.edges, self.edge_list, strict=True):
            if as_edge(self.vertex_map[v] for v in te) != as_edge(he):
                return False
            if he not in h:
                return False
        return True

    def dumps(self) -> str:
        lines = [f"{self.r} {self.ell}"]
        lines += [" ".join(map(str, e)) for e in self.edge_list]
        lines += [f"{t} {v}" for t, v in sorted(self.vertex_map.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> CycleWitness:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        r, ell = map(int, lines[0].split())
        edges = tuple(tuple(map(int, ln.split())) for ln in lines[1:1 + ell])
        pairs = (map(int, ln.split()) for ln in lines[1 + ell:])
        vmap = {t: v for t, v in pairs}
        if len(vmap) != ell * (r - 1):
            raise ValueError("witness vertex map has the wrong size")
        return cls(r, ell, vmap, edges)


def _witness(r: int, ell: int, masks: Sequence[int]) -> CycleWitness:
    # junction[j] is the vertex shared by edge j and edge j+1 (cyclically)
    junction = [next(_bits(masks[j] & masks[(j + 1) % ell])) for j in range(ell)]
    vmap = {}
    for j in range(ell):
        base = j * (r - 1)
        vmap[base + 1] = junction[j - 1]
        inner = masks[j] & ~(1 << junction[j - 1]) & ~(1 << junction[j])
        for i, v in enumerate(_bits(inner)):
            vmap[base + 2 + i] = v
    edges = tuple(as_edge(_bits(m)) for m in masks)
    return CycleWitness(r, ell, vmap, edges)


def _cycles_from(masks, incident, ell, start, canonical) -> Iterator[tuple[int, ...]]:
    """Yield index tuples of loose cycles whose first edge is ``start``.

    With ``canonical`` set, every other edge index must exceed ``start``
    and the second edge index must be below the last one, so each
    unlabelled cycle is produced exactly once over all starts.
    Without it, every cycle through ``start`` is produced twice (once per
    direction).
    """
    first = masks[start]
    path = [start]

    def grow(used, tail_private, j12):
        last = len(path) + 1 == ell
        for v in _bits(tail_private):
            vbit = 1 << v
            for g in incident.get(v, ()):
                if canonical and g <= start:
                    continue
                gm = masks[g]
                inter = gm & used
                if not last:
                    if inter != vbit:
                        continue
                    path.append(g)
                    yield from grow(used | gm, gm & ~used, j12 or vbit)
                    path.pop()
                else:
                    w = inter & ~vbit
                    if not w or w & (w - 1) or not (w & first & ~j12):
                        continue
                    if canonical and path[1] > g:
                        continue
                    yield (*path, g)

    yield from grow(first, first, 0)


def _incidence(masks: Sequence[int]) -> dict[int, list[int]]:
    inc: dict[int, list[int]] = {}
    for i, m in enumerate(masks):
        for v in _bits(m):
            inc.setdefault(v, []).append(i)
    return inc


def iter_loose_cycles(h: Hypergraph, ell: int) -> Iterator[CycleWitness]:
    """Every copy of the loose cycle in ``h``, each edge set exactly once.

    Copies come out in a fixed canonical order: by smallest edge (in the
    sorted edge order), then depth-first in ascending vertex/edge order.
    """
    _check_params(h.r, ell)
    edges = sorted(h.edge_set)
    masks = [edge_mask(e) for e in edges]
    incident = _incidence(masks)
    for start in range(len(masks)):
        for cyc in _cycles_from(masks, incident, ell, start, canonical=True):
            yield _witness(h.r, ell, [masks[i] for i in cyc])


def contains_loose_cycle(h: Hypergraph, ell: int) -> CycleWitness | None:
    """First loose cycle of length ``ell`` in canonical order, or ``None``."""
    if len(h.edges) < ell:
        _check_params(h.r, ell)
        return None
    return next(iter_loose_cycles(h, ell), None)


def count_loose_cycles(h: Hypergraph, ell: int, *, max_support: int = MAX_SUPPORT,
                       max_edges: int = MAX_EDGES) -> int:
    """Number of distinct loose-cycle copies (as edge sets) in ``h``."""
    _check_params(h.r, ell)
    support = len(h.support())
    if support > max_support:
        raise WorkBoundExceeded("count_loose_cycles vertex support", support, max_support)
    if len(h.edge_set) > max_edges:
        raise WorkBoundExceeded("count_loose_cycles edge count", len(h.edge_set), max_edges)
    return sum(1 for _ in iter_loose_cycles(h, ell))


class IncrementalDetector:
    """Edge set that answers "does this new edge close a loose cycle?".

    Intended for depth-first walks that add and remove edges in stack
    order.  If the current set is cycle-free, any cycle after adding an
    edge must pass through it, so only that edge needs searching.
    """

    def __init__(self, r: int, ell: int):
        _check_params(r, ell)
        self.r = r
        self.ell = ell
        self.masks: list[int] = []
        self.incident: dict[int, list[int]] = {}

    def __len__(self):
        return len(self.masks)

    def closes_cycle(self, mask: int) -> bool:
        """Whether adding ``mask`` would create a cycle through it.  Does not add."""
        if len(self.masks) + 1 < self.ell:
            return False
        self.push(mask)
        try:
            return next(_cycles_from(self.masks, self.incident, self.ell,
                                     len(self.masks) - 1, canonical=False), None) is not None
        finally:
            self.pop()

    def push(self, mask: int) -> None:
        idx = len(self.masks)
        self.masks.append(mask)
        for v in _bits(mask):
            self.incident.setdefault(v, []).append(idx)

    def pop(self) -> None:
        mask = self.masks.pop()
        for v in _bits(mask):
            self.incident[v].pop()

