"""Uniform hypergraphs, r-partitions and edge colorings.

Vertices are 1-based integer labels drawn from ``{1..n}``.  Edges are
stored as sorted tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

Edge = tuple[int, ...]


def as_edge(vertices: Iterable[int]) -> Edge:
    return tuple(sorted(vertices))


def edge_mask(edge: Iterable[int]) -> int:
    """Bitmask with bit ``v`` set for every vertex ``v`` of the edge."""
    m = 0
    for v in edge:
        m |= 1 << v
    return m


class Violation(NamedTuple):
    invariant: str
    edge: Edge | None = None

    def __str__(self) -> str:
        if self.edge is None:
            return self.invariant
        return f"{self.invariant}: {list(self.edge)}"


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """An r-uniform hypergraph on the ground set ``{1..n}``.

    The constructor keeps edges exactly as given (each sorted), so an
    invalid edge list can be represented and then reported by
    :func:`validate`.  Use :meth:`of` to build a checked, canonical graph.
    Equality is on ``(r, n, edge set)``.
    """

    r: int
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(as_edge(e) for e in self.edges))

    @classmethod
    def of(cls, r: int, n: int, edges: Iterable[Iterable[int]] = ()) -> Hypergraph:
        """Canonical graph: edges sorted and deduplicated, invariants checked."""
        g = cls(r, n, tuple(sorted({as_edge(e) for e in edges})))
        bad = validate(g)
        if bad is not None:
            raise ValueError(f"invalid hypergraph: {bad}")
        return g

    @classmethod
    def complete(cls, r: int, n: int) -> Hypergraph:
        return cls(r, n, tuple(combinations(range(1, n + 1), r)))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def support(self) -> frozenset[int]:
        """Vertices that lie in at least one edge."""
        return frozenset(v for e in self.edges for v in e)

    def subgraph(self, edges: Iterable[Iterable[int]]) -> Hypergraph:
        sub = sorted({as_edge(e) for e in edges})
        missing = [e for e in sub if e not in self.edge_set]
        if missing:
            raise ValueError(f"edges not in graph: {missing[:3]}")
        return Hypergraph(self.r, self.n, tuple(sub))

    def masks(self) -> list[int]:
        return [edge_mask(e) for e in self.edges]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        return as_edge(edge) in self.edge_set

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.r, self.n, self.edge_set) == (other.r, other.n, other.edge_set)

    def __hash__(self):
        return hash((self.r, self.n, self.edge_set))

    def __repr__(self):
        return f"Hypergraph(r={self.r}, n={self.n}, m={len(self.edges)})"


def validate(h: Hypergraph) -> Violation | None:
    """Return ``None`` if ``h`` is a valid r-graph, else the first violation."""
    if h.r < 1:
        return Violation("uniformity must be at least 1")
    if h.n < 0:
        return Violation("ground set size must be non-negative")
    seen = set()
    for e in h.edges:
        if len(e) != h.r:
            return Violation(f"edge does not have exactly {h.r} vertices", e)
        if len(set(e)) != h.r:
            return Violation("edge has a repeated vertex", e)
        if e[0] < 1 or e[-1] > h.n:
            return Violation(f"vertex outside 1..{h.n}", e)
        if e in seen:
            return Violation("duplicate edge", e)
        seen.add(e)
    return None


@dataclass(frozen=True)
class RPartition:
    """Ordered partition of ``{1..n}`` into classes; empty classes allowed."""

    classes: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(frozenset(c) for c in self.classes))
        union = set()
        for c in self.classes:
            if union & c:
                raise ValueError("partition classes overlap")
            union |= c
        if union != set(range(1, len(union) + 1)):
            raise ValueError("partition classes must cover exactly 1..n")

    @classmethod
    def from_labels(cls, labels: Sequence[int], r: int) -> RPartition:
        """``labels[v - 1]`` is the 0-based class index of vertex ``v``."""
        classes = [set() for _ in range(r)]
        for v, j in enumerate(labels, start=1):
            classes[int(j)].add(v)
        return cls(tuple(classes))

    @property
    def r(self) -> int:
        return len(self.classes)

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.classes)

    def labels(self) -> list[int]:
        out = [0] * self.n
        for j, c in enumerate(self.classes):
            for v in c:
                out[v - 1] = j
        return out

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


class EdgeColoring(Mapping[Edge, int]):
    """Map from edges to color vertices.  Read-only after construction."""

    __slots__ = ("_colors",)

    def __init__(self, colors: Mapping[Iterable[int], int] | Iterable[tuple[Iterable[int], int]]):
        items = colors.items() if isinstance(colors, Mapping) else colors
        self._colors = {as_edge(e): int(c) for e, c in items}

    @classmethod
    def from_sequence(cls, h: Hypergraph, colors: Sequence[int]) -> EdgeColoring:
        """Color the edges of ``h`` in their stored order."""
        if len(colors) != len(h.edges):
            raise ValueError(f"expected {len(h.edges)} colors, got {len(colors)}")
        return cls(zip(h.edges, colors))

    def __getitem__(self, edge) -> int:
        return self._colors[as_edge(edge)]

    def __iter__(self):
        return iter(self._colors)

    def __len__(self):
        return len(self._colors)

    def __eq__(self, other):
        if isinstance(other, EdgeColoring):
            return self._colors == other._colors
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._colors.items()))

    def __repr__(self):
        return f"EdgeColoring({self._colors!r})"

    def image(self) -> frozenset[int]:
        """The set of colors actually used."""
        return frozenset(self._colors.values())

    def restrict(self, h: Hypergraph) -> EdgeColoring:
        return EdgeColoring({e: self._colors[e] for e in h.edges})

    def check(self, h: Hypergraph) -> None:
        """Raise ``ValueError`` unless this is a valid coloring of ``h``."""
        for e in h.edges:
            if e not in self._colors:
                raise ValueError(f"coloring is not defined on edge {list(e)}")
            c = self._colors[e]
            if c in e:
                raise ValueError(f"color {c} lies inside its own edge {list(e)}")
            if c < 1:
                raise ValueError(f"color {c} is not a vertex label")


def extend(h: Hypergraph, chi: EdgeColoring, n: int | None = None) -> Hypergraph:
    """The r-graph ``{e + chi(e)}`` obtained by adding each edge's color.

    Colliding extended edges collapse (set semantics), so the result may
    have fewer edges than ``h``.  The ground set is ``n`` if given,
    otherwise large enough for ``h`` and every color.
    """
    chi.check(h)
    ground = max([h.n, *chi.restrict(h).values()]) if n is None else n
    out = sorted({as_edge((*e, chi[e])) for e in h.edges})
    return Hypergraph(h.r + 1, ground, tuple(out))


def is_strongly_rainbow(h: Hypergraph, chi: EdgeColoring) -> bool:
    colors = [chi[e] for e in h.edges]
    if len(set(colors)) != len(colors):
        return False
    return h.support().isdisjoint(colors)


def strongly_rainbow_subgraph(h: Hypergraph, chi: EdgeColoring) -> tuple[Hypergraph, EdgeColoring]:
    """Pick one edge per color lying outside ``V(h)``.

    For every such color the lexicographically smallest edge carrying it
    is kept.  The result is strongly rainbow and has exactly
    ``|Z \\ V(h)|`` edges, ``Z`` being the set of used colors.
    """
    support = h.support()
    chosen: dict[int, Edge] = {}
    for e in sorted(h.edges):
        c = chi[e]
        if c not in support and c not in chosen:
            chosen[c] = e
    edges = tuple(sorted(chosen.values()))
    sub = Hypergraph(h.r, h.n, edges)
    return sub, EdgeColoring({e: chi[e] for e in edges})


# --- text formats -----------------------------------------------------------

def _content_lines(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def dumps(h: Hypergraph) -> str:
    lines = [f"{h.r} {h.n} {len(h.edges)}"]
    lines += [" ".join(map(str, e)) for e in h.edges]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Hypergraph:
    """Parse the ``r n m`` + edge-lines format.  Lines starting with ``#`` are ignored."""
    lines = _content_lines(text)
    if not lines:
        raise ValueError("empty hypergraph file")
    r, n, m = map(int, lines[0].split())
    body = lines[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    h = Hypergraph(r, n, tuple(tuple(map(int, ln.split())) for ln in body))
    bad = validate(h)
    if bad is not None:
        raise ValueError(f"invalid hypergraph: {bad}")
    return h


def dumps_coloring(h: Hypergraph, chi: EdgeColoring) -> str:
    """One ``e_index color`` line per edge; ``e_index`` is 1-based file order."""
    return "".join(f"{i} {chi[e]}\n" for i, e in enumerate(h.edges, start=1))


def loads_coloring(h: Hypergraph, text: str) -> EdgeColoring:
    pairs = {}
    for ln in _content_lines(text):
        i, c = map(int, ln.split())
        if not 1 <= i <= len(h.edges):
            raise ValueError(f"edge index {i} out of range 1..{len(h.edges)}")
        if i in pairs:
            raise ValueError(f"edge index {i} colored twice")
        pairs[i] = c
    chi = EdgeColoring({h.edges[i - 1]: c for i, c in pairs.items()})
    chi.check(h)
    return chi
