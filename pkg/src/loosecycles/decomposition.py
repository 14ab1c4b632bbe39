"""Decomposition of an r-graph into small edge-disjoint r-partite pieces.

A family of random r-partitions is drawn until every relevant r-set
meets all classes of some member ("is captured").  Each class of each
partition is then cut into consecutive blocks of at most ``s`` vertices.
A choice of one block per class is a *cell*, and the edges whose
vertices fall one per block of a cell form an r-partite subgraph of
``K_r(s)``.  Every edge goes to the first cell that captures it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import CaptureFailure, PreconditionError, VerificationError
from .hypergraph import Edge, Hypergraph, RPartition, as_edge, validate

MAX_ROUNDS = 32
EXHAUSTIVE_LIMIT = {2: 64, 3: 16, 4: 13}


def c_of_r(r: int) -> float:
    """Number of random partitions per ``log2 n`` needed to capture all
    r-sets with failure probability at most ``n**-r`` each."""
    if r < 2:
        raise PreconditionError(f"r must be at least 2, got {r}")
    p = math.factorial(r) / r**r
    return -r / math.log2(1 - p)


def family_size(n: int, r: int) -> int:
    return max(1, math.ceil(c_of_r(r) * math.log2(n))) if n > 1 else 1


def part_bound(n: int, r: int, s: int) -> Fraction:
    """``(n/s)**r * ceil(c(r) log2 n)``, the cap on the number of parts."""
    return Fraction(n, s) ** r * family_size(n, r)


def check_block_size(n: int, r: int, s: int) -> None:
    # 1 <= s <= (1 - 1/r) n, in integers
    if s < 1 or s * r > (r - 1) * n:
        raise PreconditionError(
            f"block size s={s} violates 1 <= s <= (1 - 1/r) n "
            f"= {(r - 1) * n / r:g} for n={n}, r={r}"
        )


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_partition(n: int, r: int, rng=None) -> RPartition:
    """Each vertex goes to one of ``r`` classes independently and uniformly."""
    if n < 1 or r < 2:
        raise PreconditionError(f"need n >= 1 and r >= 2, got n={n}, r={r}")
    labels = _rng(rng).integers(0, r, size=n)
    return RPartition.from_labels(labels, r)


def captures(partition: RPartition, edge: Iterable[int]) -> bool:
    e = set(edge)
    return all(len(e & c) == 1 for c in partition.classes)


def _captured_mask(labels: np.ndarray, r: int, tuples: np.ndarray) -> np.ndarray:
    """``out[i, k]`` is True iff partition ``i`` captures r-set ``tuples[k]``.

    ``labels`` has shape (count, n); ``tuples`` holds 1-based vertices.
    """
    lab = labels[:, tuples - 1]                         # (count, m, r)
    hit = np.zeros(lab.shape[:2] + (r,), dtype=bool)
    np.put_along_axis(hit, lab, True, axis=2)
    return hit.all(axis=2)


@dataclass(frozen=True)
class PartitionFamily:
    n: int
    r: int
    partitions: tuple[RPartition, ...]
    rounds: int = 1
    exhaustive: bool = True

    def __len__(self):
        return len(self.partitions)

    def label_matrix(self) -> np.ndarray:
        return np.array([p.labels() for p in self.partitions], dtype=np.int64).reshape(
            len(self.partitions), self.n)

    def first_capturing(self, edges: Sequence[Edge]) -> np.ndarray:
        """Index of the first member capturing each edge, ``-1`` if none."""
        if not edges:
            return np.zeros(0, dtype=np.int64)
        hit = _captured_mask(self.label_matrix(), self.r, np.asarray(edges, dtype=np.int64))
        first = hit.argmax(axis=0)
        first[~hit.any(axis=0)] = -1
        return first


def _uncaptured(labels: np.ndarray, r: int, tuples: np.ndarray, chunk: int = 4096) -> bool:
    for lo in range(0, len(tuples), chunk):
        if not _captured_mask(labels, r, tuples[lo:lo + chunk]).any(axis=0).all():
            return True
    return False


def capture_family(n: int, r: int, rng=None, max_rounds: int = MAX_ROUNDS, *,
                   count: int | None = None, edges: Sequence[Edge] | None = None,
                   exhaustive_limit: int | None = None) -> PartitionFamily:
    """Draw ``ceil(c(r) log2 n)`` random r-partitions capturing every r-set.

    For ``n`` up to ``exhaustive_limit`` all r-subsets of ``[n]`` are
    checked; above it only ``edges`` are (nothing, if not given).  A
    family that misses something is discarded and redrawn, at most
    ``max_rounds`` times in total.
    """
    if n < r:
        raise PreconditionError(f"need n >= r, got n={n}, r={r}")
    gen = _rng(rng)
    k = family_size(n, r) if count is None else count
    if exhaustive_limit is None:
        exhaustive_limit = EXHAUSTIVE_LIMIT.get(r, r + 8)
    exhaustive = n <= exhaustive_limit
    if exhaustive:
        tuples = np.array(list(combinations(range(1, n + 1), r)), dtype=np.int64)
    else:
        tuples = np.asarray(sorted({as_edge(e) for e in edges or ()}), dtype=np.int64)
        tuples = tuples.reshape(-1, r)
    for rnd in range(1, max_rounds + 1):
        labels = gen.integers(0, r, size=(k, n))
        if len(tuples) == 0 or not _uncaptured(labels, r, tuples):
            parts = tuple(RPartition.from_labels(row, r) for row in labels)
            return PartitionFamily(n, r, parts, rnd, exhaustive)
    raise CaptureFailure(
        f"no family of {k} partitions captured every required {r}-set "
        f"in {max_rounds} rounds (n={n})"
    )


@dataclass(frozen=True)
class BlockGrid:
    partition: RPartition
    s: int
    blocks: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def cell_count(self) -> int:
        return math.prod(self.shape)

    @cached_property
    def _where(self) -> dict[int, tuple[int, int]]:
        # vertex -> (class index, 1-based block index)
        return {v: (j, k) for j, bl in enumerate(self.blocks)
                for k, block in enumerate(bl, start=1) for v in block}

    def cell_of(self, edge: Iterable[int]) -> tuple[int, ...] | None:
        """1-based block indices of the cell holding ``edge``, or ``None``
        if the edge is not captured by the partition."""
        ks: list[int] = [0] * len(self.blocks)
        for v in edge:
            j, k = self._where[v]
            if ks[j]:
                return None
            ks[j] = k
        return tuple(ks) if all(ks) else None

    def cell(self, ks: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        return tuple(self.blocks[j][k - 1] for j, k in enumerate(ks))


def block_grid(partition: RPartition, s: int) -> BlockGrid:
    """Cut each class, in ascending vertex order, into blocks of at most ``s``."""
    check_block_size(partition.n, partition.r, s)
    blocks = []
    for cls in partition.classes:
        vs = sorted(cls)
        blocks.append(tuple(tuple(vs[i:i + s]) for i in range(0, len(vs), s)))
    return BlockGrid(partition, s, tuple(blocks))


@dataclass(frozen=True)
class Part:
    """One piece of a decomposition; ``classes`` partition its support."""

    graph: Hypergraph
    classes: tuple[tuple[int, ...], ...]
    source: int                 # index of the partition in the family
    cell: tuple[int, ...]       # 1-based block index per class


@dataclass(frozen=True)
class Decomposition:
    n: int
    r: int
    s: int
    parts: tuple[Part, ...]
    edge_assignment: dict[Edge, int] = field(repr=False)
    family: PartitionFamily | None = field(default=None, repr=False)

    @property
    def t(self) -> int:
        return len(self.parts)

    def bound(self) -> Fraction:
        return part_bound(self.n, self.r, self.s)

    def verify(self, g: Hypergraph) -> None:
        """Check every structural invariant; raise ``VerificationError`` otherwise."""
        seen: dict[Edge, int] = {}
        for i, part in enumerate(self.parts):
            if not part.graph.edges:
                raise VerificationError("parts are non-empty", f"part {i}")
            if len(part.classes) != self.r:
                raise VerificationError("part has r classes", f"part {i}")
            if any(not 1 <= len(c) <= self.s for c in part.classes):
                raise VerificationError("part classes have size at most s", f"part {i}")
            flat = [v for c in part.classes for v in c]
            if len(set(flat)) != len(flat):
                raise VerificationError("part classes are disjoint", f"part {i}")
            if set(flat) != part.graph.support():
                raise VerificationError("part classes cover its support", f"part {i}")
            for e in part.graph.edges:
                if any(len(set(e) & set(c)) != 1 for c in part.classes):
                    raise VerificationError("part is r-partite", f"part {i}, edge {list(e)}")
                if e in seen:
                    raise VerificationError("parts are edge-disjoint", f"edge {list(e)}")
                seen[e] = i
        if set(seen) != g.edge_set:
            raise VerificationError("parts cover exactly the input edges")
        if seen != self.edge_assignment:
            raise VerificationError("edge assignment matches parts")
        if self.t > self.bound():
            raise VerificationError("t <= (n/s)^r ceil(c log n)", f"t={self.t}")

    def dumps(self) -> str:
        lines = [f"{self.t} {self.s} {self.n} {self.r}"]
        for p in self.parts:
            lines.append(" ".join(map(str, (p.source, *p.cell))))
            lines += [" ".join(map(str, c)) for c in p.classes]
            lines.append(f"{p.graph.r} {p.graph.n} {len(p.graph.edges)}")
            lines += [" ".join(map(str, e)) for e in p.graph.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> Decomposition:
        lines = iter(ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#"))
        ints = lambda: list(map(int, next(lines).split()))  # noqa: E731
        t, s, n, r = ints()
        parts = []
        assignment = {}
        for idx in range(t):
            src, *cell = ints()
            classes = tuple(tuple(ints()) for _ in range(r))
            pr, pn, m = ints()
            edges = tuple(tuple(ints()) for _ in range(m))
            g = Hypergraph(pr, pn, edges)
            if validate(g) is not None:
                raise ValueError(f"invalid part {idx}: {validate(g)}")
            parts.append(Part(g, classes, src, tuple(cell)))
            assignment.update({e: idx for e in g.edges})
        return cls(n, r, s, tuple(parts), assignment)


def decompose(g: Hypergraph, s: int, rng=None, max_rounds: int = MAX_ROUNDS, *,
              count: int | None = None, exhaustive_limit: int | None = None) -> Decomposition:
    """Split ``g`` into edge-disjoint r-partite parts with classes of size <= s."""
    bad = validate(g)
    if bad is not None:
        raise PreconditionError(f"invalid hypergraph: {bad}")
    n, r = g.n, g.r
    if r < 2:
        raise PreconditionError(f"r must be at least 2, got {r}")
    check_block_size(n, r, s)
    edges = sorted(g.edge_set)
    family = capture_family(n, r, rng, max_rounds, count=count, edges=edges,
                            exhaustive_limit=exhaustive_limit)
    first = family.first_capturing(edges)
    if (first < 0).any():
        raise VerificationError("every edge is captured by the family")

    grids: dict[int, BlockGrid] = {}
    buckets: dict[tuple[int, tuple[int, ...]], list[Edge]] = {}
    for e, i in zip(edges, first.tolist()):
        grid = grids.get(i)
        if grid is None:
            grid = grids[i] = block_grid(family.partitions[i], s)
        buckets.setdefault((i, grid.cell_of(e)), []).append(e)

    parts = []
    assignment = {}
    for (i, ks), part_edges in sorted(buckets.items()):
        support = {v for e in part_edges for v in e}
        classes = tuple(tuple(v for v in block if v in support) for block in grids[i].cell(ks))
        parts.append(Part(Hypergraph(r, n, tuple(part_edges)), classes, i, ks))
        assignment.update({e: len(parts) - 1 for e in part_edges})
    return Decomposition(n, r, s, tuple(parts), assignment, family)
