"""Slow reference implementations used as test oracles.

None of these touch the search code in ``loosecycles.cycles``; they work
straight from the definition of a loose cycle.
"""

from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations, product

import numpy as np


def template_positions(r, ell):
    """0-based label positions of each template edge."""
    nv = ell * (r - 1)
    return [[(j * (r - 1) + i) % nv for i in range(r)] for j in range(ell)]


@lru_cache(maxsize=None)
def _perm_array(m, k):
    return np.array(list(permutations(range(m), k)), dtype=np.int64).reshape(-1, k)


def embeds_loose_cycle(edges, r, ell):
    """Try every injective map from template vertices into the support."""
    edges = {tuple(sorted(e)) for e in edges}
    support = sorted({v for e in edges for v in e})
    k = ell * (r - 1)
    if len(support) < k or len(edges) < ell:
        return False
    bits = np.array([1 << v for v in support], dtype=np.int64)
    present = np.zeros(1 << (max(support) + 1), dtype=bool)
    for e in edges:
        present[sum(1 << v for v in e)] = True
    imgs = bits[_perm_array(len(support), k)]
    ok = np.ones(len(imgs), dtype=bool)
    for pos in template_positions(r, ell):
        ok &= present[np.bitwise_or.reduce(imgs[:, pos], axis=1)]
    return bool(ok.any())


def embedding_count(edges, r, ell):
    """Number of injective template maps that land on edges (labelled copies)."""
    edges = {tuple(sorted(e)) for e in edges}
    support = sorted({v for e in edges for v in e})
    k = ell * (r - 1)
    if len(support) < k:
        return 0
    total = 0
    for p in permutations(support, k):
        if all(tuple(sorted(p[i] for i in pos)) in edges for pos in template_positions(r, ell)):
            total += 1
    return total


def is_loose_cycle_order(sets):
    ell = len(sets)
    return all(
        len(sets[i] & sets[j]) == (1 if (j - i) in (1, ell - 1) else 0)
        for i, j in combinations(range(ell), 2)
    )


def cycle_edge_sets(edges, r, ell):
    """All ell-subsets of edges that form a loose cycle in some cyclic order."""
    edges = sorted({tuple(sorted(e)) for e in edges})
    nv = ell * (r - 1)
    out = []
    for combo in combinations(edges, ell):
        sets = [set(e) for e in combo]
        if len(set().union(*sets)) != nv:
            continue
        if any(is_loose_cycle_order([sets[0], *perm]) for perm in permutations(sets[1:])):
            out.append(combo)
    return out


def has_cycle(edges, r, ell):
    return bool(cycle_edge_sets(edges, r, ell))


def colorings_by_extension(edges, n, ell):
    """Cycle-free coloring count: group colorings by their extension first."""
    edges = [tuple(sorted(e)) for e in edges]
    r = len(edges[0]) + 1 if edges else 0
    opts = [[c for c in range(1, n + 1) if c not in e] for e in edges]
    groups = Counter(
        frozenset(tuple(sorted((*e, c))) for e, c in zip(edges, combo))
        for combo in product(*opts)
    )
    return sum(mult for ext, mult in groups.items() if not ext or not has_cycle(ext, r, ell))


def max_free_subgraph(edges, r, ell):
    edges = list(edges)
    best = 0
    for mask in range(1 << len(edges)):
        sub = [e for i, e in enumerate(edges) if mask >> i & 1]
        if len(sub) > best and not has_cycle(sub, r, ell):
            best = len(sub)
    return best


def random_edges(rng, n, r, p):
    return [e for e in combinations(range(1, n + 1), r) if rng.random() < p]
