from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from loosecycles.hypergraph import (
    EdgeColoring, Hypergraph, RPartition, dumps, dumps_coloring, extend, is_strongly_rainbow,
    loads, loads_coloring, strongly_rainbow_subgraph, validate,
)


def test_validate_ok():
    assert validate(Hypergraph(3, 5, [(1, 2, 3)])) is None


@pytest.mark.parametrize("edges, needle", [
    ([(1, 2, 2)], "repeated"),
    ([(1, 2, 6)], "outside"),
    ([(1, 2)], "exactly 3"),
    ([(1, 2, 3), (3, 2, 1)], "duplicate"),
])
def test_validate_violations(edges, needle):
    bad = validate(Hypergraph(3, 5, edges))
    assert bad is not None and needle in bad.invariant
    assert bad.edge is not None


def test_of_rejects_invalid():
    with pytest.raises(ValueError):
        Hypergraph.of(3, 5, [(1, 2, 6)])


def test_equality_is_on_edge_sets():
    assert Hypergraph(3, 5, [(1, 2, 3), (2, 3, 4)]) == Hypergraph(3, 5, [(4, 3, 2), (3, 1, 2)])
    assert Hypergraph(3, 5, [(1, 2, 3)]) != Hypergraph(3, 6, [(1, 2, 3)])


def test_support_ignores_isolated_vertices():
    h = Hypergraph(3, 9, [(1, 2, 3), (3, 4, 5)])
    assert h.support() == {1, 2, 3, 4, 5}


def test_extend_single_edge():
    h = Hypergraph(3, 5, [(1, 2, 3)])
    g = extend(h, EdgeColoring({(1, 2, 3): 5}))
    assert g.r == 4 and g.edges == ((1, 2, 3, 5),)


def test_extend_collision_collapses():
    h = Hypergraph(3, 4, [(1, 2, 3), (1, 2, 4)])
    g = extend(h, EdgeColoring({(1, 2, 3): 4, (1, 2, 4): 3}))
    assert g.edges == ((1, 2, 3, 4),)


def test_extend_distinct():
    h = Hypergraph(3, 9, [(1, 2, 3), (3, 4, 5), (1, 5, 6)])
    chi = EdgeColoring({(1, 2, 3): 7, (3, 4, 5): 8, (1, 5, 6): 9})
    assert set(extend(h, chi).edges) == {(1, 2, 3, 7), (3, 4, 5, 8), (1, 5, 6, 9)}


def test_extend_rejects_bad_colorings():
    h = Hypergraph(3, 5, [(1, 2, 3), (2, 3, 4)])
    with pytest.raises(ValueError, match="not defined"):
        extend(h, EdgeColoring({(1, 2, 3): 5}))
    with pytest.raises(ValueError, match="inside"):
        extend(h, EdgeColoring({(1, 2, 3): 5, (2, 3, 4): 2}))


def test_strongly_rainbow_examples():
    h = Hypergraph(3, 9, [(1, 2, 3)])
    assert is_strongly_rainbow(Hypergraph(3, 4, [(1, 2, 3)]), EdgeColoring({(1, 2, 3): 4}))
    h2 = Hypergraph(3, 6, [(1, 2, 3), (3, 4, 5)])
    assert not is_strongly_rainbow(h2, EdgeColoring({(1, 2, 3): 6, (3, 4, 5): 6}))
    assert not is_strongly_rainbow(h2, EdgeColoring({(1, 2, 3): 6, (3, 4, 5): 1}))

    sub, chi = strongly_rainbow_subgraph(h, EdgeColoring({(1, 2, 3): 9}))
    assert sub.edges == ((1, 2, 3),) and chi[(1, 2, 3)] == 9


def test_strongly_rainbow_subgraph_empty_when_colors_internal():
    h = Hypergraph(3, 6, [(1, 2, 3), (4, 5, 6)])
    sub, chi = strongly_rainbow_subgraph(h, EdgeColoring({(1, 2, 3): 4, (4, 5, 6): 1}))
    assert len(sub) == 0 and len(chi) == 0


def test_strongly_rainbow_subgraph_tie_break():
    h = Hypergraph(3, 9, [(1, 2, 3), (1, 2, 4), (1, 3, 4)])
    chi = EdgeColoring({(1, 2, 3): 9, (1, 2, 4): 9, (1, 3, 4): 8})
    sub, sub_chi = strongly_rainbow_subgraph(h, chi)
    assert sub.edges == ((1, 2, 3), (1, 3, 4))
    assert dict(sub_chi) == {(1, 2, 3): 9, (1, 3, 4): 8}


def test_rpartition():
    p = RPartition(({1, 2}, set(), {3}))
    assert p.n == 3 and p.r == 3 and p.sizes() == (2, 0, 1)
    assert RPartition.from_labels(p.labels(), 3) == p
    with pytest.raises(ValueError):
        RPartition(({1, 2}, {2, 3}))
    with pytest.raises(ValueError):
        RPartition(({1, 2}, {4}))


def test_text_round_trip():
    text = "3 7 3\n1 2 3\n3 4 5\n1 6 7\n"
    h = loads(text)
    assert dumps(h) == text
    chi_text = "1 4\n2 1\n3 2\n"
    chi = loads_coloring(h, chi_text)
    assert chi[(3, 4, 5)] == 1
    assert dumps_coloring(h, chi) == chi_text


def test_loads_rejects_bad_files():
    with pytest.raises(ValueError, match="announces"):
        loads("3 5 2\n1 2 3\n")
    with pytest.raises(ValueError, match="repeated"):
        loads("3 5 1\n1 1 3\n")
    h = loads("3 5 1\n1 2 3\n")
    with pytest.raises(ValueError):
        loads_coloring(h, "1 2\n")


# --- properties -------------------------------------------------------------

@st.composite
def colored_graphs(draw, r=3, max_n=8):
    n = draw(st.integers(r + 1, max_n))
    slots = list(combinations(range(1, n + 1), r))
    edges = draw(st.lists(st.sampled_from(slots), unique=True, max_size=12))
    colors = {e: draw(st.sampled_from([c for c in range(1, n + 1) if c not in e]))
              for e in edges}
    return Hypergraph(r, n, sorted(edges)), EdgeColoring(colors)


@given(colored_graphs(), st.data())
def test_extend_monotone(gc, data):
    h, chi = gc
    keep = data.draw(st.lists(st.sampled_from(h.edges), unique=True) if h.edges else st.just([]))
    sub = h.subgraph(keep)
    assert extend(sub, chi.restrict(sub), h.n).edge_set <= extend(h, chi, h.n).edge_set


@given(colored_graphs())
def test_extend_size_and_collisions(gc):
    h, chi = gc
    ext = extend(h, chi)
    images = [tuple(sorted((*e, chi[e]))) for e in h.edges]
    assert len(ext) <= len(h)
    assert (len(ext) == len(h)) == (len(set(images)) == len(images))


@given(colored_graphs())
def test_rainbow_subgraph_properties(gc):
    h, chi = gc
    sub, sub_chi = strongly_rainbow_subgraph(h, chi)
    assert is_strongly_rainbow(sub, sub_chi)
    assert len(sub) == len(chi.restrict(h).image() - h.support())
    assert strongly_rainbow_subgraph(h, chi) == (sub, sub_chi)


@given(colored_graphs())
def test_format_round_trip(gc):
    h, chi = gc
    text = dumps(h)
    h2 = loads(text)
    assert dumps(h2) == text
    assert dumps_coloring(h2, loads_coloring(h2, dumps_coloring(h, chi))) == dumps_coloring(h, chi)
