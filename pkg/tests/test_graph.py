import gzip
import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cospec.cotree import decompose
from cospec.errors import MalformedEncoding, NotACograph, OrderOutOfRange
from cospec.graph import (Graph, adjacency_batch, are_isomorphic, canonical_graph, canonical_label,
                          complement, complete_bipartite, complete_graph, cycle_graph, disjoint_union,
                          emit_graph6, empty_graph, induced_p4_exists, induced_p4_subsets, join,
                          parse_graph6, path_graph, read_graph6_file, star_graph, write_graph6_file)
from cospec.spectral import charpoly, poly_mul

PAIR15 = ("N]?GWWGAGP@FAMAM@F?", "Ns_??KF@oK?p@a@b_po")


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def from_nx(h):
    idx = {v: i for i, v in enumerate(h.nodes())}
    return Graph.from_edges(len(idx), [(idx[u], idx[v]) for u, v in h.edges()])


ATLAS = [from_nx(h) for h in nx.graph_atlas_g()[1:]]  # every graph of order 1..7


@st.composite
def graphs(draw, max_order=9, min_order=1):
    n = draw(st.integers(min_order, max_order))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, b in zip(pairs, mask) if b])


@st.composite
def permutations(draw, n):
    return draw(st.permutations(list(range(n))))


# representation -----------------------------------------------------------

def test_validation_rejects_asymmetry_and_loops():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (1,))
    with pytest.raises(ValueError):
        Graph.from_edges(0, [])


def test_matrix_round_trip():
    g = cycle_graph(5)
    assert Graph.from_matrix(g.adjacency_matrix()) == g
    assert g.degrees() == [2] * 5 and g.num_edges == 5


def test_components_and_induced():
    g = disjoint_union(path_graph(3), complete_graph(2))
    assert sorted(map(sorted, g.components())) == [[0, 1, 2], [3, 4]]
    assert g.induced([3, 4]) == complete_graph(2)


# graph6 -------------------------------------------------------------------

def test_graph6_small_encodings():
    assert emit_graph6(empty_graph(1)) == "@"
    assert parse_graph6("@") == empty_graph(1)
    assert emit_graph6(complete_graph(2)) == "A_"


def test_graph6_order15_strings_round_trip():
    for s in PAIR15:
        g = parse_graph6(s)
        assert g.order == 15
        assert emit_graph6(g) == s


def test_graph6_matches_networkx():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(1, 20)
        g = Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < .4])
        ours = emit_graph6(g)
        theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert ours == theirs
        assert parse_graph6(theirs) == g


@pytest.mark.parametrize("bad", ["", "A", "A_?", "B~~", "A\x7f", "A`"])
def test_graph6_malformed(bad):
    with pytest.raises((MalformedEncoding, OrderOutOfRange)):
        parse_graph6(bad)


def test_graph6_order_zero_and_long_form():
    with pytest.raises(OrderOutOfRange):
        parse_graph6("?")
    with pytest.raises(OrderOutOfRange):
        parse_graph6("~??~")
    with pytest.raises(OrderOutOfRange):
        emit_graph6(empty_graph(63))


def test_graph6_header_accepted():
    assert parse_graph6(">>graph6<<A_") == complete_graph(2)


def test_graph6_files(tmp_path):
    gs = ATLAS[:50]
    for name in ("g.g6", "g.g6.gz"):
        path = tmp_path / name
        assert write_graph6_file(path, gs) == 50
        assert list(read_graph6_file(path)) == gs
    assert gzip.open(tmp_path / "g.g6.gz", "rt").readline().strip() == emit_graph6(gs[0])


@given(graphs(max_order=30))
def test_graph6_round_trip_property(g):
    assert parse_graph6(emit_graph6(g)) == g


def test_adjacency_batch():
    gs = [path_graph(4), star_graph(3)]
    b = adjacency_batch(gs)
    assert b.shape == (2, 4, 4)
    assert np.array_equal(b[1], star_graph(3).adjacency_matrix())


# algebra ------------------------------------------------------------------

def test_named_graph_algebra():
    assert complement(complete_graph(3)) == empty_graph(3)
    assert complement(empty_graph(1)) == empty_graph(1)
    k13c = complement(star_graph(3))
    assert k13c.num_edges == 3 and are_isomorphic(k13c, disjoint_union(complete_graph(3), empty_graph(1)))
    assert disjoint_union(empty_graph(1), empty_graph(1)) == empty_graph(2)
    assert disjoint_union(complete_graph(2), empty_graph(1)).num_edges == 1
    assert join(empty_graph(1), empty_graph(1)) == complete_graph(2)
    assert are_isomorphic(join(empty_graph(2), empty_graph(2)), cycle_graph(4))
    assert are_isomorphic(join(empty_graph(2), empty_graph(2)), complete_bipartite(2, 2))
    assert are_isomorphic(join(empty_graph(1), empty_graph(3)), star_graph(3))


@pytest.mark.parametrize("n", range(1, 7))
def test_complement_involution_exhaustive(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        assert complement(complement(g)) == g


@given(graphs(), graphs())
def test_join_is_de_morgan(g, h):
    direct = join(g, h)
    assert direct == complement(disjoint_union(complement(g), complement(h)))
    n = g.order
    for u in range(n):
        for v in range(n, n + h.order):
            assert direct.has_edge(u, v)


def test_union_charpoly_is_product():
    rng = random.Random(7)
    for _ in range(50):
        g, h = (from_nx(nx.gnp_random_graph(rng.randint(1, 8), .5, seed=rng.randrange(10**6)))
                for _ in range(2))
        lhs = charpoly(disjoint_union(g, h).adjacency_matrix()).coeffs
        assert list(lhs) == poly_mul(charpoly(g.adjacency_matrix()).coeffs, charpoly(h.adjacency_matrix()).coeffs)


# P4 -----------------------------------------------------------------------

def test_p4_named():
    assert induced_p4_exists(path_graph(4))
    assert not induced_p4_exists(cycle_graph(4))
    assert not induced_p4_exists(parse_graph6(PAIR15[0]))
    assert not induced_p4_exists(parse_graph6(PAIR15[1]))


def test_p4_scan_agrees_with_subset_oracle_and_decompose():
    # every graph of order <= 7
    for g in ATLAS:
        has = induced_p4_exists(g)
        assert has == any(True for _ in induced_p4_subsets(g))
        try:
            decompose(g)
            assert not has
        except NotACograph:
            assert has


# isomorphism --------------------------------------------------------------

def test_canonical_label_named():
    k13, k3k1 = star_graph(3), disjoint_union(complete_graph(3), empty_graph(1))
    assert canonical_label(k13) != canonical_label(k3k1)
    assert are_isomorphic(cycle_graph(4), complete_bipartite(2, 2))
    assert not are_isomorphic(path_graph(4), star_graph(3))
    a, b = (parse_graph6(s) for s in PAIR15)
    assert canonical_label(a) != canonical_label(b)


def test_canonical_label_separates_the_atlas():
    labels = [canonical_label(g) for g in ATLAS]
    assert len(set(labels)) == len(ATLAS) == 1252


@settings(max_examples=150)
@given(st.data())
def test_canonical_label_relabeling_invariant(data):
    g = data.draw(graphs(max_order=12))
    perm = data.draw(permutations(g.order))
    h = g.relabel(perm)
    assert canonical_label(g) == canonical_label(h)
    assert canonical_graph(g) == canonical_graph(h)


def test_canonical_label_agrees_with_networkx_on_random_pairs():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(5, 10)
        m = rng.randint(0, n * (n - 1) // 2)
        g = from_nx(nx.gnm_random_graph(n, m, seed=rng.randrange(10**6)))
        h = from_nx(nx.gnm_random_graph(n, m, seed=rng.randrange(10**6)))
        assert are_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_double_complement_isomorphic_random():
    rng = random.Random(5)
    for _ in range(100):
        g = from_nx(nx.gnp_random_graph(rng.randint(1, 10), rng.random(), seed=rng.randrange(10**6)))
        assert are_isomorphic(g, complement(complement(g)))


def test_symmetric_graphs_are_fast_and_correct():
    for g in (empty_graph(20), complete_graph(20), cycle_graph(20), complete_bipartite(10, 10)):
        h = g.relabel(list(reversed(range(20))))
        assert canonical_label(g) == canonical_label(h)


def test_canonical_label_ceiling():
    with pytest.raises(OrderOutOfRange):
        canonical_label(empty_graph(21))
