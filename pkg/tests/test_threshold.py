import itertools
from fractions import Fraction

import networkx as nx
from networkx.algorithms.threshold import is_threshold_graph
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cospec.cotree import decompose
from cospec.errors import BudgetExceeded
from cospec.graph import (are_isomorphic, canonical_label, complete_graph, cycle_graph, disjoint_union,
                          empty_graph, induced_p4_exists, path_graph, star_graph)
from cospec.spectral import SpectrumKind, gen_spectrum
from cospec.threshold import (check_lazzarin, collisions, creation_sequence, enumerate_threshold, fraction_csv,
                              fraction_row, generalized_q_check, is_threshold, q_collisions, q_mate_fraction,
                              realize_threshold)

from test_graph import ATLAS

symbols = st.lists(st.sampled_from("id"), max_size=12)


def test_realize_examples():
    assert realize_threshold("d") == complete_graph(2)
    assert are_isomorphic(realize_threshold("iid"), star_graph(3))
    with pytest.raises(ValueError):
        realize_threshold("x")


def test_recognition_examples():
    assert not is_threshold(path_graph(4))
    assert not is_threshold(cycle_graph(4))
    assert is_threshold(star_graph(3))
    assert is_threshold(empty_graph(1))


@given(symbols)
def test_realizations_are_threshold_and_peel_back(seq):
    g = realize_threshold(seq)
    assert is_threshold(g)
    assert are_isomorphic(realize_threshold(creation_sequence(g)), g)


def _nx_is_threshold(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return is_threshold_graph(h)


def test_peeling_agrees_with_enumeration_and_networkx():
    for n in range(1, 8):
        members = {canonical_label(g) for g in enumerate_threshold(n)}
        for g in (g for g in ATLAS if g.order == n):
            assert is_threshold(g) == (canonical_label(g) in members) == _nx_is_threshold(g)


def test_peeling_agrees_with_enumeration_order8():
    members = {canonical_label(g) for g in enumerate_threshold(8)}
    seen = set()
    for seq in itertools.product("id", repeat=7):
        g = realize_threshold(seq)
        seen.add(canonical_label(g))
        assert is_threshold(g)
    assert seen == members


def test_enumeration_counts():
    assert {canonical_label(g) for g in enumerate_threshold(2)} == \
        {canonical_label(complete_graph(2)), canonical_label(empty_graph(2))}
    for n in range(1, 11):
        assert sum(1 for _ in enumerate_threshold(n)) == 2 ** (n - 1)


@pytest.mark.parametrize("n", range(1, 10))
def test_threshold_graphs_are_cographs_and_degree_determined(n):
    graphs = list(enumerate_threshold(n))
    degrees = set()
    for g in graphs:
        assert not induced_p4_exists(g)
        decompose(g)
        degrees.add(tuple(sorted(g.degrees())))
    assert len(degrees) == len(graphs)


@pytest.mark.parametrize("n", range(1, 12))
def test_no_adjacency_mates(n):
    assert check_lazzarin(n)


def test_budget():
    with pytest.raises(BudgetExceeded):
        check_lazzarin(13)
    with pytest.raises(BudgetExceeded):
        q_mate_fraction(13)
    assert check_lazzarin(5, budget=5)


@pytest.mark.parametrize("n", range(4, 11))
def test_q_fraction_lower_bound(n):
    f = q_mate_fraction(n)
    assert f >= Fraction(1, 8)
    assert generalized_q_check(n)


def test_minimal_q_collision():
    groups = q_collisions(4)
    k13, k3k1 = star_graph(3), disjoint_union(complete_graph(3), empty_graph(1))
    labels = [{canonical_label(g) for g in grp} for grp in groups]
    assert {canonical_label(k13), canonical_label(k3k1)} in labels
    assert q_mate_fraction(4) >= Fraction(1, 4)
    with pytest.raises(ValueError):
        q_mate_fraction(3)


def test_q_collisions_are_non_isomorphic_and_cospectral():
    for grp in q_collisions(8):
        q = SpectrumKind.SIGNLESS_LAPLACIAN
        assert len({gen_spectrum(g, q).p for g in grp}) == 1
        assert len({canonical_label(g) for g in grp}) == len(grp)


def test_fraction_table_csv():
    text = fraction_csv([fraction_row(n) for n in (4, 5)])
    lines = text.splitlines()
    assert lines[0].startswith("# schema:") and lines[1] == "n,total,with_mate,fraction"
    n, total, with_mate, frac = lines[2].split(",")
    assert int(n) == 4 and int(total) == 8 and Fraction(frac) == Fraction(int(with_mate), 8)
    assert collisions(6, SpectrumKind.ADJACENCY) == []
