import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cospec.cotree import (JOIN, LEAF, UNION, Cotree, Node, QuasiCotree, canonical_form, complement_cotree,
                           decompose, find_labeled_subtree, find_subhierarchy, hierarchy_of, parse_tree,
                           realize, realize_quasi, substitute_star)
from cospec.enumeration import count_avoiding, count_hierarchies, enumerate_cographs, enumerate_hierarchies
from cospec.errors import (MultipleStarLeaves, NotACograph, PatternTooSmall, StarAbsentWhenRequired,
                           TreeSyntaxError, UnaryInternalNode, VertexNotFound)
from cospec.graph import (are_isomorphic, complement, complete_graph, cycle_graph, disjoint_union,
                          empty_graph, parse_graph6, path_graph, star_graph)
from cospec.sampling import random_cotree

from test_graph import ATLAS


@st.composite
def cotrees(draw, max_size=14):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_size))
    return random_cotree(n, random.Random(seed))


def _ev(node, label):
    """Independent realization: a join is the complement of the union of complements."""
    if node.is_leaf:
        return empty_graph(1)
    flip = JOIN if label == UNION else UNION
    parts = [_ev(c, flip) for c in node.children]
    if label == JOIN:
        parts = [complement(p) for p in parts]
    g = parts[0]
    for h in parts[1:]:
        g = disjoint_union(g, h)
    return complement(g) if label == JOIN else g


# parsing ------------------------------------------------------------------

def test_parse_examples():
    h = parse_tree("(. .)")
    assert isinstance(h, Node) and h.size == 2
    t = parse_tree("J(. .)")
    assert isinstance(t, Cotree) and realize(t) == complete_graph(2)
    q = parse_tree("U(. {A_})")
    assert isinstance(q, QuasiCotree)
    assert are_isomorphic(realize_quasi(q), disjoint_union(complete_graph(2), empty_graph(1)))


@pytest.mark.parametrize("text,err", [
    ("(.)", UnaryInternalNode),
    ("U(J(.) .)", UnaryInternalNode),
    ("U({A_} {A_})", MultipleStarLeaves),
    ("(. .", TreeSyntaxError),
    ("(. .) .", TreeSyntaxError),
    ("U(U(. .) .)", TreeSyntaxError),
    ("(. x)", TreeSyntaxError),
    ("U(. {A_", TreeSyntaxError),
    ("", TreeSyntaxError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_tree(text)


def test_parse_expectations():
    with pytest.raises(StarAbsentWhenRequired):
        parse_tree("U(. .)", expect="quasi")
    with pytest.raises(TreeSyntaxError):
        parse_tree("U(. {A_})", expect="cotree")
    assert isinstance(parse_tree("(. .)", expect="cotree"), Cotree)
    assert isinstance(parse_tree("U(. .)", expect="hierarchy"), Node)


def test_inner_label_fixes_root_label():
    t = parse_tree("(. J(. .))")
    assert isinstance(t, Cotree) and t.label == UNION


@given(cotrees())
def test_canonical_text_round_trips(t):
    assert canonical_form(parse_tree(canonical_form(t))) == canonical_form(t)
    assert parse_tree(t.root.text) == t.root


# canonical form -----------------------------------------------------------

def test_canonical_form_unordered():
    assert canonical_form(parse_tree("(. (. .))")) == canonical_form(parse_tree("((. .) .)"))
    assert canonical_form(parse_tree("(. . .)")) != canonical_form(parse_tree("(. (. .))"))


def test_size6_hierarchies_have_33_texts():
    texts = {canonical_form(h) for h in enumerate_hierarchies(6)}
    assert len(texts) == 33


# realization --------------------------------------------------------------

def test_realize_examples():
    assert realize(parse_tree("J(. .)")) == complete_graph(2)
    assert realize(parse_tree("U(. .)")) == empty_graph(2)
    assert are_isomorphic(realize(parse_tree("J(U(. .) U(. .))")), cycle_graph(4))


@pytest.mark.parametrize("n", range(1, 9))
def test_lca_rule_matches_recursive_evaluation(n):
    for t in enumerate_cographs(n):
        assert are_isomorphic(realize(t), _ev(t.root, t.label))


@pytest.mark.parametrize("n", range(1, 8))
def test_label_swap_realizes_complement(n):
    for h in enumerate_hierarchies(n):
        assert realize(Cotree(h, JOIN)) == complement(realize(Cotree(h, UNION)))


@pytest.mark.parametrize("n", range(1, 9))
def test_decompose_inverts_realize(n):
    for t in enumerate_cographs(n):
        assert canonical_form(decompose(realize(t))) == canonical_form(t)


# decomposition ------------------------------------------------------------

def test_decompose_examples():
    with pytest.raises(NotACograph):
        decompose(path_graph(4))
    assert canonical_form(decompose(star_graph(3))) == "J(. U(. . .))"
    for s in ("N]?GWWGAGP@FAMAM@F?", "Ns_??KF@oK?p@a@b_po"):
        t = decompose(parse_graph6(s))
        assert t.size == 15


def test_decompose_unique_over_relabelings():
    rng = random.Random(11)
    for g in ATLAS:
        try:
            text = canonical_form(decompose(g))
        except NotACograph:
            continue
        for _ in range(3):
            perm = list(range(g.order))
            rng.shuffle(perm)
            assert canonical_form(decompose(g.relabel(perm))) == text


# complement / hierarchy ---------------------------------------------------

def test_complement_cotree_examples():
    assert canonical_form(complement_cotree(parse_tree("J(. .)"))) == "U(. .)"
    assert canonical_form(hierarchy_of(parse_tree("J(. .)"))) == "(. .)"


@given(cotrees())
def test_complement_cotree_involution_and_realization(t):
    c = complement_cotree(t)
    assert complement_cotree(c) == t
    assert hierarchy_of(c) == hierarchy_of(t)
    assert realize(c) == complement(realize(t))


# search -------------------------------------------------------------------

def test_find_subhierarchy_examples():
    h = parse_tree("(. (. .))")
    path = find_subhierarchy(h, parse_tree("(. .)"))
    assert path == (1,) and h.at(path).text == "(. .)"
    assert find_subhierarchy(parse_tree("(. .)"), parse_tree("(. . .)")) is None
    with pytest.raises(PatternTooSmall):
        find_subhierarchy(h, LEAF)


@pytest.mark.parametrize("n", range(1, 13))
def test_containment_fraction_by_search(n):
    pattern = parse_tree("(. .)")
    avoid = sum(1 for h in enumerate_hierarchies(n) if find_subhierarchy(h, pattern) is None)
    assert avoid == count_avoiding(n, 2)[n]
    assert sum(1 for _ in enumerate_hierarchies(n)) == count_hierarchies(n)[n]


def test_find_labeled_subtree_parity():
    t = parse_tree("U(. J(. .))")
    assert find_labeled_subtree(t, t) == ()
    assert find_labeled_subtree(t, parse_tree("J(. .)")) == (1,)
    assert find_labeled_subtree(t, parse_tree("U(. .)")) is None


def test_exactly_one_root_label_contains_a_labeled_pattern():
    pattern = parse_tree("U(J(. . .) J(. U(. J(. U(. . .)))))")
    found = 0
    for h in enumerate_hierarchies(11):
        path = find_subhierarchy(h, pattern.root)
        if path is None:
            continue
        found += 1
        hits = [lab for lab in (UNION, JOIN) if Cotree(h, lab).label_at(path) == pattern.label]
        assert len(hits) == 1
        assert find_labeled_subtree(Cotree(h, hits[0]), pattern) is not None
    assert found > 0


# substitution -------------------------------------------------------------

def test_substitute_examples():
    t = parse_tree("J(. U(. .))")
    q = substitute_star(t, (), path_graph(4))
    assert realize_quasi(q) == path_graph(4)
    leaf_path = next(p for p, n in t.root.walk() if n.is_leaf)
    assert are_isomorphic(realize_quasi(substitute_star(t, leaf_path, empty_graph(1))), realize(t))
    with pytest.raises(VertexNotFound):
        substitute_star(t, (5,), path_graph(4))


def test_star_expansion_homomorphism():
    rng = random.Random(4)
    for _ in range(100):
        t = random_cotree(rng.randint(1, 20), rng)
        paths = [p for p, _ in t.root.walk()]
        u = rng.choice(paths)
        q = substitute_star(t, u, realize(t.subtree(u)))
        assert are_isomorphic(realize_quasi(q), realize(t))


def test_quasi_requires_one_star():
    with pytest.raises(StarAbsentWhenRequired):
        QuasiCotree(parse_tree("(. .)"), UNION)
    with pytest.raises(MultipleStarLeaves):
        QuasiCotree(Node([Node(payload=empty_graph(1)), Node(payload=empty_graph(2))]), UNION)


def test_node_rejects_unary():
    with pytest.raises(UnaryInternalNode):
        Node([LEAF])


def test_random_cotrees_cover_small_shapes():
    seen = set()
    rng = random.Random(0)
    for _ in range(400):
        seen.add(random_cotree(4, rng).root.text)
    assert len(seen) == 5
