"""Hierarchies, cotrees and quasi-cotrees.

A :class:`Node` is a rooted unordered tree whose children are kept sorted by
canonical text, so a node is addressed stably by its path of child indices
from the root.  A bare ``Node`` tree is a hierarchy; :class:`Cotree` adds the
root label (all deeper labels alternate); :class:`QuasiCotree` is a cotree in
which exactly one leaf carries a graph payload (the star leaf).

Text grammar::

    tree  := [label] "(" tree (" " tree)+ ")" | "." | "{" graph6 "}"
    label := "U" | "J"
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import (MultipleStarLeaves, NotACograph, PatternTooSmall, StarAbsentWhenRequired,
                     TreeSyntaxError, UnaryInternalNode, VertexNotFound)
from .graph import Graph, complement, disjoint_union, emit_graph6, join, parse_graph6

UNION = "U"
JOIN = "J"

Path = tuple[int, ...]

_KEY = str.maketrans({".": "!"})  # leaves sort before internal nodes


def flip(label: str) -> str:
    return JOIN if label == UNION else UNION


class Node:
    """Tree node; children are stored in canonical order."""

    __slots__ = ("children", "payload", "text", "size")

    def __init__(self, children=(), payload: Optional[Graph] = None):
        children = tuple(children)
        if len(children) == 1:
            raise UnaryInternalNode("internal vertices need at least two children")
        if payload is not None and children:
            raise ValueError("only leaves can carry a payload")
        self.children = tuple(sorted(children, key=lambda c: c.text.translate(_KEY)))
        self.payload = payload
        if children:
            self.text = "(" + " ".join(c.text for c in self.children) + ")"
            self.size = sum(c.size for c in self.children)
        elif payload is not None:
            self.text = "{" + emit_graph6(payload) + "}"
            self.size = 1
        else:
            self.text = "."
            self.size = 1

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def is_star(self) -> bool:
        return self.payload is not None

    def __eq__(self, other):
        return isinstance(other, Node) and self.text == other.text

    def __hash__(self):
        return hash(self.text)

    def __repr__(self):
        return f"Node({self.text!r})"

    def at(self, path: Path) -> "Node":
        node = self
        try:
            for i in path:
                node = node.children[i]
        except IndexError:
            raise VertexNotFound(f"no vertex at path {path}") from None
        return node

    def walk(self, path: Path = ()) -> Iterator[tuple[Path, "Node"]]:
        """Pre-order traversal yielding ``(path, node)``."""
        yield path, self
        for i, c in enumerate(self.children):
            yield from c.walk(path + (i,))

    def stars(self) -> list[Path]:
        return [p for p, n in self.walk() if n.is_star]


Hierarchy = Node
LEAF = Node()


def leaf() -> Node:
    return LEAF


@dataclass(frozen=True)
class Cotree:
    root: Node
    label: str = UNION

    def __post_init__(self):
        if self.label not in (UNION, JOIN):
            raise ValueError(f"root label must be U or J, got {self.label!r}")
        if self.root.stars():
            raise ValueError("a cotree has no star leaves; use QuasiCotree")

    @property
    def size(self) -> int:
        return self.root.size

    def label_at(self, path: Path) -> str:
        return self.label if len(path) % 2 == 0 else flip(self.label)

    def subtree(self, path: Path) -> "Cotree":
        return Cotree(self.root.at(path), self.label_at(path))

    def __str__(self):
        return canonical_form(self)


@dataclass(frozen=True)
class QuasiCotree:
    root: Node
    label: str = UNION

    def __post_init__(self):
        stars = self.root.stars()
        if len(stars) > 1:
            raise MultipleStarLeaves("a quasi-cotree has exactly one star leaf")
        if not stars:
            raise StarAbsentWhenRequired("a quasi-cotree needs a star leaf")

    @property
    def payload(self) -> Graph:
        return self.root.at(self.root.stars()[0]).payload

    def __str__(self):
        return _labeled_text(self.root, self.label)


# canonical text -----------------------------------------------------------

def _labeled_text(node: Node, label: str) -> str:
    if node.is_leaf:
        return node.text
    kids = sorted((_labeled_text(c, flip(label)) for c in node.children), key=lambda s: s.translate(_KEY))
    return label + "(" + " ".join(kids) + ")"


def canonical_form(t) -> str:
    """Canonical text: equal for two trees iff they are isomorphic (labels included for cotrees)."""
    if isinstance(t, (Cotree, QuasiCotree)):
        return _labeled_text(t.root, t.label)
    return t.text


# parsing ------------------------------------------------------------------

def _tokenize(text: str):
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "().UJ":
            yield ch
            i += 1
        elif ch == "{":
            j = text.find("}", i)
            if j < 0:
                raise TreeSyntaxError("unterminated star payload")
            yield ("star", text[i + 1:j])
            i = j + 1
        else:
            raise TreeSyntaxError(f"unexpected character {ch!r} at {i}")


def parse_tree(text: str, expect: Optional[str] = None):
    """Parse the tree grammar into a hierarchy, cotree or quasi-cotree.

    ``expect`` may be ``"hierarchy"``, ``"cotree"`` or ``"quasi"`` to demand
    a particular result type.
    """
    tokens = list(_tokenize(text))
    pos = 0
    labels: list[tuple[int, str]] = []

    def parse(depth):
        nonlocal pos
        if pos >= len(tokens):
            raise TreeSyntaxError("unexpected end of input")
        tok = tokens[pos]
        if tok in (UNION, JOIN):
            labels.append((depth, tok))
            pos += 1
            if pos >= len(tokens) or tokens[pos] != "(":
                raise TreeSyntaxError("a label must be followed by '('")
            tok = "("
        if tok == ".":
            pos += 1
            return LEAF
        if isinstance(tok, tuple):
            pos += 1
            return Node(payload=parse_graph6(tok[1]))
        if tok == "(":
            pos += 1
            kids = []
            while pos < len(tokens) and tokens[pos] != ")":
                kids.append(parse(depth + 1))
            if pos >= len(tokens):
                raise TreeSyntaxError("missing ')'")
            pos += 1
            if len(kids) < 2:
                raise UnaryInternalNode("internal vertices need at least two children")
            return Node(kids)
        raise TreeSyntaxError(f"unexpected token {tok!r}")

    root = parse(0)
    if pos != len(tokens):
        raise TreeSyntaxError("trailing input after tree")
    stars = root.stars()
    if len(stars) > 1:
        raise MultipleStarLeaves(f"{len(stars)} star leaves found")

    label = None
    if labels:
        d0, l0 = labels[0]
        label = l0 if d0 % 2 == 0 else flip(l0)
        for d, lab in labels:
            if (lab == label) != (d % 2 == 0):
                raise TreeSyntaxError("labels must alternate by depth")

    if expect == "quasi" and not stars:
        raise StarAbsentWhenRequired("expected a quasi-cotree with one star leaf")
    if stars:
        if label is None and not root.is_star:
            raise TreeSyntaxError("a quasi-cotree needs a root label")
        if expect in ("hierarchy", "cotree"):
            raise TreeSyntaxError(f"expected a {expect}, found a star leaf")
        return QuasiCotree(root, label or UNION)
    if expect == "cotree" or (label is not None and expect != "hierarchy"):
        return Cotree(root, label or UNION)
    return root


# realization --------------------------------------------------------------

def realize(t: Cotree) -> Graph:
    """Graph of a cotree: two leaves are adjacent iff their lowest common ancestor is a join.

    Vertices are numbered by leaf order in the canonical traversal.
    """
    n = t.size
    rows = [0] * n

    def visit(node: Node, label: str, start: int) -> int:
        if node.is_leaf:
            return 1 << start
        masks = []
        off = start
        for c in node.children:
            masks.append(visit(c, flip(label), off))
            off += c.size
        if label == JOIN:
            whole = 0
            for m in masks:
                whole |= m
            for m in masks:
                other = whole & ~m
                w = m
                while w:
                    low = w & -w
                    rows[low.bit_length() - 1] |= other
                    w ^= low
        out = 0
        for m in masks:
            out |= m
        return out

    visit(t.root, t.label, 0)
    return Graph._trusted(n, rows)


def realize_quasi(qt: QuasiCotree) -> Graph:
    """Recursive union/join evaluation with the star leaf contributing its payload."""

    def ev(node: Node, label: str) -> Graph:
        if node.is_star:
            return node.payload
        if node.is_leaf:
            return Graph._trusted(1, [0])
        op = join if label == JOIN else disjoint_union
        g = ev(node.children[0], flip(label))
        for c in node.children[1:]:
            g = op(g, ev(c, flip(label)))
        return g

    return ev(qt.root, qt.label)


def decompose(g: Graph) -> Cotree:
    """Cotree of a cograph by complement-connectivity recursion.

    Raises NotACograph when both the graph and its complement are connected.
    """

    def rec(h: Graph) -> tuple[Node, str]:
        if h.order == 1:
            return LEAF, UNION
        comps = h.components()
        if len(comps) > 1:
            return Node(rec(h.induced(c))[0] for c in comps), UNION
        hc = complement(h)
        ccomps = hc.components()
        if len(ccomps) > 1:
            return Node(rec(h.induced(c))[0] for c in ccomps), JOIN
        raise NotACograph(f"order-{h.order} piece and its complement are both connected (induced P4)")

    root, label = rec(g)
    return Cotree(root, label)


def complement_cotree(t: Cotree) -> Cotree:
    return Cotree(t.root, flip(t.label))


def hierarchy_of(t: Cotree) -> Node:
    return t.root


# search and substitution --------------------------------------------------

def find_subhierarchy(h: Node, pattern: Node) -> Optional[Path]:
    """First pre-order vertex whose full descendant subtree is isomorphic to ``pattern``."""
    if pattern.size < 2:
        raise PatternTooSmall("pattern must have at least two leaves")
    if pattern.size > h.size:
        return None
    for path, node in h.walk():
        if node.size == pattern.size and node.text == pattern.text:
            return path
    return None


def find_labeled_subtree(t: Cotree, pattern: Cotree) -> Optional[Path]:
    """Like :func:`find_subhierarchy` but the label induced at the vertex must match."""
    for path, node in t.root.walk():
        if node.size != pattern.size or node.text != pattern.root.text:
            continue
        if node.is_leaf or t.label_at(path) == pattern.label:
            return path
    return None


def _replace(node: Node, path: Path, new: Node) -> Node:
    if not path:
        return new
    kids = list(node.children)
    if path[0] >= len(kids):
        raise VertexNotFound(f"no vertex at path {path}")
    kids[path[0]] = _replace(kids[path[0]], path[1:], new)
    return Node(kids)


def substitute_star(t: Cotree, path: Path, payload: Graph) -> QuasiCotree:
    """Replace the subtree at ``path`` by a star leaf carrying ``payload``."""
    t.root.at(path)
    return QuasiCotree(_replace(t.root, tuple(path), Node(payload=payload)), t.label)
