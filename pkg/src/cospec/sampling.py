"""Random hierarchies, cotrees and graphs for property checks."""

from __future__ import annotations

import random
from typing import Optional

from .cotree import JOIN, LEAF, UNION, Cotree, Node, find_labeled_subtree
from .graph import Graph


def random_hierarchy(n: int, rng: random.Random, max_children: int = 4) -> Node:
    """A hierarchy of size ``n`` from random splits (not uniform over shapes)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return LEAF
    k = rng.randint(2, min(n, max_children))
    cuts = sorted(rng.sample(range(1, n), k - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    return Node(random_hierarchy(s, rng, max_children) for s in sizes)


def random_cotree(n: int, rng: random.Random) -> Cotree:
    return Cotree(random_hierarchy(n, rng), rng.choice((UNION, JOIN)))


def _graft(node: Node, target: int, pattern: Node) -> tuple[Node, int]:
    """Replace the ``target``-th leaf (pre-order) by ``pattern``; returns the new node and leaves left."""
    if node.is_leaf:
        return (pattern, -1) if target == 0 else (node, target - 1)
    kids = []
    for c in node.children:
        if target >= 0:
            c, target = _graft(c, target, pattern)
        kids.append(c)
    return Node(kids), target


def random_cotree_containing(pattern: Cotree, size: int, rng: random.Random) -> Cotree:
    """A random cotree of the given size with ``pattern`` as a labeled subtree."""
    extra = size - pattern.size
    if extra < 0:
        raise ValueError("size is smaller than the pattern")
    if extra == 0:
        return pattern
    host = random_hierarchy(extra + 1, rng)
    root, _ = _graft(host, rng.randrange(host.size), pattern.root)
    for label in (UNION, JOIN):
        t = Cotree(root, label)
        if find_labeled_subtree(t, pattern) is not None:
            return t
    raise AssertionError("grafted pattern not found under either root label")


def random_graph(n: int, rng: random.Random, p: Optional[float] = None) -> Graph:
    p = rng.random() if p is None else p
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)

