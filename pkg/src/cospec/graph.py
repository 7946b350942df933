"""Simple undirected graphs stored as packed adjacency bitsets.

Vertex ``v`` of a :class:`Graph` is an integer in ``range(order)`` and
``rows[v]`` is an int whose bit ``u`` is set iff ``u`` and ``v`` are adjacent.
The module also carries the graph6 codec (short form, order <= 62), the
union/join/complement algebra, induced-P4 detection and an exact canonical
labeling by partition refinement with backtracking.
"""

from __future__ import annotations

import gzip
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import MalformedEncoding, OrderOutOfRange

GRAPH6_MAX_ORDER = 62
CANON_MAX_ORDER = 20


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``rows[v]`` is the neighbourhood bitmask of ``v``."""

    order: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise OrderOutOfRange(f"graph order must be >= 1, got {self.order}")
        if len(self.rows) != self.order:
            raise ValueError("rows must have one entry per vertex")
        full = (1 << self.order) - 1
        for v, r in enumerate(self.rows):
            if r & ~full or (r >> v) & 1:
                raise ValueError(f"row {v} has a self-loop or out-of-range bit")
            w = r
            while w:
                low = w & -w
                u = low.bit_length() - 1
                if not (self.rows[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
                w ^= low

    @classmethod
    def _trusted(cls, order: int, rows: Sequence[int]) -> "Graph":
        # skips validation; callers guarantee symmetry and no loops
        g = object.__new__(cls)
        object.__setattr__(g, "order", order)
        object.__setattr__(g, "rows", tuple(rows))
        return g

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @classmethod
    def from_matrix(cls, a) -> "Graph":
        a = np.asarray(a)
        n = a.shape[0]
        rows = []
        for i in range(n):
            r = 0
            for j in np.flatnonzero(a[i]):
                r |= 1 << int(j)
            rows.append(r)
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in _bits(self.rows[u]) if u < v]

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        n = self.order
        r = np.array(self.rows, dtype=object)
        bits = [[(int(r[i]) >> j) & 1 for j in range(n)] for i in range(n)]
        return np.array(bits, dtype=dtype)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.order
        for v, r in enumerate(self.rows):
            nr = 0
            for u in _bits(r):
                nr |= 1 << perm[u]
            rows[perm[v]] = nr
        return Graph._trusted(self.order, rows)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            nr = 0
            for u in _bits(self.rows[v]):
                if u in index:
                    nr |= 1 << index[u]
            rows.append(nr)
        return Graph._trusted(len(vertices), rows)

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = 0
        comps = []
        for s in range(self.order):
            if (seen >> s) & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(_bits(comp))
        return comps

    def __repr__(self):
        return f"Graph(order={self.order}, graph6={emit_graph6(self)!r})" if self.order <= GRAPH6_MAX_ORDER \
            else f"Graph(order={self.order})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# named graphs -------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph._trusted(n, [0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, [full & ~(1 << v) for v in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# algebra ------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = (1 << g.order) - 1
    return Graph._trusted(g.order, [~r & full & ~(1 << v) for v, r in enumerate(g.rows)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    s = g.order
    return Graph._trusted(s + h.order, list(g.rows) + [r << s for r in h.rows])


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between ``g`` and ``h``."""
    s, t = g.order, h.order
    low = (1 << s) - 1
    high = ((1 << t) - 1) << s
    return Graph._trusted(s + t, [r | high for r in g.rows] + [(r << s) | low for r in h.rows])


def induced_p4_exists(g: Graph) -> bool:
    """True iff some four vertices induce a path a-b-c-d.

    Each induced P4 has a unique middle edge ``bc``; for it, ``a`` must see
    ``b`` only and ``d`` must see ``c`` only, with ``a`` and ``d`` non-adjacent.
    """
    rows = g.rows
    for b in range(g.order):
        for c in _bits(rows[b]):
            if c < b:
                continue
            ends_b = rows[b] & ~rows[c] & ~(1 << c)
            ends_c = rows[c] & ~rows[b] & ~(1 << b)
            if not ends_b or not ends_c:
                continue
            for a in _bits(ends_b):
                if ends_c & ~rows[a]:
                    return True
    return False


def induced_p4_subsets(g: Graph) -> Iterator[tuple[int, ...]]:
    """Brute-force scan over all 4-subsets, yielding those that induce P4."""
    for quad in combinations(range(g.order), 4):
        degs = sorted((g.rows[v] & sum(1 << u for u in quad)).bit_count() for v in quad)
        if degs == [1, 1, 2, 2]:
            yield quad


# graph6 -------------------------------------------------------------------

def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (short form; an optional ``>>graph6<<`` header is accepted)."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise MalformedEncoding("empty graph6 string")
    data = text.encode("ascii", errors="replace")
    for ch in data:
        if not 63 <= ch <= 126:
            raise MalformedEncoding(f"byte {ch!r} outside the graph6 range 63..126")
    n = data[0] - 63
    if n == 63:
        raise OrderOutOfRange("long-form graph6 (order > 62) is not supported")
    if n == 0:
        raise OrderOutOfRange("graph6 order 0 is not a graph")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) != 1 + nbytes:
        raise MalformedEncoding(f"order {n} needs {1 + nbytes} bytes, got {len(data)}")
    bits = 0
    for ch in data[1:]:
        bits = (bits << 6) | (ch - 63)
    pad = 6 * nbytes - nbits
    if bits & ((1 << pad) - 1):
        raise MalformedEncoding("nonzero padding bits")
    bits >>= pad
    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (bits >> k) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph._trusted(n, rows)


def emit_graph6(g: Graph) -> str:
    n = g.order
    if not 1 <= n <= GRAPH6_MAX_ORDER:
        raise OrderOutOfRange(f"graph6 short form supports orders 1..62, got {n}")
    out = [chr(n + 63)]
    acc = nacc = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | ((g.rows[i] >> j) & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(acc + 63))
                acc = nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return "".join(out)


def read_graph6_file(path: str | Path) -> Iterator[Graph]:
    """Yield graphs from a graph6 file (one per line; ``.gz`` files are decompressed)."""
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rt", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield parse_graph6(line)


def write_graph6_file(path: str | Path, graphs: Iterable[Graph]) -> int:
    path = Path(path)
    count = 0
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "wt", encoding="ascii", newline="\n") as fh:
        for g in graphs:
            fh.write(emit_graph6(g) + "\n")
            count += 1
    return count


def adjacency_batch(graphs: Sequence[Graph]) -> np.ndarray:
    """Stack adjacency matrices of equal-order graphs into a ``(B, n, n)`` int64 array."""
    n = graphs[0].order
    rows = np.array([g.rows for g in graphs], dtype=np.int64).reshape(len(graphs), n)
    shifts = np.arange(n, dtype=np.int64)
    return (rows[:, :, None] >> shifts[None, None, :]) & 1


# canonical labeling -------------------------------------------------------

def _refine(rows: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement, splitting cells in a relabeling-invariant order."""
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new_cells = []
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sig = {v: tuple((rows[v] & m).bit_count() for m in masks) for v in c}
            groups: dict[tuple, list[int]] = {}
            for v in c:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                new_cells.append(groups[key])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _certificate(rows: Sequence[int], order: Sequence[int]) -> bytes:
    n = len(order)
    bits = 0
    for i in range(n):
        r = rows[order[i]]
        for j in range(i + 1, n):
            bits = (bits << 1) | ((r >> order[j]) & 1)
    nbits = n * (n - 1) // 2
    return bytes([n]) + bits.to_bytes((nbits + 7) // 8 or 1, "big")


class _Search:
    def __init__(self, g: Graph):
        self.rows = g.rows
        self.n = g.order
        self.best: bytes | None = None
        self.best_order: list[int] | None = None
        self.autos: list[list[int]] = []

    def _orbit_reps(self, prefix: list[int], cell: list[int]) -> dict[int, int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.autos:
            if all(a[p] == p for p in prefix):
                for v in range(self.n):
                    ra, rb = find(v), find(a[v])
                    if ra != rb:
                        parent[ra] = rb
        return {v: find(v) for v in cell}

    def run(self, cells: list[list[int]], prefix: list[int]):
        cells = _refine(self.rows, cells)
        if len(cells) == self.n:
            order = [c[0] for c in cells]
            cert = _certificate(self.rows, order)
            if self.best is None or cert < self.best:
                self.best, self.best_order = cert, order
            elif cert == self.best:
                auto = [0] * self.n
                for b, v in zip(self.best_order, order):
                    auto[b] = v
                self.autos.append(auto)
            return
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        cell = cells[idx]
        tried: set[int] = set()
        for v in cell:
            reps = self._orbit_reps(prefix, cell)
            if reps[v] in tried:
                continue
            tried.add(reps[v])
            rest = [u for u in cell if u != v]
            self.run(cells[:idx] + [[v], rest] + cells[idx + 1:], prefix + [v])


def canonical_order(g: Graph) -> list[int]:
    """Vertex sequence whose induced labeling is canonical."""
    if g.order > CANON_MAX_ORDER:
        raise OrderOutOfRange(f"canonical labeling is limited to order {CANON_MAX_ORDER}")
    s = _Search(g)
    s.run([list(range(g.order))], [])
    return s.best_order


def canonical_label(g: Graph) -> bytes:
    """Isomorphism-class key: equal for two graphs iff they are isomorphic."""
    return _certificate(g.rows, canonical_order(g))


def canonical_graph(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.order
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_label(g) == canonical_label(h)
