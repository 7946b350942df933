"""Exact counts and exhaustive generation of hierarchies and cographs.

The counting sequences come from the multiset functional equation
``2H(x) + 1 - x + x^m = exp(sum_k H(x^k)/k)`` (drop ``x^m`` for the
unrestricted class).  Writing the right side as ``E(x)`` and the Euler
transform weights as ``b_n = sum_{d | n} d H_d`` gives
``n e_n = sum_{j=1..n} b_j e_{n-j}``; isolating the ``H_n`` contained in
``b_n`` leaves ``H_n = R_n / n - [n == m]`` with ``R_n`` built from lower
coefficients only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from .cotree import JOIN, LEAF, UNION, Cotree, Node
from .errors import PatternTooSmall

UNRESTRICTED = None  # sentinel for "no forbidden subhierarchy"


@dataclass(frozen=True)
class CoeffTable:
    """Coefficients ``H_1..H_N`` (or ``H^(m)_1..H^(m)_N``); index with ``table[n]``."""

    m: Optional[int]
    coeffs: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(f"coefficient index {n} outside 1..{self.N}")
        return self.coeffs[n - 1]

    def __iter__(self):
        return iter(self.coeffs)

    def to_csv(self) -> str:
        return "n,value\n" + "".join(f"{n},{c}\n" for n, c in enumerate(self.coeffs, 1))


@lru_cache(maxsize=32)
def _coefficients(N: int, m: Optional[int]) -> tuple[int, ...]:
    h = [0] * (N + 1)
    b = [0] * (N + 1)
    e = [1] + [0] * N
    for n in range(1, N + 1):
        if n == 1:
            h[1] = 1
        else:
            r = sum(d * h[d] for d in range(1, n // 2 + 1) if n % d == 0)
            r += sum(b[j] * e[n - j] for j in range(1, n))
            q, rem = divmod(r, n)
            assert rem == 0, f"non-integral coefficient at n={n}"
            h[n] = q - (1 if n == m else 0)
        b[n] = sum(d * h[d] for d in range(1, n // 2 + 1) if n % d == 0) + n * h[n]
        e[n] = sum(b[j] * e[n - j] for j in range(1, n + 1)) // n
    return tuple(h[1:])


def count_hierarchies(N: int) -> CoeffTable:
    if N < 1:
        raise ValueError("N must be >= 1")
    return CoeffTable(UNRESTRICTED, _coefficients(N, None))


def count_avoiding(N: int, m: int) -> CoeffTable:
    """Hierarchies of each size with no subhierarchy equal to a fixed size-``m`` pattern."""
    if m is None:
        return count_hierarchies(N)
    if m < 2:
        raise PatternTooSmall("pattern size must be >= 2")
    if N < 1:
        raise ValueError("N must be >= 1")
    return CoeffTable(m, _coefficients(N, m))


def count_cographs(n: int) -> int:
    """Unlabeled cographs of order ``n``: each hierarchy carries two root labels."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 1 if n == 1 else 2 * count_hierarchies(n)[n]


def containment_fraction(n: int, m: int) -> Fraction:
    """Share of size-``n`` hierarchies that contain a given size-``m`` subhierarchy."""
    if m < 2:
        raise PatternTooSmall("pattern size must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    top = max(n, m)
    return 1 - Fraction(count_avoiding(top, m)[n], count_hierarchies(top)[n])


# generation ---------------------------------------------------------------

class HierarchyTable:
    """Integer-id store of hierarchies in canonical rank order.

    Ids are assigned by size, then by generation order; a hierarchy is the
    non-increasing tuple of its children's ids.  Id 0 is the single leaf.
    """

    def __init__(self):
        self.kids: list[tuple[int, ...]] = [()]
        self.size: list[int] = [1]
        self.first: list[int] = [0, 0, 1]  # first[s] = first id of size s
        self._nodes: dict[int, Node] = {0: LEAF}

    @property
    def max_size(self) -> int:
        return len(self.first) - 2

    def ids(self, s: int) -> range:
        return range(self.first[s], self.first[s + 1])

    def multisets(self, s: int) -> Iterator[tuple[int, ...]]:
        """Child-id tuples of all size-``s`` hierarchies; sizes below ``s`` must be stored."""
        if s - 1 > self.max_size:
            raise ValueError(f"sizes up to {s - 1} must be generated first")
        first = self.first

        def rec(remaining, max_id):
            if remaining == 0:
                yield ()
                return
            top_size = min(remaining, self.size[max_id])
            for sz in range(top_size, 0, -1):
                hi = min(max_id, first[sz + 1] - 1)
                for i in range(hi, first[sz] - 1, -1):
                    for rest in rec(remaining - sz, i):
                        yield (i,) + rest

        # the first (largest-ranked) child has size at most s - 1
        top = first[s] - 1
        yield from rec(s, top)

    def extend_to(self, n: int) -> None:
        while self.max_size < n:
            s = self.max_size + 1
            for kids in self.multisets(s):
                self.kids.append(kids)
                self.size.append(s)
            self.first.append(len(self.kids))

    def node(self, i: int) -> Node:
        node = self._nodes.get(i)
        if node is None:
            node = Node(self.node(k) for k in self.kids[i])
            self._nodes[i] = node
        return node


_TABLE = HierarchyTable()


def hierarchy_table(n: int) -> HierarchyTable:
    """Shared table holding every hierarchy of size <= ``n``."""
    _TABLE.extend_to(n)
    return _TABLE


def enumerate_hierarchies(n: int) -> Iterator[Node]:
    """One hierarchy per isomorphism class of size ``n``, in canonical rank order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    table = hierarchy_table(n)
    for i in table.ids(n):
        yield table.node(i)


def enumerate_cographs(n: int) -> Iterator[Cotree]:
    """One cotree per unlabeled cograph of order ``n``."""
    for h in enumerate_hierarchies(n):
        if h.is_leaf:
            yield Cotree(h, UNION)
        else:
            yield Cotree(h, UNION)
            yield Cotree(h, JOIN)
