"""Threshold graphs: creation sequences, recognition and the spectral comparisons."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator

from .errors import BudgetExceeded
from .graph import Graph, canonical_label
from .spectral import SpectrumKind, charpoly, gen_spectrum, spectral_matrix

ISOLATED = "i"
DOMINATING = "d"
DEFAULT_BUDGET = 12
FRACTION_SCHEMA = "cospec.threshold-fractions/1"


def realize_threshold(seq: Iterable[str]) -> Graph:
    """Start from one vertex; each symbol adds an isolated (``i``) or dominating (``d``) vertex."""
    seq = list(seq)
    rows = [0]
    for v, sym in enumerate(seq, start=1):
        if sym == DOMINATING:
            rows = [r | (1 << v) for r in rows]
            rows.append((1 << v) - 1)
        elif sym == ISOLATED:
            rows.append(0)
        else:
            raise ValueError(f"creation symbols are 'i' or 'd', got {sym!r}")
    return Graph._trusted(len(rows), rows)


def creation_sequence(g: Graph) -> list[str] | None:
    """Peel isolated or dominating vertices; return the creation sequence, or None if not threshold."""
    alive = (1 << g.order) - 1
    out = []
    count = g.order
    while count > 1:
        for v in range(g.order):
            if not (alive >> v) & 1:
                continue
            nbrs = g.rows[v] & alive
            if nbrs == 0:
                out.append(ISOLATED)
                break
            if nbrs == alive & ~(1 << v):
                out.append(DOMINATING)
                break
        else:
            return None
        alive &= ~(1 << v)
        count -= 1
    return out[::-1]


def is_threshold(g: Graph) -> bool:
    return creation_sequence(g) is not None


def _check_budget(n: int, budget: int):
    if n > budget:
        raise BudgetExceeded(f"order {n} exceeds the threshold budget {budget}")


def enumerate_threshold(n: int, budget: int = DEFAULT_BUDGET) -> Iterator[Graph]:
    """One graph per unlabeled threshold graph of order ``n``, from all creation sequences."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_budget(n, budget)
    seen = set()
    for seq in product((ISOLATED, DOMINATING), repeat=n - 1):
        g = realize_threshold(seq)
        key = canonical_label(g)
        if key not in seen:
            seen.add(key)
            yield g


def collisions(n: int, kind: SpectrumKind = SpectrumKind.ADJACENCY,
               budget: int = DEFAULT_BUDGET) -> list[list[Graph]]:
    """Groups of threshold graphs of order ``n`` sharing a characteristic polynomial of ``kind``."""
    groups: dict = {}
    for g in enumerate_threshold(n, budget):
        groups.setdefault(charpoly(spectral_matrix(g, kind)), []).append(g)
    return [grp for grp in groups.values() if len(grp) > 1]


def check_lazzarin(n: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff no two threshold graphs of order ``n`` share an adjacency characteristic polynomial."""
    return not collisions(n, SpectrumKind.ADJACENCY, budget)


def q_collisions(n: int, budget: int = DEFAULT_BUDGET) -> list[list[Graph]]:
    return collisions(n, SpectrumKind.SIGNLESS_LAPLACIAN, budget)


@dataclass(frozen=True)
class FractionRow:
    n: int
    total: int
    with_mate: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.with_mate, self.total)


def fraction_row(n: int, kind: SpectrumKind = SpectrumKind.SIGNLESS_LAPLACIAN,
                 budget: int = DEFAULT_BUDGET) -> FractionRow:
    total = sum(1 for _ in enumerate_threshold(n, budget))
    return FractionRow(n, total, sum(len(grp) for grp in collisions(n, kind, budget)))


def fraction_csv(rows: Iterable[FractionRow]) -> str:
    lines = [f"# schema: {FRACTION_SCHEMA}", "n,total,with_mate,fraction"]
    lines += [f"{r.n},{r.total},{r.with_mate},{r.fraction}" for r in rows]
    return "\n".join(lines) + "\n"


def q_mate_fraction(n: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Share of threshold graphs of order ``n`` with a Q-cospectral threshold mate."""
    if n < 4:
        raise ValueError("defined for n >= 4")
    return fraction_row(n, SpectrumKind.SIGNLESS_LAPLACIAN, budget).fraction


def generalized_q_check(n: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff every Q-cospectral threshold group is also generalized Q-cospectral."""
    for grp in q_collisions(n, budget):
        spectra = {gen_spectrum(g, SpectrumKind.SIGNLESS_LAPLACIAN) for g in grp}
        if len(spectra) != 1:
            return False
    return True
