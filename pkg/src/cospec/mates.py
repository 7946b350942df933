"""Collision search, base-pair discovery and cospectral-mate construction."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .cotree import (JOIN, UNION, Cotree, Node, canonical_form, decompose, find_labeled_subtree,
                     parse_tree, realize, realize_quasi, substitute_star)
from .enumeration import count_cographs, enumerate_cographs, hierarchy_table
from .errors import (AmbiguousBasePair, BudgetExceeded, ConsistencyFailure, CorpusIncomplete, OrderMismatch,
                     PatternAbsent, PreconditionViolated)
from .graph import (Graph, adjacency_batch, canonical_label, complement, disjoint_union, emit_graph6,
                    induced_p4_exists, join, parse_graph6)
from .spectral import (GenSpectrum, IntPolynomial, SpectrumKind, charpoly_batch, fingerprint, gen_spectrum,
                       is_generalized_cospectral)

REPORT_SCHEMA = "cospec.collisions/1"

# OEIS A000088: unlabeled graphs by order
GRAPH_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668, 10: 12005168}


@dataclass
class CollisionClass:
    spectrum: GenSpectrum
    members: list[Graph]
    cograph: list[bool]

    @property
    def key(self) -> bytes:
        return fingerprint(self.spectrum)

    def to_dict(self) -> dict:
        return {"fingerprint": self.key.decode(),
                "members": [emit_graph6(g) for g in self.members],
                "cograph": self.cograph}


@dataclass
class CollisionReport:
    kind: SpectrumKind
    classes: list[CollisionClass] = field(default_factory=list)
    corpus_size: int = 0

    def to_dict(self) -> dict:
        return {"schema": REPORT_SCHEMA, "kind": self.kind.value, "corpus_size": self.corpus_size,
                "classes": [c.to_dict() for c in self.classes]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("COSPEC_THREADS", "1")))
    except ValueError:
        return 1


def _spectral_batches(graphs: list[Graph], kind: SpectrumKind) -> tuple[np.ndarray, np.ndarray]:
    """Charpolys of the graphs and their complements, computed in parallel chunks."""
    n = graphs[0].order

    def work(chunk):
        a = adjacency_batch(chunk)
        ac = 1 - a - np.eye(n, dtype=a.dtype)[None]
        if kind is SpectrumKind.SIGNLESS_LAPLACIAN:
            idx = np.arange(n)
            a = a.copy()
            a[:, idx, idx] = a.sum(axis=2)
            ac[:, idx, idx] = ac.sum(axis=2)
        return charpoly_batch(a), charpoly_batch(ac)

    threads = _threads()
    step = max(1, -(-len(graphs) // (threads * 4))) if threads > 1 else len(graphs)
    chunks = [graphs[i:i + step] for i in range(0, len(graphs), step)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def _build_class(kind: SpectrumKind, members: list[Graph]) -> Optional[CollisionClass]:
    seen: dict[bytes, Graph] = {}
    for g in members:
        seen.setdefault(canonical_label(g), g)
    if len(seen) < 2:
        return None
    distinct = [seen[k] for k in sorted(seen)]
    spectrum = gen_spectrum(distinct[0], kind)
    return CollisionClass(spectrum, distinct, [not induced_p4_exists(g) for g in distinct])


def find_collision_classes(corpus: Iterable[Graph],
                           kind: SpectrumKind = SpectrumKind.ADJACENCY) -> CollisionReport:
    """Group a same-order corpus by exact generalized spectrum; keep groups with >= 2 isomorphism classes."""
    graphs = list(corpus)
    report = CollisionReport(kind, corpus_size=len(graphs))
    if not graphs:
        return report
    n = graphs[0].order
    if any(g.order != n for g in graphs):
        raise OrderMismatch("all corpus graphs must have the same order")
    p, pc = _spectral_batches(graphs, kind)
    groups: dict = {}
    if p.dtype == np.int64:
        rows = np.concatenate([p, pc], axis=1)
        _, inverse, counts = np.unique(rows, axis=0, return_inverse=True, return_counts=True)
        inverse = inverse.reshape(-1)
        for i in np.flatnonzero(counts[inverse] > 1):
            groups.setdefault(int(inverse[i]), []).append(graphs[i])
    else:
        buckets: dict = {}
        for i in range(len(graphs)):
            buckets.setdefault((tuple(p[i]), tuple(pc[i])), []).append(graphs[i])
        groups = {k: v for k, v in buckets.items() if len(v) > 1}
    classes = [c for c in (_build_class(kind, members) for members in groups.values()) if c]
    report.classes = sorted(classes, key=lambda c: c.key)
    return report


# base pair ----------------------------------------------------------------

@dataclass(frozen=True)
class BasePair:
    L: Graph
    R: Graph
    tstar: Cotree

    def dump(self) -> str:
        return f"{emit_graph6(self.L)}\n{emit_graph6(self.R)}\n{canonical_form(self.tstar)}\n"

    def save(self, path) -> None:
        Path(path).write_text(self.dump(), encoding="ascii")

    @classmethod
    def load(cls, path) -> "BasePair":
        lines = [ln.strip() for ln in Path(path).read_text(encoding="ascii").splitlines() if ln.strip()]
        if len(lines) != 3:
            raise ValueError(f"{path}: expected three lines (L, R, cotree)")
        return cls(parse_graph6(lines[0]), parse_graph6(lines[1]), parse_tree(lines[2], expect="cotree"))


@dataclass
class Discovery:
    base: BasePair
    report: CollisionReport
    base_class: CollisionClass
    cographs: list[Graph]


def discover_base_pair(all_graphs: Iterable[Graph], order: int = 9) -> Discovery:
    """Find the unique complement pair of non-DGS cographs in a complete corpus of one order."""
    graphs = list(all_graphs)
    expected = GRAPH_COUNTS.get(order)
    if expected is None or len(graphs) != expected:
        raise CorpusIncomplete(f"expected {expected} graphs of order {order}, got {len(graphs)}")
    if any(g.order != order for g in graphs):
        raise CorpusIncomplete(f"corpus contains graphs not of order {order}")
    report = find_collision_classes(graphs, SpectrumKind.ADJACENCY)
    cographs = []
    for cls in report.classes:
        cographs += [g for g, flag in zip(cls.members, cls.cograph) if flag]
    labels = {canonical_label(g): g for g in cographs}
    orbits = {min(canonical_label(g), canonical_label(complement(g))) for g in cographs}
    if len(orbits) != 1 or any(canonical_label(complement(g)) not in labels for g in cographs):
        raise AmbiguousBasePair(f"{len(orbits)} complement orbits of non-DGS cographs: "
                                f"{[emit_graph6(g) for g in cographs]}")
    lab = min(orbits)
    L = labels[lab]
    base_class = next(c for c in report.classes if any(canonical_label(g) == lab for g in c.members))
    others = sorted((canonical_label(g), g) for g, flag in zip(base_class.members, base_class.cograph)
                    if not flag)
    if not others:
        raise AmbiguousBasePair("the cograph's class holds no non-cograph mate")
    R = others[0][1]
    return Discovery(BasePair(L, R, decompose(L)), report, base_class, cographs)


def construct_mate(t: Cotree, base: BasePair) -> Graph:
    """Swap the subtree equal to T* for a star leaf carrying R and realize the result."""
    path = find_labeled_subtree(t, base.tstar)
    if path is None:
        raise PatternAbsent(f"cotree does not contain {canonical_form(base.tstar)}")
    return realize_quasi(substitute_star(t, path, base.R))


def verify_union_join(g1: Graph, g2: Graph, h: Graph) -> bool:
    if not is_generalized_cospectral(g1, g2):
        raise PreconditionViolated("g1 and g2 must be generalized cospectral")
    return (gen_spectrum(disjoint_union(g1, h)) == gen_spectrum(disjoint_union(g2, h))
            and gen_spectrum(join(g1, h)) == gen_spectrum(join(g2, h)))


# cograph family survey ----------------------------------------------------
# Polynomials are packed into one Python int, coefficient i at bit 96*i
# (signed digits), so products and sums are single big-int operations.
# Each hierarchy stores, for its Union-rooted cotree G:
#     (order, p_G(x), p_Gbar(x), p_G(-x-1), p_Gbar(-x-1)).
# The Join-rooted cotree is the complement: swap the pairs.

_SHIFT = 96
_X = 1 << _SHIFT
_NEG_X_1 = -_X - 1
_LEAF = (1, _X, _X, _NEG_X_1, _NEG_X_1)


def _unpack(v: int, degree: int) -> tuple[int, ...]:
    """Coefficients from leading to constant."""
    mask = _X - 1
    half = 1 << (_SHIFT - 1)
    out = []
    for _ in range(degree + 1):
        d = v & mask
        if d >= half:
            d -= _X
        out.append(d)
        v = (v - d) >> _SHIFT
    if v:
        raise OverflowError("packed polynomial has coefficients beyond its degree")
    return tuple(reversed(out))


def _union(x, y):
    a, px, pcx, ptx, pctx = x
    b, py, pcy, pty, pcty = y
    sa = -1 if a & 1 else 1
    sb = -1 if b & 1 else 1
    p = px * py
    pt = ptx * pty
    pc = sb * pcx * pty + sa * pcy * ptx - sa * sb * pt
    pct = sb * pctx * py + sa * pcty * px - sa * sb * p
    return a + b, p, pc, pt, pct


def _union_rooted(children) -> tuple:
    acc = None
    for c in children:
        n, p, pc, pt, pct = c
        jc = (n, pc, p, pct, pt)  # children of a Union node are Join-rooted
        acc = jc if acc is None else _union(acc, jc)
    return acc


@dataclass
class FamilySurvey:
    n: int
    total: int
    classes: list[list[Cotree]]

    @property
    def with_mate_in_family(self) -> int:
        return sum(len(c) for c in self.classes)


class _CographEngine:
    """Incremental survey: spectra of all sizes below the largest request are kept."""

    def __init__(self):
        self.data: list[tuple] = [_LEAF]
        self.stored = 1
        self.results: dict[int, FamilySurvey] = {1: FamilySurvey(1, 1, [])}

    def _spectra_for(self, kids) -> tuple:
        return _union_rooted(self.data[k] for k in kids)

    def _run(self, s: int, store: bool) -> FamilySurvey:
        table = hierarchy_table(s - 1)
        if store:
            table.extend_to(s)
            source = (table.kids[i] for i in table.ids(s))
        else:
            source = table.multisets(s)
        hashes_u, hashes_j = [], []
        for kids in source:
            d = self._spectra_for(kids)
            if store:
                self.data.append(d)
            hashes_u.append(hash((d[1], d[2])))
            hashes_j.append(hash((d[2], d[1])))
        if store:
            self.stored = s
        return FamilySurvey(s, 2 * len(hashes_u), self._exact_classes(s, store, hashes_u, hashes_j))

    def survey(self, n: int) -> FamilySurvey:
        while self.stored < n - 1:
            s = self.stored + 1
            self.results[s] = self._run(s, store=True)
        if n not in self.results:
            self.results[n] = self._run(n, store=False)
        return self.results[n]

    def _exact_classes(self, s, stored, hashes_u, hashes_j) -> list[list[Cotree]]:
        h = np.array(hashes_u + hashes_j, dtype=np.int64)
        order = np.argsort(h, kind="stable")
        hs = h[order]
        dup = np.zeros(len(h), dtype=bool)
        same = hs[1:] == hs[:-1]
        dup[1:] |= same
        dup[:-1] |= same
        cand = sorted(int(i) for i in order[dup])
        if not cand:
            return []
        count = len(hashes_u)
        want = {i % count for i in cand}
        table = hierarchy_table(s - 1)
        if stored:
            base = table.first[s]
            kids_of = {r: table.kids[base + r] for r in want}
        else:
            kids_of = {r: kids for r, kids in enumerate(table.multisets(s)) if r in want}
        buckets: dict = {}
        for i in cand:
            r = i % count
            d = self._spectra_for(kids_of[r])
            label = UNION if i < count else JOIN
            key = (d[1], d[2]) if label == UNION else (d[2], d[1])
            buckets.setdefault(key, []).append((r, label))
        classes = []
        for members in buckets.values():
            if len(members) > 1:
                cls = [Cotree(Node(table.node(k) for k in kids_of[r]), label) for r, label in members]
                classes.append(sorted(cls, key=canonical_form))
        return sorted(classes, key=lambda c: canonical_form(c[0]))


_ENGINE = _CographEngine()


def cograph_spectrum(t: Cotree) -> GenSpectrum:
    """Adjacency generalized spectrum of a cograph computed along its cotree."""

    def rec(node: Node) -> tuple:
        if node.is_leaf:
            return _LEAF
        return _union_rooted(rec(c) for c in node.children)

    n, p, pc, _, _ = rec(t.root)
    if t.label == JOIN and not t.root.is_leaf:
        p, pc = pc, p
    return GenSpectrum(SpectrumKind.ADJACENCY, IntPolynomial(_unpack(p, n)), IntPolynomial(_unpack(pc, n)))


def dgs_survey(n: int, kind: SpectrumKind = SpectrumKind.ADJACENCY, budget: int = 16) -> FamilySurvey:
    """Cographs of order ``n`` that have a generalized cospectral mate among cographs."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind is SpectrumKind.ADJACENCY:
        if n > budget:
            raise BudgetExceeded(f"order {n} exceeds the survey budget {budget}")
        survey = _ENGINE.survey(n)
        for cls in survey.classes:
            spectra = {gen_spectrum(realize(t)) for t in cls}
            if len(spectra) != 1:
                raise ConsistencyFailure("cotree spectra disagree with the charpoly route")
        return survey
    q_budget = min(budget, 12)
    if n > q_budget:
        raise BudgetExceeded(f"Q-spectrum cograph survey is limited to order {q_budget}")
    trees = list(enumerate_cographs(n))
    graphs = [realize(t) for t in trees]
    report = find_collision_classes(graphs, kind)
    by_label = {canonical_label(g): t for g, t in zip(graphs, trees)}
    classes = [[by_label[canonical_label(g)] for g in c.members] for c in report.classes]
    return FamilySurvey(n, count_cographs(n), classes)


def complement_orbits(classes: list[list[Cotree]]) -> list[list[list[Cotree]]]:
    """Group collision classes into orbits under complementation."""
    seen: dict[frozenset, int] = {}
    orbits: list[list[list[Cotree]]] = []
    for cls in classes:
        key = frozenset(canonical_form(t) for t in cls)
        comp = frozenset(canonical_form(Cotree(t.root, JOIN if t.label == UNION else UNION)) for t in cls)
        if comp in seen:
            orbits[seen[comp]].append(cls)
            seen[key] = seen[comp]
        else:
            seen[key] = len(orbits)
            orbits.append([cls])
    return orbits
