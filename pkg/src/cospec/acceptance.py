"""End-to-end reproduction checks, one per acceptance criterion.

Each check returns ``(passed, detail)``; :func:`run` times them and prints
one ``PASS``/``FAIL`` line per check.  Used by ``cospec verify`` and by the
acceptance test module.
"""

from __future__ import annotations

import os
import random
import sys
import time
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Optional, TextIO

import mpmath as mp

from . import asymptotics, enumeration, mates, threshold
from .cotree import find_subhierarchy, realize
from .enumeration import count_avoiding, count_cographs, count_hierarchies, enumerate_hierarchies
from .graph import are_isomorphic, induced_p4_exists, parse_graph6, read_graph6_file
from .mates import BasePair, construct_mate, discover_base_pair, verify_union_join
from .sampling import random_cotree_containing, random_graph
from .spectral import is_generalized_cospectral

DATA_DIR = Path(__file__).resolve().parents[2] / "data"

HIERARCHY_COUNTS = (1, 1, 2, 5, 12, 33, 90, 261, 766, 2312, 7068, 21965, 68954, 218751, 699534)
AVOID2_COUNTS = (1, 0, 1, 2, 4, 9, 20, 47, 112, 274, 678, 1709, 4346, 11176, 28966)
COGRAPHS_15 = 1_399_068
ORDER15_PAIR = ("N]?GWWGAGP@FAMAM@F?", "Ns_??KF@oK?p@a@b_po")

# decimal strings as printed; "full" values must match after rounding to the
# printed length, "prefix" values are truncated with a trailing ellipsis
PRINTED = {
    ("rho", None): ("0.2808326669842004", "full"),
    ("C", None): ("0.2063814446007890", "full"),
    ("rho", 9): ("0.2808383687063348", "full"),
    ("C", 9): ("0.2063663931885738", "full"),
    ("rho", 15): ("0.2808326697806751", "full"),
    ("rho", 2): ("0.3462", "prefix"),
    ("C", 2): ("0.1972", "prefix"),
}


def default_corpus() -> Path:
    return Path(os.environ.get("COSPEC_CORPUS", DATA_DIR / "graphs9.g6.gz"))


def default_basepair() -> Path:
    return Path(os.environ.get("COSPEC_BASEPAIR", DATA_DIR / "basepair.txt"))


def matches_printed(value, printed: str, mode: str) -> bool:
    """Agreement of ``value`` with a printed decimal string."""
    decimals = len(printed.split(".")[1])
    with mp.workprec(256):
        scaled = mp.mpf(value) * mp.mpf(10) ** decimals
        digits = int(mp.nint(scaled)) if mode == "full" else int(mp.floor(scaled))
    return digits == int(printed.replace(".", ""))


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.number:2d}] {self.title}: {self.detail} ({self.seconds:.1f}s)"


class Context:
    """Shared, lazily computed inputs (corpus discovery, order-15 survey)."""

    def __init__(self, corpus: Optional[Path] = None, seed: int = 20240501):
        self.corpus = Path(corpus) if corpus else default_corpus()
        self.seed = seed

    @cached_property
    def discovery(self) -> mates.Discovery:
        return discover_base_pair(read_graph6_file(self.corpus), order=9)

    @cached_property
    def base(self) -> BasePair:
        if self.corpus.exists():
            return self.discovery.base
        return BasePair.load(default_basepair())

    @cached_property
    def survey15(self) -> mates.FamilySurvey:
        return mates.dgs_survey(15)


def _within(seconds: float, limit: float) -> str:
    return "" if seconds <= limit else f"; over the {limit:g}s limit"


def c01_tables(ctx):
    t = time.perf_counter()
    h = tuple(count_hierarchies(15))
    a = tuple(count_avoiding(15, 2))
    dt = time.perf_counter() - t
    ok = h == HIERARCHY_COUNTS and a == AVOID2_COUNTS and dt < 1
    return ok, f"H_15={h[-1]}, H2_15={a[-1]}{_within(dt, 1)}"


def c02_enumeration(ctx):
    t = time.perf_counter()
    patterns = [p for m in (2, 4) for p in enumerate_hierarchies(m)]
    bad = []
    for n in range(1, 13):
        trees = list(enumerate_hierarchies(n))
        if len(trees) != count_hierarchies(n)[n]:
            bad.append(f"|H({n})|")
        for p in patterns:
            avoid = sum(1 for h in trees if find_subhierarchy(h, p) is None)
            if avoid != count_avoiding(n, p.size)[n]:
                bad.append(f"avoid({n},{p.text})")
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    return ok, (f"n<=12, {len(patterns)} patterns" if not bad else "mismatch " + ", ".join(bad)) + _within(dt, 60)


def c03_cographs(ctx):
    got = count_cographs(15)
    return got == COGRAPHS_15, f"count_cographs(15)={got}"


def c04_constants(ctx):
    t = time.perf_counter()
    bad = []
    for (name, m), (printed, mode) in PRINTED.items():
        est = asymptotics.growth_constant(m, 256, 400)
        value = est.rho if name == "rho" else est.C
        if not matches_printed(value, printed, mode):
            bad.append(f"{name}_{m or 0}={mp.nstr(value, 18)} vs {printed}")
    dt = time.perf_counter() - t
    ok = not bad and dt < 30
    return ok, ("7 printed constants agree" if not bad else "; ".join(bad)) + _within(dt, 30)


def c05_thresholds(ctx):
    n9 = asymptotics.half_threshold(9)
    n15 = asymptotics.half_threshold(15)
    ok = n9 == 34141 and 6.9e7 <= n15 <= 7.0e7
    return ok, f"half_threshold(9)={n9}, half_threshold(15)={n15}"


def c06_order15_pair(ctx):
    t = time.perf_counter()
    g, h = (parse_graph6(s) for s in ORDER15_PAIR)
    flags = (not induced_p4_exists(g), not induced_p4_exists(h), not are_isomorphic(g, h),
             is_generalized_cospectral(g, h))
    dt = time.perf_counter() - t
    return all(flags) and dt < 1, f"P4-free/P4-free/non-iso/cospectral={flags}{_within(dt, 1)}"


def c07_family_survey(ctx):
    empty = [n for n in range(1, 15) if mates.dgs_survey(n).classes]
    s = ctx.survey15
    sizes = [len(c) for c in s.classes]
    orbits = mates.complement_orbits(s.classes)
    ok = not empty and sizes == [2, 2, 2, 2] and len(orbits) == 2 and s.total == COGRAPHS_15
    return ok, f"n=15: {len(sizes)} classes, {len(orbits)} orbits over {s.total} cographs; n<=14 with classes: {empty}"


def c08_base_pair(ctx):
    if not ctx.corpus.exists():
        return False, f"corpus {ctx.corpus} not found"
    t = time.perf_counter()
    b = ctx.discovery.base
    flags = (not induced_p4_exists(b.L), induced_p4_exists(b.R), is_generalized_cospectral(b.L, b.R),
             not are_isomorphic(b.L, b.R))
    dt = time.perf_counter() - t
    return all(flags) and dt < 300, f"one complement orbit; L P4-free/R has P4/cospectral/non-iso={flags}"


def c09_mate_construction(ctx, trials: int = 60):
    rng = random.Random(ctx.seed)
    base = ctx.base
    fails = 0
    for _ in range(trials):
        t = random_cotree_containing(base.tstar, rng.randint(base.tstar.size, 30), rng)
        g, mate = realize(t), construct_mate(t, base)
        if not is_generalized_cospectral(g, mate) or are_isomorphic(g, mate):
            fails += 1
    return fails == 0, f"{trials - fails}/{trials} mates cospectral and non-isomorphic"


def c10_union_join(ctx, trials: int = 100):
    rng = random.Random(ctx.seed + 1)
    classes = [c.members for c in ctx.discovery.report.classes] if ctx.corpus.exists() else []
    classes += [[realize(t) for t in c] for c in ctx.survey15.classes]
    fails = 0
    for _ in range(trials):
        g1, g2 = rng.sample(rng.choice(classes), 2)
        h = random_graph(rng.randint(1, 6), rng)
        if not verify_union_join(g1, g2, h):
            fails += 1
    return fails == 0, f"{trials - fails}/{trials} union and join pairs cospectral"


def c11_threshold(ctx):
    t = time.perf_counter()
    lazz = [n for n in range(1, 12) if not threshold.check_lazzarin(n)]
    fracs = {n: threshold.q_mate_fraction(n) for n in range(4, 11)}
    low = [n for n, f in fracs.items() if f < threshold.Fraction(1, 8)]
    gen_q = all(threshold.generalized_q_check(n) for n in range(4, 11))
    dt = time.perf_counter() - t
    ok = not lazz and not low and gen_q and dt < 120
    return ok, (f"adjacency collisions at {lazz or 'none'}; min Q fraction {min(fracs.values())}; "
                f"generalized Q={gen_q}{_within(dt, 120)}")


def fit_errors(m, lo: int = 300, hi: int = 400) -> dict[int, mp.mpf]:
    """Relative error of ``C rho^-n n^-3/2`` against the exact coefficients."""
    est = asymptotics.growth_constant(m)
    table = count_hierarchies(hi) if m is None else count_avoiding(hi, m)
    with mp.workprec(est.precision):
        return {n: abs(est.predict(n) / table[n] - 1) for n in range(lo, hi + 1)}


def c12_fit(ctx):
    e0 = fit_errors(None)[400]
    e9 = fit_errors(9)[400]
    ok = e0 < 0.01 and e9 < 0.01
    return ok, f"relative error at n=400: {mp.nstr(e0, 4)} (all), {mp.nstr(e9, 4)} (m=9)"


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "coefficient tables", c01_tables),
    (2, "enumeration oracle", c02_enumeration),
    (3, "cograph count", c03_cographs),
    (4, "radius and growth constants", c04_constants),
    (5, "half thresholds", c05_thresholds),
    (6, "order-15 pair", c06_order15_pair),
    (7, "order-15 family survey", c07_family_survey),
    (8, "base-pair discovery", c08_base_pair),
    (9, "mate construction", c09_mate_construction),
    (10, "union/join closure", c10_union_join),
    (11, "threshold contrasts", c11_threshold),
    (12, "asymptotic fit", c12_fit),
]


def run_one(number: int, ctx: Context) -> Outcome:
    _, title, check = CRITERIA[number - 1]
    t = time.perf_counter()
    try:
        passed, detail = check(ctx)
    except Exception as exc:  # a crash is a failed criterion, reported like any other
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return Outcome(number, title, bool(passed), detail, time.perf_counter() - t)


def run(numbers=None, ctx: Optional[Context] = None, stream: Optional[TextIO] = None) -> list[Outcome]:
    ctx = ctx or Context()
    stream = stream or sys.stdout
    out = []
    for number in numbers or range(1, len(CRITERIA) + 1):
        o = run_one(number, ctx)
        print(o.line(), file=stream, flush=True)
        out.append(o)
    return out
