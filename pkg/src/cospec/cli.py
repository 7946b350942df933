"""Command-line entry point: ``cospec <count|asym|discover|mate|survey|verify>``.

Reports go to stdout (JSON by default, CSV for tables), progress to stderr.
Exit codes: 0 success, 1 internal error, 2 computation/domain error,
3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import mpmath as mp

from . import acceptance, asymptotics, mates, threshold
from .cotree import canonical_form, parse_tree, realize
from .enumeration import UNRESTRICTED, count_avoiding, count_cographs, count_hierarchies
from .errors import ComputationError, CorpusIncomplete, InputError
from .graph import are_isomorphic, emit_graph6, induced_p4_exists, read_graph6_file
from .spectral import SpectrumKind, is_generalized_cospectral

EXIT_OK, EXIT_INTERNAL, EXIT_COMPUTATION, EXIT_INPUT = 0, 1, 2, 3


def _schema(name: str) -> str:
    return f"cospec.{name}/1"


def _emit(payload, fmt: str = "json") -> None:
    if fmt == "json":
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(payload)


def _progress(msg: str) -> None:
    print(f"[cospec] {msg}", file=sys.stderr, flush=True)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


# subcommands --------------------------------------------------------------

def cmd_count(args) -> int:
    n = args.n
    if args.cographs:
        rows = [(k, count_cographs(k)) for k in range(1, n + 1)]
        column = "cographs"
    else:
        table = count_hierarchies(n) if args.avoid is None else count_avoiding(n, args.avoid)
        rows = list(enumerate(table, 1))
        column = "hierarchies" if args.avoid is None else f"avoiding_{args.avoid}"
    if args.format == "csv":
        body = f"# schema: {_schema('count')}\nn,{column}\n" + "".join(f"{k},{v}\n" for k, v in rows)
        _emit(body, "csv")
    else:
        _emit({"schema": _schema("count"), "column": column, "avoid": args.avoid,
               "values": [v for _, v in rows]})
    return EXIT_OK


def cmd_asym(args) -> int:
    m = args.m
    _progress(f"radius and growth constant for m={m} (N={args.N}, {args.precision} bits)")
    est = asymptotics.growth_constant(m, args.precision, args.N)
    out = {"schema": _schema("asymptotics"), **est.to_dict(args.digits)}
    if m is not UNRESTRICTED:
        base = asymptotics.mate_fraction_asymptote(m, args.precision, args.N)
        s = lambda v: mp.nstr(v, args.digits, strip_zeros=False)
        out["ratio_base"] = s(base.ratio_base)
        out["coeff"] = s(base.coeff)
        out["half_threshold"] = asymptotics.half_threshold(m, precision=args.precision, N=args.N)
    _emit(out)
    return EXIT_OK


def cmd_discover(args) -> int:
    cache = Path(args.cache)
    if cache.exists() and not args.force:
        base = mates.BasePair.load(cache)
        _progress(f"replaying cached base pair from {cache}")
        _emit({"schema": _schema("basepair"), "cached": True, "L": emit_graph6(base.L),
               "R": emit_graph6(base.R), "tstar": canonical_form(base.tstar)})
        return EXIT_OK
    corpus = Path(args.corpus)
    if not corpus.exists():
        raise CorpusIncomplete(f"corpus file {corpus} does not exist")
    _progress(f"reading {corpus}")
    graphs = list(read_graph6_file(corpus))
    _progress(f"searching {len(graphs)} graphs for generalized cospectral classes")
    found = mates.discover_base_pair(graphs, order=args.order)
    cache.parent.mkdir(parents=True, exist_ok=True)
    found.base.save(cache)
    if args.report:
        Path(args.report).write_text(found.report.to_json() + "\n", encoding="ascii")
    _emit({"schema": _schema("basepair"), "cached": False, "L": emit_graph6(found.base.L),
           "R": emit_graph6(found.base.R), "tstar": canonical_form(found.base.tstar),
           "base_class": found.base_class.to_dict(),
           "non_dgs_cographs": [emit_graph6(g) for g in found.cographs],
           "collision_classes": len(found.report.classes)})
    return EXIT_OK


def cmd_mate(args) -> int:
    base = mates.BasePair.load(args.cache)
    t = parse_tree(args.cotree, expect="cotree")
    mate = mates.construct_mate(t, base)
    g = realize(t)
    _emit({"schema": _schema("mate"), "cotree": canonical_form(t), "graph": emit_graph6(g),
           "mate": emit_graph6(mate),
           "verification": {"generalized_cospectral": is_generalized_cospectral(g, mate),
                            "isomorphic": are_isomorphic(g, mate),
                            "mate_has_induced_p4": induced_p4_exists(mate)}})
    return EXIT_OK


def _survey_cographs(args, kind):
    t0 = time.perf_counter()
    _progress(f"surveying all cographs of order {args.n}")
    s = mates.dgs_survey(args.n, kind, budget=args.budget)
    _progress(f"done in {time.perf_counter() - t0:.1f}s")
    orbits = mates.complement_orbits(s.classes)
    return {"schema": _schema("survey"), "family": "cographs", "kind": kind.value, "n": args.n,
            "total": s.total, "with_mate_in_family": s.with_mate_in_family,
            "classes": [[canonical_form(t) for t in c] for c in s.classes],
            "members_graph6": [[emit_graph6(realize(t)) for t in c] for c in s.classes],
            "essential_pairs": len(orbits)}


def _survey_threshold(args, kind):
    budget = args.budget or threshold.DEFAULT_BUDGET
    row = threshold.fraction_row(args.n, kind, budget)
    if args.format == "csv":
        return threshold.fraction_csv([row])
    groups = threshold.collisions(args.n, kind, budget)
    return {"schema": _schema("survey"), "family": "threshold", "kind": kind.value, "n": args.n,
            "total": row.total, "with_mate": row.with_mate, "fraction": str(row.fraction),
            "classes": [[emit_graph6(g) for g in grp] for grp in groups]}


def cmd_survey(args) -> int:
    kind = SpectrumKind.parse(args.kind)
    if args.family == "cographs":
        args.budget = args.budget or 16
        out = _survey_cographs(args, kind)
    elif args.family == "threshold":
        out = _survey_threshold(args, kind)
    else:
        if not args.corpus:
            raise InputError("--corpus is required for the corpus family")
        out = mates.find_collision_classes(read_graph6_file(args.corpus), kind).to_dict()
    _emit(out, "csv" if isinstance(out, str) else "json")
    return EXIT_OK


def cmd_verify(args) -> int:
    numbers = [int(x) for x in args.criteria.split(",")] if args.criteria else None
    if numbers and any(not 1 <= k <= len(acceptance.CRITERIA) for k in numbers):
        raise InputError(f"criteria are numbered 1..{len(acceptance.CRITERIA)}")
    ctx = acceptance.Context(corpus=args.corpus)
    outcomes = acceptance.run(numbers, ctx)
    passed = sum(o.passed for o in outcomes)
    print(f"{passed}/{len(outcomes)} criteria passed", flush=True)
    return EXIT_OK if passed == len(outcomes) else EXIT_COMPUTATION


# wiring -------------------------------------------------------------------

def _optional_m(text: str):
    return UNRESTRICTED if text in ("none", "0") else _positive(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cospec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="hierarchy, pattern-avoiding and cograph counts")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--avoid", type=_positive, help="size of the forbidden subhierarchy")
    c.add_argument("--cographs", action="store_true")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.set_defaults(func=cmd_count)

    a = sub.add_parser("asym", help="radius, growth constant and half threshold")
    a.add_argument("--m", type=_optional_m, default=UNRESTRICTED)
    a.add_argument("--N", type=_positive, default=asymptotics.DEFAULT_N)
    a.add_argument("--precision", type=_positive, default=asymptotics.DEFAULT_PRECISION)
    a.add_argument("--digits", type=_positive, default=20)
    a.set_defaults(func=cmd_asym)

    d = sub.add_parser("discover", help="find the base pair in a complete graph6 corpus")
    d.add_argument("--corpus", default=str(acceptance.default_corpus()))
    d.add_argument("--cache", default=str(acceptance.default_basepair()))
    d.add_argument("--report", help="also write the full collision report here")
    d.add_argument("--order", type=_positive, default=9)
    d.add_argument("--force", action="store_true", help="ignore an existing cache")
    d.set_defaults(func=cmd_discover)

    mt = sub.add_parser("mate", help="construct the cospectral mate of a cotree")
    mt.add_argument("cotree", help="cotree text, e.g. 'U(J(. . .) J(. U(. .)))'")
    mt.add_argument("--cache", default=str(acceptance.default_basepair()))
    mt.set_defaults(func=cmd_mate)

    s = sub.add_parser("survey", help="collision survey over a graph family")
    s.add_argument("--family", choices=("cographs", "threshold", "corpus"), default="cographs")
    s.add_argument("--n", type=_positive)
    s.add_argument("--kind", default="adjacency", help="adjacency or q")
    s.add_argument("--corpus")
    s.add_argument("--budget", type=_positive)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_survey)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--criteria", help="comma-separated subset, e.g. 1,4,6")
    v.add_argument("--corpus")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "family", None) in ("cographs", "threshold") and args.n is None:
        parser.error("--n is required for this family")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"cospec: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ComputationError as exc:
        print(f"cospec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except (OSError, ValueError) as exc:
        print(f"cospec: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # last-resort boundary for the exit-code contract
        print(f"cospec: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
