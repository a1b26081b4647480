"""Command-line interface.

Exit codes: 0 when all checks pass, 1 when violations are found, 2 for
configuration or input errors.  A JSON config file given with --config
overrides any flag of the same name.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .cache import ENV_CACHE_DIR, LatticeCache, default_cache_dir
from .catalog import GroupRecord, default_corpus, load_corpus_manifest, named_group, parse_group_file
from .formations import ClassContext, ClassId, parse_class_id
from .group import Group, GroupError, is_prime_power
from .lattice import DEFAULT_BOUND, LatticeService
from .perm import PermParseError
from .pipelines import (
    CARET_INTERSECTION, CARET_UNION, EvalOptions, eval_pipeline, parse_pipeline,
    render_pipeline,
)
from .structure import composition_factors, group_primes
from .suites import SuiteConfig, VerificationReport, build_corpus_groups, run_suite, SUITES
from .tables import reproduce_table

log = logging.getLogger("formax")

CORPUS_BOUND = 65536  # covers every default-corpus group


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    try:
        _apply_config_file(args)
        return _dispatch(args)
    except (GroupError, PermParseError, KeyError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="formax",
        description="Subgroup-strata engine and verification harness for "
                    "generalized solvable formation classes.")
    parser.add_argument("--config", type=Path, default=None,
                        help="JSON config file; its entries override flags")
    parser.add_argument("--cache-dir", type=Path, default=None,
                        help=f"cache directory (or ${ENV_CACHE_DIR})")
    parser.add_argument("--no-cache", action="store_true", help="disable the cache")
    parser.add_argument("--bound", type=int, default=CORPUS_BOUND,
                        help="lattice enumeration bound on the ambient order")
    parser.add_argument("--out", type=Path, default=None,
                        help="directory for JSON/TSV/text reports and figures")
    parser.add_argument("--no-figures", action="store_true",
                        help="skip figure rendering when --out is given")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="order, base, chief factors of one group")
    p.add_argument("group")

    p = sub.add_parser("max", help="maximal subgroup classes")
    p.add_argument("group")

    p = sub.add_parser("max2", help="second maximal subgroup classes")
    p.add_argument("group")
    p.add_argument("--strict", action="store_true",
                   help="only classes maximal in every maximal overgroup")

    p = sub.add_parser("classify", help="class membership with per-maximal evidence")
    p.add_argument("group")
    p.add_argument("--class", dest="class_name", required=True,
                   help="Solvable, Jpr, J, Fprime, Fdoubleprime, F1, F2, or Hat(...)")
    p.add_argument("--p", type=int, default=None)

    p = sub.add_parser("functor", help="evaluate a pipeline expression")
    p.add_argument("action", choices=["eval"])
    p.add_argument("expr")
    p.add_argument("group")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--caret", choices=[CARET_UNION, CARET_INTERSECTION],
                   default=CARET_INTERSECTION)

    p = sub.add_parser("tables", help="reproduce the bundled reference tables")
    p.add_argument("ids", nargs="*", type=int, default=[])

    p = sub.add_parser("verify", help="run a verification suite over the corpus")
    p.add_argument("--suite", required=True,
                   help="one of: " + ", ".join(sorted(SUITES)) + ", or 'all'")
    p.add_argument("--corpus", type=Path, default=None,
                   help="corpus manifest file (default: built-in corpus)")
    p.add_argument("--semantics", choices=["intersection", "union", "both"],
                   default="intersection")
    p.add_argument("--e1", choices=["fixed-p", "any-prime"], default="fixed-p")

    p = sub.add_parser("scan-allowlist", help="scan the corpus for a class allowlist")
    p.add_argument("--class", dest="class_name", required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--corpus", type=Path, default=None)

    p = sub.add_parser("cache", help="cache maintenance")
    p.add_argument("action", choices=["clear", "stats"])
    return parser


def _apply_config_file(args: argparse.Namespace) -> None:
    if args.config is None:
        return
    data = json.loads(Path(args.config).read_text())
    mapping = {
        "cache_dir": ("cache_dir", Path),
        "no_cache": ("no_cache", bool),
        "bound": ("bound", int),
        "out": ("out", Path),
        "semantics": ("semantics", str),
        "e1": ("e1", str),
        "corpus": ("corpus", Path),
        "suite": ("suite", str),
    }
    for key, value in data.items():
        if key not in mapping:
            raise GroupError(f"unknown config key {key!r}")
        attr, conv = mapping[key]
        if hasattr(args, attr):
            setattr(args, attr, conv(value))


def _make_service(args: argparse.Namespace) -> LatticeService:
    cache = None
    if not args.no_cache:
        cache = LatticeCache(args.cache_dir or default_cache_dir())
    return LatticeService(bound=args.bound, cache=cache)


def _load_group(text: str) -> Group:
    path = Path(text)
    if path.exists() and path.is_file():
        return parse_group_file(path.read_text(), source=str(path)).build()
    return named_group(text)


def _load_corpus(args: argparse.Namespace) -> list[Group]:
    if getattr(args, "corpus", None):
        records = load_corpus_manifest(Path(args.corpus).read_text(),
                                       base_dir=Path(args.corpus).parent)
    else:
        records = default_corpus()
    return [rec.build() for rec in records]


def _dispatch(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "cache":
        cache = LatticeCache(args.cache_dir or default_cache_dir())
        if args.action == "clear":
            print(f"removed {cache.clear()} cache entries")
        else:
            for k, v in cache.stats().items():
                print(f"{k}: {v}")
        return 0

    service = _make_service(args)

    if cmd == "info":
        g = _load_group(args.group)
        print(f"name: {g.name or '(anonymous)'}")
        print(f"degree: {g.degree}")
        print(f"order: {g.order}")
        print(f"base: {[b + 1 for b in g.base()]}")
        print(f"basic orbit lengths: {g.basic_orbit_lengths()}")
        print(f"generators: {', '.join(p.cycle_text() for p in g.generators)}")
        factors = composition_factors(g)
        print(f"composition factors: {', '.join(str(t) for t in factors)}")
        print(f"primes: {group_primes(g)}")
        return 0

    if cmd in ("max", "max2"):
        g = _load_group(args.group)
        profile = service.profile(g)
        if cmd == "max":
            print(f"{g.name}: {profile.max_stratum.size} maximal subgroups "
                  f"in {len(profile.max_info)} classes")
            for mi in sorted(profile.max_info, key=lambda m: (-m.order, m.index)):
                pp, wit = is_prime_power(mi.index)
                print(f"  order {mi.order:7d} index {mi.index:6d} count {mi.class_size:5d} "
                      f"prime-power-index {'T' if pp else 'F'}"
                      f"{f'({wit})' if wit else ''} solvable {'T' if mi.solvable else 'F'}")
        else:
            classes = list(enumerate(profile.max2_info))
            if args.strict:
                classes = [(k, mi) for k, mi in classes if mi.strict]
            total = sum(mi.class_size for _, mi in classes)
            kind = "strictly second maximal" if args.strict else "second maximal"
            print(f"{g.name}: {total} {kind} subgroups in {len(classes)} classes")
            for k, mi in classes:
                h0 = profile.max2_stratum.class_members[k][0]
                print(f"  order {mi.order:7d} count {mi.class_size:5d} "
                      f"core {mi.core_order:5d} m(G,H) {len(profile.max2_overs[h0]):3d} "
                      f"strict {'T' if mi.strict else 'F'}")
        return 0

    if cmd == "classify":
        g = _load_group(args.group)
        cid = parse_class_id(args.class_name, args.p)
        corpus = build_corpus_groups() if "hat" in args.class_name.lower() else []
        ctx = ClassContext(service, corpus)
        res = ctx.membership(g, cid)
        value = {True: "member", False: "non-member", None: "undecidable"}[res.value]
        print(f"{g.name} in {cid.text()}: {value}")
        if res.reason:
            print(f"reason: {res.reason}")
        for row in res.evidence:
            print(f"  {row}")
        return 0

    if cmd == "functor":
        g = _load_group(args.group)
        ctx = ClassContext(service, [])
        ast = parse_pipeline(args.expr)
        profile = service.profile(g)
        result = eval_pipeline(ast, profile, args.p,
                               EvalOptions(caret=args.caret))
        print(f"pipeline: {render_pipeline(ast)}")
        print(f"group: {g.name}, p = {args.p}, caret = {args.caret}")
        print(f"members: {len(result.members)} at level {result.level}")
        for cid in result.class_ids():
            info = (profile.max_info[cid] if result.level == "max"
                    else profile.max2_info[cid])
            print(f"  class order {info.order} count {info.class_size}")
        return 0

    if cmd == "tables":
        ids = args.ids or [1, 2, 3, 4]
        ctx = ClassContext(service, [])
        from .report import table_report_to_text, write_table_files

        reports = []
        t0 = time.perf_counter()
        for k in ids:
            rep = reproduce_table(k, ctx)
            reports.append(rep)
            print(table_report_to_text(rep), end="")
        print(f"total wall time: {time.perf_counter() - t0:.1f}s", file=sys.stderr)
        if args.out:
            paths = write_table_files(reports, args.out, figures=not args.no_figures)
            print(f"wrote {len(paths)} files under {args.out}", file=sys.stderr)
        return 0 if all(r.ok for r in reports) else 1

    if cmd == "verify":
        groups = _load_corpus(args)
        ctx = ClassContext(service, groups)
        caret = CARET_UNION if args.semantics == "union" else CARET_INTERSECTION
        cfg = SuiteConfig(caret=caret, compare_union=args.semantics == "both",
                          e1_mode=args.e1)
        suite_ids = sorted(SUITES) if args.suite == "all" else [args.suite]
        from .report import report_to_text, write_report_files

        worst = 0
        for sid in suite_ids:
            rep = run_suite(sid, groups, ctx, cfg)
            print(report_to_text(rep), end="")
            print(f"[{sid}] wall time: {rep.wall_time:.1f}s", file=sys.stderr)
            if args.out:
                write_report_files(rep, args.out, figures=not args.no_figures)
            worst = max(worst, rep.exit_code)
        return worst

    if cmd == "scan-allowlist":
        groups = _load_corpus(args)
        ctx = ClassContext(service, groups)
        cid = parse_class_id(args.class_name, args.p)
        allow = ctx.allowlist_scan(cid)
        print(f"# allowlist for {cid.text()}")
        print(f"# provenance: {allow.provenance}")
        for t in allow.sorted_types():
            print(f"{t.order} {t.label}")
        return 0

    raise GroupError(f"unhandled command {cmd!r}")


if __name__ == "__main__":
    sys.exit(main())
