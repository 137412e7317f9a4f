"""Command surface: validate, nerve, axioms, enlarge, suite.

Exit codes: 0 all pass, 1 at least one fail, 2 no fail but at least one
inconclusive, 3 input error.  Reports are JSON with stable key order; a
``--report out.json`` also writes ``out.csv`` and renders ``out.png``.
"""

import argparse
import csv
import json
import os
import sys

from .derivator import DEFAULT_BUDGET, TargetCategory
from .errors import CategoryLawError, ExactModeUnavailable, MissingColimit, ParseError, WorkbenchError
from .files import (
    canonical_identity_names,
    export_dot,
    load_category,
    write_category_file,
)
from .nerve import EXACT, MODES, build_N, is_reduced
from .suites import acceptance_battery, axiom_suite, enlarge_suite, exit_code, summarize

EXIT_INPUT_ERROR = 3


def _parse_trunc(value, mode):
    if value is None:
        return EXACT if is_reduced(mode) else 3
    if value == "exact":
        return EXACT
    return int(value)


def _budget(args):
    env = os.environ.get("WORKBENCH_BUDGET")
    if args.budget is not None:
        return args.budget
    if env:
        return int(env)
    return DEFAULT_BUDGET


def _digest_witnesses(record):
    """Large witness payloads on non-fail records become a stable digest;
    fail records always keep the full re-checkable witness."""
    import hashlib

    if record["verdict"] == "fail":
        return record
    blob = json.dumps(record["witnesses"], sort_keys=True)
    if len(blob) > 2000:
        record = dict(record)
        record["witnesses"] = {
            "digest": hashlib.sha256(blob.encode()).hexdigest()[:16],
            "keys": sorted(record["witnesses"]),
        }
    return record


def _emit_report(reports, path, title):
    records = [_digest_witnesses(r.as_record()) for r in reports]
    records.sort(key=lambda r: (r["check"], r["instance"]))
    payload = {"records": records, "summary": summarize_records(records)}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    base = path[:-5] if path.endswith(".json") else path
    with open(base + ".csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["check", "instance", "verdict", "truncation", "notes", "seconds"])
        for r in records:
            writer.writerow(
                [r["check"], r["instance"], r["verdict"], r["truncation"], r["notes"], r["seconds"]]
            )
    from .figures import render_report_figure

    render_report_figure(records, base + ".png", title=title)


def summarize_records(records):
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    for r in records:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    counts["total"] = len(records)
    return counts


def cmd_validate(args):
    try:
        data = load_category(args.path)
    except CategoryLawError as err:
        for v in err.violations:
            print(f"FAIL {v}")
        return 1
    except (ParseError, OSError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    cat = data.cat
    print(f"ok: category {cat.name}")
    print(f"  objects: {len(cat.objects)}")
    print(f"  morphisms: {len(cat.morphisms)}")
    print("  composition total on composable pairs: pass")
    print("  associativity on all composable triples: pass")
    print("  identity laws: pass")
    for block in data.functor_blocks:
        try:
            data.resolve_functor(block)
            print(f"  functor {block.name}: pass")
        except WorkbenchError as err:
            print(f"FAIL functor {block.name}: {err}")
            return 1
    return 0


def cmd_nerve(args):
    try:
        data = load_category(args.path)
    except (ParseError, CategoryLawError, OSError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    trunc = _parse_trunc(args.trunc, args.mode)
    try:
        pkg = build_N(data.cat, args.mode, trunc)
    except ExactModeUnavailable as err:
        print(f"FAIL {err}")
        return 1
    except ValueError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    levels = {}
    for o in pkg.total.objects:
        levels[pkg.dim(o)] = levels.get(pkg.dim(o), 0) + 1
    print(f"nerve of {data.cat.name} in {args.mode} @ {pkg.truncation}")
    for lvl in sorted(levels):
        print(f"  level {lvl}: {levels[lvl]} simplices")
    print(f"  total: {len(pkg.total.objects)} objects, "
          f"{len(pkg.total.nonidentity_morphisms())} non-identity morphisms")
    if args.out:
        renamed = canonical_identity_names(pkg.total)
        with open(args.out + ".cat", "w", encoding="utf-8") as fh:
            fh.write(write_category_file(renamed))
        export_dot(pkg, args.out + ".dot")
        from .figures import render_nerve_figure

        render_nerve_figure(pkg, args.out + ".png")
        print(f"  wrote {args.out}.cat, {args.out}.dot, {args.out}.png")
    return 0


def cmd_axioms(args):
    try:
        data = load_category(args.path)
    except (ParseError, CategoryLawError, OSError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    trunc = _parse_trunc(args.trunc, args.mode)
    try:
        target = TargetCategory.from_cat(load_category(args.target).cat)
        reports = axiom_suite(data.cat, args.mode, trunc, target, _budget(args))
    except ExactModeUnavailable as err:
        print(f"FAIL {err}")
        return 1
    for r in reports:
        print(r)
    counts = summarize(reports)
    print(f"summary: {counts}")
    if args.report:
        _emit_report(reports, args.report, f"axioms {data.cat.name} {args.mode}")
    return exit_code(reports)


def cmd_enlarge(args):
    try:
        data_i = load_category(args.path)
        data_c = load_category(args.target)
    except (ParseError, CategoryLawError, OSError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    trunc = _parse_trunc(args.trunc, args.mode)
    target = TargetCategory.from_cat(data_c.cat)
    functors = []
    for block in data_i.functor_blocks:
        try:
            functors.append(data_i.resolve_functor(block))
        except WorkbenchError as err:
            print(f"input error: functor {block.name}: {err}", file=sys.stderr)
            return EXIT_INPUT_ERROR
    try:
        reports = enlarge_suite(data_i.cat, target, args.mode, trunc, functors, _budget(args))
    except MissingColimit as err:
        print(f"FAIL {err}")
        return 1
    except ExactModeUnavailable as err:
        print(f"FAIL {err}")
        return 1
    for r in reports:
        print(r)
        if r.check == "enlargement_count":
            print(f"  E objects: {r.witnesses['E_objects']}, morphisms: {r.witnesses['E_morphisms']}")
    counts = summarize(reports)
    print(f"summary: {counts}")
    if args.report:
        _emit_report(reports, args.report, f"enlarge {data_i.cat.name} over {data_c.cat.name}")
    return exit_code(reports)


def cmd_suite(args):
    reports = acceptance_battery(budget=_budget(args))
    for r in reports:
        print(r)
    counts = summarize(reports)
    print(f"summary: {counts}")
    if args.report:
        _emit_report(reports, args.report, "acceptance battery")
    return exit_code(reports)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="nervebench",
        description="nerve constructions, axiom checks and enlargement on finite categories",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the category laws of a file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("nerve", help="build a nerve package and export it")
    p.add_argument("path")
    p.add_argument("--mode", choices=MODES, default="DirReduced")
    p.add_argument("--trunc", default=None, help="'exact' or a level bound")
    p.add_argument("--out", default=None, help="basename for .cat/.dot/.png exports")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("axioms", help="run the axiom suite over a shape")
    p.add_argument("path")
    p.add_argument("--mode", choices=MODES, default="DirReduced")
    p.add_argument("--trunc", default=None)
    p.add_argument("--target", default="builtin:[1]", help="represented target (default: the lattice 2)")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--report", default=None, help="write JSON (+ CSV and PNG) here")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("enlarge", help="run the enlargement battery")
    p.add_argument("path", help="the shape category file")
    p.add_argument("target", help="the target category file or builtin")
    p.add_argument("--mode", choices=MODES, default="DirReduced")
    p.add_argument("--trunc", default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_enlarge, target_positional=True)

    p = sub.add_parser("suite", help="run the entire acceptance battery")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_suite)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WorkbenchError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
