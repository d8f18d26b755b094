"""Command-line front end: ``apnforge construct|verify|invariants|table3|catalog``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import catalog
from .analysis import DEFAULT_MAX_DIM, AnalysisError, invariant_profile
from .families import (KNOWN, ConstructionError, FamilyParams, InvalidParameters, family_field,
                       family_id, golgolu_f1, golgolu_f2, known_instance, lzlq, f1, f2, validate)
from .field import get_field
from .poly import PreconditionError, find_good_alphas
from .table3 import ALL_FAMILIES, compute_rows, load_expected, pairwise_distinct, render
from .vbf import TableFormatError, differential_uniformity, load_table, save_table

log = logging.getLogger("apnforge")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

BIVARIATE_NEW = ("f1", "f2", "golgolu_f1", "golgolu_f2", "lzlq")


def _int(text: str) -> int:
    return int(text, 0)


def _parse_alpha(text):
    if text is None or text == "auto":
        return text
    return _int(text)


def _parse_fixed(items) -> dict:
    out = {}
    for item in items or []:
        key, _, value = item.partition("=")
        if not value:
            raise argparse.ArgumentTypeError(f"--param expects key=value, got {item!r}")
        out[key] = _int(value)
    return out


def _emit(obj, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    elif fmt == "csv":
        keys = list(obj)
        print(",".join(keys))
        print(",".join(json.dumps(obj[k]) if isinstance(obj[k], (list, dict)) else str(obj[k]) for k in keys))
    else:
        for k, v in obj.items():
            print(f"- **{k}**: {v}")


def _build(args):
    """Return (params, table, field json) for the construct command."""
    fam = args.family.lower()
    if fam in BIVARIATE_NEW:
        if args.m is None:
            raise InvalidParameters("--m is required")
        fld = get_field(args.m)
        k = args.k if args.k is not None else 1
        if fam in ("f1", "f2"):
            if fam == "f2":
                k = 1
            alpha = args.alpha
            if alpha == "auto" or alpha is None:
                alpha = find_good_alphas(fld, k)[0]
            params = FamilyParams(fam, args.m, k, alpha)
            ok, reason = validate(params, fld)
            if not ok:
                raise InvalidParameters(reason)
            pair = f1(args.m, k, alpha) if fam == "f1" else f2(args.m, alpha)
        else:
            params = FamilyParams(fam, args.m, None if fam == "lzlq" else k)
            pair = lzlq(args.m) if fam == "lzlq" else (golgolu_f1 if fam == "golgolu_f1" else golgolu_f2)(args.m, k)
        from .vbf import evaluate
        return params, evaluate(pair), fld.to_json()
    fid = family_id(fam)
    if fid not in KNOWN:
        raise InvalidParameters(f"unknown family {args.family!r}")
    if args.n is not None:
        if args.n % 2:
            raise InvalidParameters("--n must be even")
        m = args.n // 2
    elif args.m is not None:
        m = args.m
    else:
        m = 6
    fixed = _parse_fixed(args.param)
    if args.i is not None:
        fixed["i"] = args.i
    if args.k is not None:
        fixed["k"] = args.k
    if args.alpha not in (None, "auto"):
        fixed["alpha"] = args.alpha
    params, tt = known_instance(fid, m, **fixed)
    return params, tt, family_field(fid, m).to_json()


def cmd_construct(args) -> int:
    try:
        params, tt, field_json = _build(args)
    except (InvalidParameters, PreconditionError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = Path(args.out) if args.out else Path(f"{params.family}-n{tt.n}-{tt.digest()}.tt")
    save_table(tt, out)
    ddt = differential_uniformity(tt, threads=args.threads)
    profile = None
    if ddt.apn and not args.no_profile:
        profile = invariant_profile(tt, threads=args.threads).to_json()
    rec = catalog.CatalogRecord(tt.digest(), params.to_json(), field_json, profile, ddt.to_json(), str(out))
    catalog.append(catalog.catalog_path(args.catalog), rec)
    _emit(rec.to_json(), args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        tt = load_table(args.table)
    except TableFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    summary = differential_uniformity(tt, threads=args.threads)
    out = summary.to_json()
    out["n"] = tt.n
    out["hash"] = tt.digest()
    _emit(out, args.format)
    return EXIT_OK if summary.apn else EXIT_FAIL


def cmd_invariants(args) -> int:
    try:
        tt = load_table(args.table)
    except TableFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.max_dim is None:
            prof = invariant_profile(tt, DEFAULT_MAX_DIM, confirm=True, threads=args.threads)
        else:
            prof = invariant_profile(tt, args.max_dim, confirm=False, threads=args.threads)
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(prof.to_json(), args.format)
    return EXIT_OK


def cmd_table3(args) -> int:
    families = ALL_FAMILIES if not args.families else [family_id(f.strip()) for f in args.families.split(",")]
    expected = load_expected(args.expected)
    rows = compute_rows(families, expected, threads=args.threads)
    sys.stdout.write(render(rows, args.format))
    bad = [r.family for r in rows if not r.match]
    if bad:
        print(f"mismatch in families: {', '.join(bad)}", file=sys.stderr)
        return EXIT_FAIL
    if {"f1", "f2"} <= set(families) and not pairwise_distinct(rows):
        print("F1/F2 rows are not distinct from the other families", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_catalog(args) -> int:
    path = catalog.catalog_path(args.catalog)
    if args.action == "dedup":
        kept, removed, bad = catalog.dedup(path)
        print(json.dumps({"kept": kept, "removed": removed, "corrupt_skipped": bad}))
    else:
        records, bad = catalog.read(path)
        if args.action == "list":
            for r in records:
                print(json.dumps(r.to_json(), sort_keys=True))
        else:
            text = catalog.to_csv(records)
            if args.out:
                Path(args.out).write_text(text)
            else:
                sys.stdout.write(text)
    if bad:
        print(f"{bad} corrupt catalog line(s) skipped", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv", "md"), help="default: md for table3, json otherwise")
    common.add_argument("--catalog", help="catalog path (default: $APNFORGE_CATALOG or ./apnforge-catalog.jsonl)")

    p = argparse.ArgumentParser(prog="apnforge", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build an instance, save its table, catalog it")
    c.add_argument("family", help="f1, f2, golgolu_f1, golgolu_f2, lzlq, gold or a known family number 1-12")
    c.add_argument("--family", dest="family_opt", help=argparse.SUPPRESS)
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--i", type=int)
    c.add_argument("--alpha", type=_parse_alpha, help="field element (int, 0x..) or 'auto'")
    c.add_argument("--param", action="append", help="pin a known-family parameter, key=value")
    c.add_argument("--out", help="table file path")
    c.add_argument("--no-profile", action="store_true", help="skip the N_F computation")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="differential uniformity of a table file")
    v.add_argument("table")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("invariants", parents=[common], help="invariant profile of a table file")
    i.add_argument("table")
    i.add_argument("--max-dim", type=int, help="count subspaces exactly up to this dimension")
    i.set_defaults(func=cmd_invariants)

    t = sub.add_parser("table3", parents=[common], help="recompute the n = 12 N_F table")
    t.add_argument("--families", help="comma-separated subset, e.g. f1,f2,gold")
    t.add_argument("--expected", help="alternative expected-values fixture")
    t.set_defaults(func=cmd_table3)

    k = sub.add_parser("catalog", parents=[common], help="list, dedup or export the catalog")
    k.add_argument("action", choices=("list", "dedup", "export"))
    k.add_argument("--out", help="CSV destination for export")
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "family_opt", None):
        args.family = args.family_opt
    if args.format is None:
        args.format = "md" if args.command == "table3" else "json"
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
