"""Command-line frontend.

Subcommands: semigroup, table, verify, construct, gaps, classify, sweep.
JSON reports go to stdout, diagnostics to stderr.  Exit codes: 0 for
success / verdict true, 1 for verdict false, 2 for usage errors.  All
randomness is surfaced through --seed (default 0) and echoed in reports.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import __version__
from .constructions import (
    ConstructionError,
    collinear_config,
    general_member,
    line_arrangement,
    pencil,
)
from .linsys import (
    ClassificationError,
    ConfigurationError,
    NodalConfiguration,
    UnclassifiedConfiguration,
    certify_configuration,
    check_general_position,
    classify_table_row,
    gap_sequence_at,
)
from .semigroups import (
    MAX_VARIANTS,
    ROW_COUNTS,
    TableRowId,
    family_by_name,
    gaps,
    genus_of,
    is_semigroup,
    maximal_family,
    row_condition,
    table_row,
)


def _semigroup_payload(d, delta, family, semigroup, row):
    seq = gaps(semigroup)
    payload = {
        "d": d,
        "delta": delta,
        "family": family,
        "row": row.as_list() if row is not None else None,
        "gaps": list(seq.values),
        "nongaps_below_conductor": semigroup.members_below(semigroup.conductor()),
        "weight": seq.weight(),
        "is_semigroup": is_semigroup(semigroup),
        "condition": row_condition(row).text if row is not None else None,
    }
    return payload


def _cmd_semigroup(args) -> tuple[int, dict]:
    semigroup, row = family_by_name(args.family, args.d, args.delta, args.row)
    return 0, _semigroup_payload(args.d, args.delta, args.family, semigroup, row)


def _cmd_table(args) -> tuple[int, dict]:
    rows = []
    for delta in range(1, 6):
        for index in range(1, ROW_COUNTS[delta] + 1):
            row = TableRowId(delta, index)
            entry = {
                "row": row.as_list(),
                "delta": delta,
                "condition": row_condition(row).text,
            }
            try:
                semigroup = table_row(args.d, row)
            except ValueError as exc:
                entry["valid"] = False
                entry["reason"] = str(exc)
            else:
                seq = gaps(semigroup)
                entry.update(
                    valid=True,
                    gaps=list(seq.values),
                    weight=seq.weight(),
                    is_semigroup=is_semigroup(semigroup),
                )
            rows.append(entry)
    return 0, {"d": args.d, "rows": rows}


def _load_config(path: str) -> NodalConfiguration:
    with open(path, "r", encoding="utf-8") as fh:
        return NodalConfiguration.from_json(json.load(fh))


def _cmd_verify(args) -> tuple[int, dict]:
    cfg = _load_config(args.config)
    report = certify_configuration(cfg, seed=args.seed)
    payload = {"config": args.config, "certification": report.to_json()}
    return (0 if report.certified else 1), payload


def _certified_or_fail(args) -> NodalConfiguration:
    cfg = _load_config(args.config)
    report = certify_configuration(cfg, seed=args.seed)
    if not report.certified:
        raise ConfigurationError(
            f"configuration is not certified: {report.detail or 'see certification report'}"
        )
    return cfg


def _cmd_gaps(args) -> tuple[int, dict]:
    cfg = _certified_or_fail(args)
    seq = gap_sequence_at(cfg.curve, cfg.nodes, cfg.p)
    return 0, {
        "d": cfg.d,
        "delta": len(cfg.nodes),
        "gaps": list(seq.values),
        "weight": seq.weight(),
        "certification": cfg.certification.to_json(),
    }


def _cmd_classify(args) -> tuple[int, dict]:
    cfg = _certified_or_fail(args)
    row = classify_table_row(cfg)
    seq = gap_sequence_at(cfg.curve, cfg.nodes, cfg.p)
    return 0, {
        "d": cfg.d,
        "delta": len(cfg.nodes),
        "row": row.as_list(),
        "condition": row_condition(row).text,
        "gaps": list(seq.values),
        "weight": seq.weight(),
    }


def _cmd_construct(args) -> tuple[int, dict]:
    if args.certify_only:
        cfg = _load_config(args.certify_only)
        report = certify_configuration(cfg, seed=args.seed)
        return (0 if report.certified else 1), {
            "config": args.certify_only,
            "certification": report.to_json(),
        }
    if args.kind is None or args.d is None or args.delta is None:
        raise UsageError("construct requires --kind, --d and --delta")
    if args.kind == "lines":
        arrangement = line_arrangement(args.d, args.delta, args.seed)
        cfg = arrangement.to_configuration()
        position = check_general_position(cfg)
        return 0, {
            "kind": "lines",
            "arrangement": arrangement.to_json(),
            "configuration": cfg.to_json(),
            "general_position": position.to_json(),
            "seed": args.seed,
        }
    if args.kind in ("pencil-max", "pencil-max2"):
        variant = "max" if args.kind == "pencil-max" else "max2"
        spec = pencil(variant, args.d, args.delta, args.seed)
        cfg = general_member(spec, args.seed)
        return 0, {
            "kind": args.kind,
            "pencil": spec.to_json(),
            "configuration": cfg.to_json(),
            "seed": args.seed,
        }
    if args.kind == "collinear":
        cfg = collinear_config(args.d, args.delta, args.include_p, args.seed)
        return 0, {
            "kind": "collinear",
            "include_p": args.include_p,
            "configuration": cfg.to_json(),
            "seed": args.seed,
        }
    raise UsageError(f"unknown construct kind {args.kind!r}")


# ---------------------------------------------------------------------------
# Sweeps


def _range_of(spec, key, default_lo=None, default_hi=None):
    value = spec.get(key)
    if value is None:
        return None
    lo, hi = int(value[0]), int(value[1])
    return range(lo, hi + 1)


def _sweep_cells(spec: dict):
    kind = spec.get("kind")
    seeds = [int(s) for s in spec.get("seeds", [0])]
    d_range = _range_of(spec, "d")
    if d_range is None:
        return kind, []
    cells = []
    if kind == "semigroup-iff":
        delta_range = _range_of(spec, "delta") or range(1, 10)
        variants = spec.get("variants", ["max", "max2"])
        for d in d_range:
            for delta in delta_range:
                for variant in variants:
                    cells.append((d, delta, variant, 0))
    elif kind == "general-position":
        for d in d_range:
            delta_range = _range_of(spec, "delta") or range(0, genus_of(d) + 1)
            for delta in delta_range:
                if delta > genus_of(d):
                    continue
                for seed in seeds:
                    cells.append((d, delta, "lines", seed))
    elif kind == "pencil":
        delta_range = _range_of(spec, "delta") or range(1, 4)
        variants = spec.get("variants", ["max", "max2"])
        for d in d_range:
            for delta in delta_range:
                for variant in variants:
                    for seed in seeds:
                        cells.append((d, delta, variant, seed))
    else:
        raise UsageError(f"unknown sweep kind {kind!r}")
    return kind, cells


def _run_cell(kind, d, delta, variant, seed):
    start = time.perf_counter()
    verdict = False
    gap_list: list[int] = []
    weight_val = None
    note = ""
    if kind == "semigroup-iff":
        threshold = 2 * delta + 1 if variant == "max" else 2 * delta
        try:
            semigroup = maximal_family(d, delta, variant)
        except ValueError as exc:
            verdict = d < threshold
            note = f"family undefined: {exc}"
        else:
            seq = gaps(semigroup)
            gap_list = list(seq.values)
            weight_val = seq.weight()
            verdict = is_semigroup(semigroup) == (d >= threshold)
    elif kind == "general-position":
        try:
            arrangement = line_arrangement(d, delta, seed)
            report = check_general_position(arrangement.to_configuration())
            verdict = report.holds
            note = f"retries={arrangement.retries}"
        except ConstructionError as exc:
            verdict = False
            note = str(exc)
    elif kind == "pencil":
        try:
            spec = pencil(variant, d, delta, seed)
            cfg = general_member(spec, seed)
            seq = gap_sequence_at(cfg.curve, cfg.nodes, cfg.p)
            expected = gaps(maximal_family(d, delta, variant))
            gap_list = list(seq.values)
            weight_val = seq.weight()
            verdict = tuple(seq.values) == tuple(expected.values)
        except (ConstructionError, ValueError, ConfigurationError) as exc:
            verdict = False
            note = str(exc)
    wall_ms = int(1000 * (time.perf_counter() - start))
    return {
        "d": d,
        "delta": delta,
        "variant": variant,
        "seed": seed,
        "verdict": verdict,
        "gaps": gap_list,
        "weight": weight_val,
        "wall_ms": wall_ms,
        "note": note,
    }


def _cmd_sweep(args) -> tuple[int, dict]:
    with open(args.spec, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    kind, cells = _sweep_cells(spec)
    results = [
        _run_cell(kind, d, delta, variant, seed)
        for (d, delta, variant, seed) in sorted(cells)
    ]
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["d", "delta", "variant", "seed", "verdict", "gaps", "weight", "wall_ms"]
    )
    for cell in results:
        writer.writerow(
            [
                cell["d"],
                cell["delta"],
                cell["variant"],
                cell["seed"],
                int(cell["verdict"]),
                " ".join(str(g) for g in cell["gaps"]),
                "" if cell["weight"] is None else cell["weight"],
                cell["wall_ms"],
            ]
        )
    csv_text = buf.getvalue()
    csv_path = spec.get("csv")
    if csv_path:
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    all_pass = all(cell["verdict"] for cell in results)
    payload = {
        "kind": kind,
        "spec": spec,
        "cells": results,
        "all_pass": all_pass,
        "csv": csv_text,
    }
    return (0 if all_pass else 1), payload


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nodalgaps",
        description="Gap sequences at total inflection points of nodal plane curves",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_semi = sub.add_parser("semigroup", help="gap data of a semigroup family")
    p_semi.add_argument(
        "--family",
        required=True,
        choices=["nd", "n1", *MAX_VARIANTS, "row"],
    )
    p_semi.add_argument("--d", type=int, required=True)
    p_semi.add_argument("--delta", type=int, default=0)
    p_semi.add_argument("--row", type=int, default=None)
    p_semi.set_defaults(func=_cmd_semigroup)

    p_table = sub.add_parser("table", help="all table rows at a degree")
    p_table.add_argument("--d", type=int, required=True)
    p_table.set_defaults(func=_cmd_table)

    p_verify = sub.add_parser("verify", help="certify a configuration file")
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=_cmd_verify)

    p_con = sub.add_parser("construct", help="build a certified witness")
    p_con.add_argument(
        "--kind", choices=["lines", "pencil-max", "pencil-max2", "collinear"]
    )
    p_con.add_argument("--d", type=int)
    p_con.add_argument("--delta", type=int)
    p_con.add_argument("--include-p", dest="include_p", action="store_true")
    p_con.add_argument("--seed", type=int, default=0)
    p_con.add_argument("--certify-only", default=None, metavar="FILE")
    p_con.set_defaults(func=_cmd_construct)

    p_gaps = sub.add_parser("gaps", help="gap sequence of a certified configuration")
    p_gaps.add_argument("--config", required=True)
    p_gaps.add_argument("--seed", type=int, default=0)
    p_gaps.set_defaults(func=_cmd_gaps)

    p_cls = sub.add_parser("classify", help="match a configuration to a table row")
    p_cls.add_argument("--config", required=True)
    p_cls.add_argument("--seed", type=int, default=0)
    p_cls.set_defaults(func=_cmd_classify)

    p_sweep = sub.add_parser("sweep", help="run a sweep specification file")
    p_sweep.add_argument("--spec", required=True)
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    start = time.perf_counter()
    try:
        code, payload = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ConfigurationError, ConstructionError, ClassificationError,
            UnclassifiedConfiguration) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {
        "command": args.command,
        "tool_version": __version__,
        "wall_ms": int(1000 * (time.perf_counter() - start)),
        **payload,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
