"""Command-line interface.

Subcommands: group, systems, classify, verify, iso-search.  Output goes to
stdout (JSON carries "schema_version": 1); diagnostics go to stderr.  Exit
codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .classify import (
    IndexQuadruple,
    classify_K,
    corollary_pair_search,
    dicyclic_record,
    find_isomorphisms,
    lambda_set,
    order_scan,
)
from .golden import SUITES
from .groups import build_group, element_order_census
from .refsystems import copy_count, enumerate_systems, orbit_partition, subgroup_copy_count

SCHEMA_VERSION = 1

USAGE_ERROR = 2
DOMAIN_ERROR = 3


def _emit_json(payload: dict) -> None:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    print(json.dumps(payload, indent=1, sort_keys=False))


def _build_from_args(args) -> "FiniteQuaternionGroup":
    if args.k in ("cyclic", "dicyclic"):
        if args.n is None:
            raise ValueError(f"--k {args.k} requires --n")
        return build_group(args.k, args.n)
    if args.n is not None:
        raise ValueError(f"--k {args.k} takes no --n")
    return build_group(args.k)


def cmd_group(args) -> int:
    try:
        K = _build_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.emit == "summary":
        print(f"name={K.name}")
        print(f"order={K.order}")
        census = element_order_census(K)
        print("element_orders=" + ",".join(f"{o}:{c}" for o, c in census.items()))
    elif args.emit == "elements":
        _emit_json({"name": K.name, "order": K.order,
                    "elements": [q.to_json() for q in K.elements],
                    "rendered": [q.render() for q in K.elements]})
    else:  # cayley
        _emit_json(K.to_json())
    return 0


def cmd_systems(args) -> int:
    try:
        K = _build_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        systems = enumerate_systems(K)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    rows = []
    for L in systems:
        rows.append({
            "size": L.size,
            "generators": list(L.generators),
            "orbit_partition": [list(o) for o in orbit_partition(L)],
            "copies": copy_count(L),
            "subgroup_copies": subgroup_copy_count(L),
        })
    if args.format == "json":
        _emit_json({"group": K.name, "systems": rows})
    else:
        print(f"reflection systems of {K.name}")
        print(f"{'size':>5} {'copies':>7} {'embeddings':>11}  orbits")
        for row in rows:
            orbits = "+".join(str(len(o)) for o in row["orbit_partition"])
            print(f"{row['size']:>5} {row['copies']:>7} {row['subgroup_copies']:>11}  {orbits}")
    return 0


def _parse_index(text: str) -> IndexQuadruple:
    parts = [int(v) for v in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("--index needs n,a,b,r")
    return parts  # validated against Lambda_n later


def cmd_classify(args) -> int:
    selectors = [s is not None for s in (args.k, args.index, args.order)]
    if sum(selectors) != 1:
        print("error: exactly one of --k / --index / --order is required", file=sys.stderr)
        return USAGE_ERROR
    if args.index is not None:
        n, a, b, r = args.index
        try:
            idx = IndexQuadruple(n, a, b, r)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return DOMAIN_ERROR
        if idx not in lambda_set(n):
            print(f"error: [{n},{a},{b},{r}] is not in the index set of D_{n}",
                  file=sys.stderr)
            return DOMAIN_ERROR
        rec = dicyclic_record(idx)
        if args.format == "json":
            _emit_json({"record": rec.to_json()})
        else:
            _print_records([rec])
        return 0
    if args.order is not None:
        records = order_scan(args.order)
        isos = find_isomorphisms(records)
        partner = {}
        for iso in isos:
            partner[iso.label1] = iso.label2
            partner[iso.label2] = iso.label1
        records = [replace(rec, iso_partner=partner.get(rec.label_str()))
                   for rec in records]
        if args.format == "json":
            _emit_json({"records": [rec.to_json() for rec in records],
                        "isomorphisms": [[i.label1, i.label2, i.map_summary]
                                         for i in isos]})
        else:
            _print_records(records)
            for iso in isos:
                print(f"isomorphism: {iso.label1} ~ {iso.label2} ({iso.map_summary})")
        return 0
    try:
        K = _build_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        records = classify_K(K)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    if args.format == "json":
        _emit_json({"records": [rec.to_json() for rec in records]})
    else:
        _print_records(records)
    return 0


def _print_records(records) -> None:
    print(f"{'label':<22} {'K':<5} {'|L|':>4} {'H':<5} {'order':>7} {'refs':>5}  orbits")
    for rec in records:
        print(f"{rec.label_str():<22} {rec.K_name:<5} {rec.L_size:>4} {rec.H_name:<5} "
              f"{rec.order:>7} {rec.reflections:>5}  {rec.orbit_types}")


def cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    report = suite()
    print(report.render())
    return 0 if report.passed else 1


def cmd_iso_search(args) -> int:
    if args.max_n < 2:
        print("error: --max-n must be at least 2", file=sys.stderr)
        return USAGE_ERROR
    pairs = corollary_pair_search(args.max_n, args.type)
    if args.format == "json":
        _emit_json({"type": args.type, "max_n": args.max_n,
                    "pairs": [p.to_json() for p in pairs]})
    else:
        print(f"type ({args.type}) pairs up to n = {args.max_n}: {len(pairs)}")
        for p in pairs:
            print(f"  {p.idx1.render()} ~ {p.idx2.render()}  c={p.c}  "
                  f"order={p.idx1.order} refs={p.idx1.reflections}  [{p.certificate}]")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatrefl",
        description="Exact classification toolkit for rank-two imprimitive "
                    "quaternionic reflection groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_group_args(p):
        p.add_argument("--k", required=True,
                       choices=["cyclic", "dicyclic", "T", "O", "I"])
        p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("group", help="construct a finite quaternion group")
    add_group_args(p)
    p.add_argument("--emit", choices=["summary", "elements", "cayley"],
                   default="summary")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("systems", help="enumerate reflection systems up to equivalence")
    add_group_args(p)
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.set_defaults(func=cmd_systems)

    p = sub.add_parser("classify", help="classification records")
    p.add_argument("--k", choices=["cyclic", "dicyclic", "T", "O", "I"], default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--index", type=_parse_index, default=None,
                   metavar="n,a,b,r")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="golden-data verification suites")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("iso-search", help="equal-invariant non-isomorphic pair search")
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.add_argument("--type", required=True, choices=["i", "ii"])
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.set_defaults(func=cmd_iso_search)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
