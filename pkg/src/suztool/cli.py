"""suztool command line.

Exit status: 0 when every claim passes, 1 when one fails (or is inconclusive
under --strict), 2 for bad input or a refused computation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter

import numpy as np

from .chartab.dixon import check_degree_table
from .core.classes import conjugacy_classes, inverse_classes
from .core.lattice import normal_subgroups
from .core.structure import fingerprint
from .errors import ConstructionError, InternalError, ToolkitError
from .specs import GroupHandle, parse_group
from .suites import SUITES, VerificationReport, degree_table, emit_catalog, run_heights, run_identify, run_suite, run_ti

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FINGERPRINT_LIMIT = 1 << 16


def _construct(h: GroupHandle, threads: int) -> VerificationReport:
    G = h.group
    rep = VerificationReport("construct", h.spec, h.field_spec)
    q = h.params.q
    if h.kind == "suzuki":
        ok = G.order in (q * q, q ** 3)
        rep.add("order", "|P| is q^2 or q^3", ok, f"|G|={G.order}")
    else:
        rep.add("order", "closure reaches the expected order", True, f"|G|={G.order}")
    rep.add("sylow-order", "the recorded Sylow 2-subgroup has the full 2-part",
            h.sylow.order == G.order & -G.order, f"|P|={h.sylow.order}")
    rep.data["order"] = G.order
    rep.data["generators"] = [G.format(int(g)) for g in G.gens]
    if G.order <= FINGERPRINT_LIMIT:
        conjugacy_classes(G, threads)
        rep.data["fingerprint"] = fingerprint(G).to_dict()
    return rep


def _chartable(h: GroupHandle, threads: int) -> VerificationReport:
    T = degree_table(h, threads)
    rep = VerificationReport("chartable", h.spec, h.field_spec)
    star = inverse_classes(h.group, conjugacy_classes(h.group, threads))
    try:
        check_degree_table(T, star)
        ok, detail = True, f"sum of squares {sum(d * d for d in T.degrees)} = |G|"
    except InternalError as exc:
        ok, detail = False, str(exc)
    rep.add("degree-table", "degrees divide |G|, squares sum to |G|, orthogonality mod p", ok, detail)
    rep.data.update({"prime": T.prime, "classes": T.count, "degrees": T.multiset(),
                     "class_sizes": [int(s) for s in T.class_sizes]})
    return rep


def _normals(h: GroupHandle, threads: int) -> VerificationReport:
    rep = VerificationReport("normal-subgroups", h.spec, h.field_spec)
    Ns = normal_subgroups(h.group, threads)
    bad = sum(not N.is_normal() for N in Ns)
    rep.add("all-normal", "every listed subgroup is normal", bad == 0, f"{len(Ns)} subgroups, {bad} not normal")
    rep.data["count"] = len(Ns)
    rep.data["orders"] = [[o, c] for o, c in sorted(Counter(N.order for N in Ns).items())]
    return rep


COMMANDS = {
    "construct": _construct,
    "chartable": _chartable,
    "heights": lambda h, t: run_heights(h, t),
    "normal-subgroups": _normals,
    "ti": lambda h, t: run_ti(h, t),
    "identify": lambda h, t: run_identify(h, t),
}


def _hex(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex integer: {text!r}") from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("threads must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="suztool", description="Verify structural facts about Suzuki 2-groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help="group spec, e.g. 'A(m=3,l=1)' or 'sz(8)'")
    common.add_argument("--json", metavar="PATH", help="write the report as JSON")
    common.add_argument("--strict", action="store_true", help="treat inconclusive verdicts as failures")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--poly", type=_hex, help="field polynomial as hex, e.g. 0xb")
    common.add_argument("--timing", action="store_true", help="include wall-clock duration in the report")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a named suite")
    v.add_argument("suite", choices=sorted(SUITES))
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    c = sub.add_parser("catalog", help="list constructible groups and suites")
    c.add_argument("--json", metavar="PATH")
    return p


def _print_report(rep: dict, out) -> None:
    print(f"{rep['suite']} {rep['group']}: {rep['verdict']}", file=out)
    for c in rep["claims"]:
        print(f"  [{c['verdict']}] {c['id']}: {c['detail']}", file=out)


def _dump(obj: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.command == "catalog":
        cat = emit_catalog()
        for g in cat["groups"]:
            print(f"{g['spec']:<22} {g['help']}")
        for s in cat["suites"]:
            print(f"suite {s['name']:<16} {s['applies_to']}; budget: {s['budget']}")
        if args.json:
            _dump(cat, args.json)
        return EXIT_PASS
    try:
        start = time.perf_counter()
        if args.command == "verify":
            rep = run_suite(args.suite, args.group, args.threads, args.poly)
        else:
            rep = COMMANDS[args.command](parse_group(args.group, args.poly), args.threads)
        if args.timing:
            rep.duration = time.perf_counter() - start
    except (ConstructionError, InternalError) as exc:
        print(f"suztool: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ToolkitError as exc:
        print(f"suztool: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    d = rep.to_dict()
    _print_report(d, sys.stdout)
    if args.json:
        _dump(d, args.json)
    return rep.exit_code(args.strict)


if __name__ == "__main__":
    sys.exit(main())
