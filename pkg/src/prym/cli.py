"""Command-line entry point: verify, chartab, family, table, scan.

Exit codes: 0 success, 1 invalid input (including usage errors), 2 internal
inconsistency.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from pathlib import Path

from .characters import character_table
from .datum import compute_invariants, ramification_r_central
from .errors import DatumError, InternalInconsistency, InvalidInput
from .families import FAMILIES, family_datum, verify_family
from .groups import parse_group_spec
from .hodge import chevalley_weil
from .textio import format_datum, format_record, parse_datum, parse_group

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _load_group(arg: str):
    if Path(arg).exists():
        G = parse_group(_read(arg))
        G.name = Path(arg).stem
        return G
    G = parse_group_spec(arg)
    G.name = arg
    return G


# -- verify -----------------------------------------------------------------


def cmd_verify(args, out) -> int:
    datum = parse_datum(_read(args.datum))
    inv = compute_invariants(datum)
    if args.format == "records":
        out.write(format_record(datum, inv, Path(args.datum).stem) + "\n")
        return EXIT_OK
    out.write(inv.line() + "\n")
    hd = chevalley_weil(datum.mv)
    tab = hd.table
    out.write(f"group={datum.group.spec()} |G|={datum.group.order} d={inv.d} s={inv.s} "
              f"family_dim={inv.family_dim}\n")
    out.write("local_orders=" + ",".join(map(str, datum.mv.local_orders)) + "\n")
    plus = hd.plus_multiplicities(datum.K)
    for rho in range(len(tab)):
        if hd.multiplicities[rho]:
            side = "+" if plus[rho] else "-"
            out.write(f"  rho{rho} deg={tab.degrees[rho]} ind={tab.indicators[rho]:+d} "
                      f"mult={hd.multiplicities[rho]} {side}\n")
    if inv.d == 2:
        out.write(f"r_central={ramification_r_central(datum)}\n")
    return EXIT_OK


# -- chartab ----------------------------------------------------------------


def cmd_chartab(args, out) -> int:
    G = _load_group(args.group)
    tab = character_table(G, method=args.method)
    cl = G.classes
    reps = [G.format_element(r) for r in cl.representatives]
    if args.format == "records":
        for rho, row in enumerate(tab.irreducibles):
            vals = "|".join(str(v).replace(" ", "") for v in row)
            out.write(f"group={G.spec()} rho={rho} degree={tab.degrees[rho]} "
                      f"indicator={tab.indicators[rho]} dual={tab.dual[rho]} values={vals}\n")
        return EXIT_OK
    out.write(f"# {G.name} order={G.order} classes={len(cl)} prime={tab.prime}\n")
    out.write("class\trep\tsize\torder\n")
    for c, rep in enumerate(reps):
        out.write(f"C{c}\t{rep}\t{cl.sizes[c]}\t{cl.orders[c]}\n")
    out.write("char\tdeg\tind\t" + "\t".join(f"C{c}" for c in range(len(cl))) + "\n")
    for rho, row in enumerate(tab.irreducibles):
        out.write(f"chi{rho}\t{tab.degrees[rho]}\t{tab.indicators[rho]:+d}\t"
                  + "\t".join(str(v) for v in row) + "\n")
    return EXIT_OK


# -- family / table -----------------------------------------------------------


def cmd_family(args, out) -> int:
    datum = family_datum(args.class_id, args.N)
    inv = compute_invariants(datum)
    if args.format == "records":
        out.write(format_record(datum, inv, f"family{args.class_id}_N{args.N}") + "\n")
    else:
        out.write(f"# family class {args.class_id}, N = {args.N}, "
                  f"k = {FAMILIES[args.class_id].k_rule(args.N)}\n")
        out.write(format_datum(datum))
        out.write("# " + inv.line() + "\n")
    return EXIT_OK


def _parse_classes(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        try:
            rng = range(int(lo), int(hi) + 1) if sep else [int(lo)]
        except ValueError:
            raise InvalidInput(f"bad class list {text!r}") from None
        out.extend(rng)
    bad = [c for c in out if c not in FAMILIES]
    if bad:
        raise InvalidInput(f"family classes must be in 1..5, got {bad}")
    return sorted(set(out))


TABLE_HEADER = ("class", "N", "k", "group", "gt*", "g*", "r*", "gt", "g", "r",
                "Ntilde", "N_dim", "flags", "status")


def cmd_table(args, out) -> int:
    classes = _parse_classes(args.classes)
    if args.n_max < 0:
        raise InvalidInput("--n-max must be non-negative")
    rows = [row for c in classes for row in verify_family(c, args.n_max)]
    if args.format == "text":
        out.write("# starred columns are the printed closed forms; the rest are computed\n")
        out.write("\t".join(TABLE_HEADER) + "\n")
    for row in rows:
        inv = row.invariants
        comp = (("-",) * 6 if inv is None else
                (inv.gt, inv.g, inv.r, inv.Ntilde, inv.N, ",".join(inv.flags) or "none"))
        status = "MATCH" if row.match else "MISMATCH"
        cells = (row.class_id, row.N, row.k, row.group, *row.predicted, *comp, status)
        if args.format == "records":
            out.write(" ".join(f"{h.rstrip('*')}{'_table' if h.endswith('*') else ''}={v}"
                               for h, v in zip(TABLE_HEADER, cells)) + "\n")
        else:
            out.write("\t".join(map(str, cells)) + "\n")
        for m in row.mismatches:
            out.write(f"#   class {row.class_id} N={row.N}: {m}\n")
        if row.error:
            out.write(f"#   class {row.class_id} N={row.N}: {row.error}\n")
    n_match = sum(r.match for r in rows)
    out.write(f"# {n_match}/{len(rows)} rows match\n")
    return EXIT_OK


# -- scan -------------------------------------------------------------------


def cmd_scan(args, out) -> int:
    from .catalog import resolve_catalog
    from .search import scan

    if args.gmax < 1 or args.smax < 4:
        raise InvalidInput("--gmax must be >= 1 and --smax >= 4")
    catalog = resolve_catalog(args.catalog)
    results = scan(catalog, args.gmax, args.smax, args.criterion, args.jobs, out)
    per_group: dict[str, int] = {}
    for res in results:
        per_group[res.group] = per_group.get(res.group, 0) + len(res.lines)
    # records go to --out when given; the summary always goes to stdout
    summary = sys.stdout
    total = 0
    for name, n in per_group.items():
        if n:
            summary.write(f"# {name}: {n} orbit(s)\n")
            total += n
    summary.write(f"# total: {total} orbit(s) over {len(catalog)} group(s)\n")
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("text", "records"), default="text")

    p = _Parser(prog="prym", description="Prym data: invariants, families and scans.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="invariants of a datum file")
    v.add_argument("datum")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("chartab", parents=[common], help="character table of a group")
    c.add_argument("group", help="group file or spec such as abelian:2,6")
    c.add_argument("--method", choices=("auto", "dixon", "abelian"), default="auto")
    c.set_defaults(func=cmd_chartab)

    f = sub.add_parser("family", parents=[common], help="datum of one family member")
    f.add_argument("--class", dest="class_id", type=int, required=True)
    f.add_argument("--N", type=int, required=True)
    f.set_defaults(func=cmd_family)

    t = sub.add_parser("table", parents=[common], help="reproduce the family table")
    t.add_argument("--classes", default="1-5")
    t.add_argument("--n-max", type=int, default=10)
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("scan", parents=[common], help="search for Prym data")
    s.add_argument("--catalog", default="builtin",
                   help="builtin, core, or comma-separated group files")
    s.add_argument("--gmax", type=int, required=True)
    s.add_argument("--smax", type=int, default=10)
    s.add_argument("--criterion", choices=("noninj", "constant", "xiao", "none"), default="xiao")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_scan)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with _output(args.out) as out:
            return args.func(args, out)
    except DatumError as exc:
        print(f"error: invalid datum: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
