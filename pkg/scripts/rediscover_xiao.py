"""Scan a group catalog for Prym data with a non-injective Prym map and
Ntilde - N < s - 3, then report which hits lie in the orbit of a bundled
example datum.
"""

import argparse
import io
import time
from pathlib import Path

from prym.catalog import resolve_catalog
from prym.datum import PrymDatum
from prym.groups import normal_subgroup
from prym.hodge import MonodromyVector
from prym.search import same_orbit, scan
from prym.textio import parse_datum, parse_record, record_to_datum

DATA = Path(__file__).resolve().parents[1] / "data"


def _transport(ex, G):
    """Move an example datum into G by element labels, or None if impossible."""
    try:
        entries = [G.index_of(ex.group.labels[x]) for x in ex.mv.entries]
        K = normal_subgroup(G, [G.index_of(ex.group.labels[x]) for x in ex.K.generators])
    except Exception:
        return None
    return PrymDatum(G, MonodromyVector(G, entries), K)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--catalog", default="builtin")
    ap.add_argument("--gmax", type=int, default=10)
    ap.add_argument("--smax", type=int, default=10)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--criterion", default="xiao")
    args = ap.parse_args()

    examples = {p.stem: parse_datum(p.read_text()) for p in sorted(DATA.glob("example*.datum"))}
    buf = io.StringIO()
    t0 = time.time()
    scan(resolve_catalog(args.catalog), args.gmax, args.smax, args.criterion, args.jobs, buf)
    elapsed = time.time() - t0

    lines = buf.getvalue().splitlines()
    for line in lines:
        found = record_to_datum(parse_record(line))
        hits = []
        for name, ex in examples.items():
            if ex.group.order != found.group.order or ex.s != found.s:
                continue
            moved = _transport(ex, found.group)
            if moved is not None and same_orbit(found, moved):
                hits.append(name)
        print(line)
        print(f"#   same orbit as: {', '.join(hits) or 'none'}")
    print(f"# {len(lines)} orbit(s) in {elapsed:.1f}s")


if __name__ == "__main__":
    main()
