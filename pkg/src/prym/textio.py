"""Text formats: group files, datum files and one-line finding records.

Group file::

    abelian 2 6

or::

    perm 5
    (1 2 3 4 5)
    (2 5)(3 4)

Datum file: a group block followed by ``K: <elements>`` and
``mv: <elements>``, elements separated by ``;``.  Abelian elements are
comma-separated residues (``1,3``); permutation elements are cycle words
read left to right.  Lines starting with ``#`` are ignored.

Record: space-separated ``key=value`` fields in a fixed order; see
``RECORD_FIELDS``.
"""

from __future__ import annotations

from .datum import CoverInvariants, PrymDatum
from .errors import InvalidInput
from .groups import (FiniteGroup, make_abelian, make_permutation_group,
                     normal_subgroup, parse_cycles, parse_group_spec)
from .hodge import MonodromyVector

RECORD_FIELDS = ("group", "s", "mv", "K", "gt", "g", "r", "Ntilde", "N", "qh", "flags", "name")


class ParseError(InvalidInput):
    def __init__(self, lineno: int, msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}")


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def _parse_group_lines(lines) -> FiniteGroup:
    if not lines:
        raise ParseError(1, "missing group description")
    lineno, head = lines[0]
    words = head.split()
    kind = words[0]
    if kind == "abelian":
        try:
            factors = [int(w) for w in words[1:]]
        except ValueError:
            raise ParseError(lineno, f"bad abelian factors in {head!r}") from None
        if len(lines) > 1:
            raise ParseError(lines[1][0], "unexpected line after abelian group")
        try:
            return make_abelian(factors)
        except InvalidInput as exc:
            raise ParseError(lineno, str(exc)) from None
    if kind == "perm":
        if len(words) != 2:
            raise ParseError(lineno, "expected 'perm <degree>'")
        try:
            degree = int(words[1])
        except ValueError:
            raise ParseError(lineno, f"bad degree {words[1]!r}") from None
        gens = []
        for ln, line in lines[1:]:
            try:
                gens.append(parse_cycles(line, degree))
            except InvalidInput as exc:
                raise ParseError(ln, str(exc)) from None
        try:
            return make_permutation_group(degree, gens)
        except InvalidInput as exc:
            raise ParseError(lineno, str(exc)) from None
    raise ParseError(lineno, f"unknown group kind {kind!r}")


def parse_group(text: str) -> FiniteGroup:
    return _parse_group_lines(list(_lines(text)))


def format_group(G: FiniteGroup) -> str:
    kind = G.presentation[0]
    if kind == "abelian":
        return "abelian " + " ".join(str(f) for f in G.presentation[1]) + "\n"
    if kind == "perm":
        _, degree, gens = G.presentation
        out = [f"perm {degree}"]
        for g in gens:
            out.append(G.format_element(G.index_of(g)).replace(",", " "))
        return "\n".join(out) + "\n"
    raise InvalidInput("table-presented groups cannot be written as group files")


def _parse_elements(G: FiniteGroup, body: str, lineno: int) -> list[int]:
    out = []
    for tok in body.split(";"):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(G.parse_element(tok))
        except InvalidInput as exc:
            raise ParseError(lineno, str(exc)) from None
    return out


def parse_datum(text: str) -> PrymDatum:
    lines = list(_lines(text))
    group_lines, k_line, mv_line = [], None, None
    for ln, line in lines:
        low = line.lower()
        if low.startswith("k:"):
            k_line = (ln, line[2:])
        elif low.startswith("mv:"):
            mv_line = (ln, line[3:])
        elif k_line is None and mv_line is None:
            group_lines.append((ln, line))
        else:
            raise ParseError(ln, f"unexpected line {line!r}")
    G = _parse_group_lines(group_lines)
    last = lines[-1][0] if lines else 1
    if k_line is None:
        raise ParseError(last, "missing 'K:' line")
    if mv_line is None:
        raise ParseError(last, "missing 'mv:' line")
    kgens = _parse_elements(G, k_line[1], k_line[0])
    entries = _parse_elements(G, mv_line[1], mv_line[0])
    try:
        K = normal_subgroup(G, kgens)
    except InvalidInput:
        from .groups import NormalSubgroup
        # kept so that validate() reports the normality failure with the rest
        K = NormalSubgroup(G, G.closure(kgens), tuple(kgens))
    return PrymDatum(G, MonodromyVector(G, entries), K)


def format_datum(datum: PrymDatum) -> str:
    G = datum.group
    k = "; ".join(G.format_element(x) for x in datum.K.generators)
    mv = "; ".join(G.format_element(x) for x in datum.mv.entries)
    return format_group(G) + f"K: {k}\nmv: {mv}\n"


# -- records ----------------------------------------------------------------


def format_record(datum: PrymDatum, inv: CoverInvariants, name: str | None = None,
                  extra: dict[str, str] | None = None) -> str:
    G = datum.group
    fields = {
        "group": G.spec(),
        "s": str(datum.s),
        "mv": datum.mv.format(),
        "K": ";".join(G.format_element(x) for x in datum.K.generators),
        "gt": str(inv.gt),
        "g": str(inv.g),
        "r": str(inv.r),
        "Ntilde": str(inv.Ntilde),
        "N": str(inv.N),
        "qh": str(inv.qh),
        "flags": ",".join(inv.flags) or "none",
        "name": name or G.name,
    }
    line = " ".join(f"{k}={fields[k]}" for k in RECORD_FIELDS)
    for k, v in (extra or {}).items():
        line += f" {k}={v}"
    return line


def parse_record(line: str) -> dict[str, str]:
    fields = {}
    for tok in line.split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise InvalidInput(f"bad record field {tok!r}")
        fields[key] = val
    missing = [k for k in RECORD_FIELDS if k not in fields]
    if missing:
        raise InvalidInput(f"record is missing fields {missing}")
    return fields


def record_to_datum(fields: dict[str, str]) -> PrymDatum:
    G = parse_group_spec(fields["group"])
    entries = _parse_elements(G, fields["mv"], 1)
    kgens = _parse_elements(G, fields["K"], 1)
    return PrymDatum(G, MonodromyVector(G, entries), normal_subgroup(G, kgens))
