import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from prym.datum import compute_invariants
from prym.errors import InvalidInput
from prym.groups import make_dihedral
from prym.textio import (ParseError, format_datum, format_group, format_record, parse_datum,
                         parse_group, parse_record, record_to_datum)

from support import random_datum

DATA = Path(__file__).resolve().parents[1] / "data"


def test_parse_example2():
    datum = parse_datum((DATA / "example2.datum").read_text())
    assert datum.group.order == 10
    assert datum.s == 6
    assert datum.K.order == 5


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_datum_round_trip(seed):
    datum = random_datum(random.Random(seed))
    again = parse_datum(format_datum(datum))
    assert again.group.order == datum.group.order
    assert [datum.group.format_element(x) for x in datum.mv.entries] == \
        [again.group.format_element(x) for x in again.mv.entries]
    assert compute_invariants(again) == compute_invariants(datum)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_record_round_trip(seed):
    datum = random_datum(random.Random(seed))
    inv = compute_invariants(datum)
    line = format_record(datum, inv, "x")
    fields = parse_record(line)
    assert fields["gt"] == str(inv.gt) and fields["name"] == "x"
    assert compute_invariants(record_to_datum(fields)) == inv


def test_group_file_round_trip():
    G = make_dihedral(5)
    H = parse_group(format_group(G))
    assert H.order == 10
    assert format_group(H) == format_group(G)


def test_comments_and_blank_lines_are_ignored():
    text = "# a comment\n\nabelian 6   # cyclic\nK: 2\nmv: 3; 5; 5; 5\n"
    assert parse_datum(text).s == 4


@pytest.mark.parametrize("text, lineno", [
    ("abelian 6\nK: 2\nmv: 3; 7x; 5\n", 3),
    ("abelian x\nK: 2\nmv: 1; 5\n", 1),
    ("perm 3\n(1,2,3)\n(1,4)\nK: (1,2,3)\nmv: (1,2,3)\n", 3),
    ("abelian 6\nK: 2\n", 2),
    ("cyclic 6\nK: 2\nmv: 1;5\n", 1),
    ("abelian 6\nmv: 1;5\nK: 2\nextra\n", 4),
])
def test_parse_errors_cite_line(text, lineno):
    with pytest.raises(ParseError) as err:
        parse_datum(text)
    assert err.value.lineno == lineno
    assert f"line {lineno}" in str(err.value)


def test_record_missing_fields():
    with pytest.raises(InvalidInput):
        parse_record("group=abelian:6 s=4")
