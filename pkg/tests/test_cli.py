from pathlib import Path

import pytest

from prym import cli
from prym.errors import InternalInconsistency
from prym.textio import format_datum, parse_record, record_to_datum

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_example2_first_line(capsys):
    code, out, _ = run(capsys, "verify", DATA / "example2.datum")
    assert code == 0
    assert out.splitlines()[0] == "gt=6 g=2 r=0 Ntilde=5 N=3 qh=4 flags=noninjective,xiao"


def test_verify_family1(capsys):
    code, out, _ = run(capsys, "verify", DATA / "family1_N1.datum")
    assert code == 0
    assert out.splitlines()[0].endswith("flags=constant_prym,noninjective")
    assert "r_central=2" in out


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_verify_golden(capsys, n):
    code, out, _ = run(capsys, "verify", DATA / f"example{n}.datum")
    assert code == 0
    assert out == (GOLDEN / f"verify_example{n}.txt").read_text()


@pytest.mark.parametrize("spec, name", [
    ("abelian:2,6", "C2xC6"),
    ("perm:3:(1,2,3);(2,3)", "D3"),
    ("perm:5:(1,2,3,4,5);(2,5)(3,4)", "D5"),
])
def test_chartab_golden(capsys, spec, name):
    code, out, _ = run(capsys, "chartab", spec)
    assert code == 0
    assert out == (GOLDEN / f"chartab_{name}.txt").read_text()


def test_chartab_dixon_matches_auto_for_abelian(capsys):
    _, auto, _ = run(capsys, "chartab", "abelian:2,6", "--format", "records")
    _, dixon, _ = run(capsys, "chartab", "abelian:2,6", "--format", "records", "--method", "dixon")
    assert auto == dixon


def test_table_golden(capsys):
    code, out, _ = run(capsys, "table", "--classes", "1-5", "--n-max", "10")
    assert code == 0
    assert out == (GOLDEN / "table_N10.txt").read_text()


def test_table_single_row(capsys):
    code, out, _ = run(capsys, "table", "--classes", "1", "--n-max", "1")
    rows = [l for l in out.splitlines() if l and not l.startswith(("#", "class"))]
    assert code == 0 and len(rows) == 1
    assert rows[0].split("\t")[:10] == ["1", "1", "3", "C2xC6", "4", "2", "2", "4", "2", "2"]
    assert rows[0].endswith("MATCH")


def test_table_empty(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "0")
    assert code == 0
    assert [l for l in out.splitlines() if not l.startswith(("#", "class"))] == []


def test_table_rejects_bad_classes(capsys):
    code, _, err = run(capsys, "table", "--classes", "0-7")
    assert code == 1 and "1..5" in err


def test_family_records_reparse_through_verify(capsys, tmp_path):
    for class_id in range(1, 6):
        code, out, _ = run(capsys, "family", "--class", class_id, "--N", 2, "--format", "records")
        assert code == 0
        fields = parse_record(out.strip())
        path = tmp_path / f"f{class_id}.datum"
        path.write_text(format_datum(record_to_datum(fields)))
        code, line, _ = run(capsys, "verify", path, "--format", "records")
        assert code == 0
        again = parse_record(line.strip())
        for key in ("group", "s", "gt", "g", "r", "Ntilde", "N", "qh", "flags"):
            assert again[key] == fields[key]


def test_scan_records_reparse_through_verify(capsys, tmp_path):
    out_file = tmp_path / "hits.txt"
    code, summary, _ = run(capsys, "scan", "--catalog", "core", "--gmax", 10, "--smax", 10,
                           "--criterion", "xiao", "--out", out_file)
    assert code == 0
    assert "# total: 4 orbit(s)" in summary
    for line in out_file.read_text().splitlines():
        fields = parse_record(line)
        path = tmp_path / "d.datum"
        path.write_text(format_datum(record_to_datum(fields)))
        code, out, _ = run(capsys, "verify", path, "--format", "records")
        assert code == 0
        again = parse_record(out.strip())
        assert all(again[k] == fields[k] for k in ("gt", "g", "r", "Ntilde", "N", "qh", "flags"))


def test_scan_gmax2_no_hits(capsys):
    code, out, _ = run(capsys, "scan", "--catalog", "core", "--gmax", 2, "--criterion", "xiao")
    assert code == 0
    assert [l for l in out.splitlines() if not l.startswith("#")] == []


def test_scan_constant_includes_family1_k3(capsys):
    code, out, _ = run(capsys, "scan", "--catalog", "builtin", "--gmax", 4, "--smax", 4,
                       "--criterion", "constant")
    assert code == 0
    hits = [parse_record(l) for l in out.splitlines() if not l.startswith("#")]
    c2c6 = [h for h in hits if h["group"] == "abelian:2,6"]
    # orbits are merged under automorphisms, so the representative's K may be
    # the image of <(1,3)> rather than <(1,3)> itself
    assert any((h["gt"], h["g"], h["r"], h["Ntilde"], h["N"]) == ("4", "2", "2", "1", "1")
               for h in c2c6)


# -- exit codes -------------------------------------------------------------


FAULTS = {
    "garbage": "this is not a datum\n",
    "bad_element": "abelian 6\nK: 2\nmv: 3; 5; 5; q\n",
    "missing_mv": "abelian 6\nK: 2\n",
    "product": "abelian 6\nK: 2\nmv: 1; 1; 1; 1\n",
    "generation": "abelian 6\nK: 2\nmv: 3; 3; 3; 3\n",
    "not_normal": "perm 3\n(1,2,3)\n(2,3)\nK: (2,3)\nmv: (2,3); (2,3); (1,2,3); (1,3)\n",
    "whole_group": "abelian 6\nK: 1\nmv: 3; 5; 5; 5\n",
    "bad_cycle": "perm 3\n(1,2,7)\nK: ()\nmv: ()\n",
}


@pytest.mark.parametrize("name", sorted(FAULTS))
def test_invalid_input_exits_1(capsys, tmp_path, name):
    path = tmp_path / f"{name}.datum"
    path.write_text(FAULTS[name])
    code, out, err = run(capsys, "verify", path)
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_parse_error_cites_line(capsys, tmp_path):
    path = tmp_path / "bad.datum"
    path.write_text(FAULTS["bad_element"])
    _, _, err = run(capsys, "verify", path)
    assert "line 3" in err


def test_datum_error_lists_failures(capsys, tmp_path):
    path = tmp_path / "bad.datum"
    path.write_text("abelian 6\nK: 1\nmv: 2; 2\n")
    _, _, err = run(capsys, "verify", path)
    for word in ("product", "generation", "length", "degree"):
        assert word in err


def test_missing_file_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "verify", tmp_path / "nope.datum")
    assert code == 1 and "cannot read" in err


@pytest.mark.parametrize("argv", [["bogus"], ["verify"], ["table", "--frobnicate"],
                                  ["scan", "--gmax", "x"], ["table", "--format", "xml"]])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 1
    assert "usage:" in capsys.readouterr().err


def test_internal_inconsistency_exits_2(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise InternalInconsistency("injected")

    monkeypatch.setattr(cli, "compute_invariants", broken)
    code, _, err = run(capsys, "verify", DATA / "example1.datum")
    assert code == 2 and "injected" in err
