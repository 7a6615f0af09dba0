import json

import pytest

from conftest import table
from polyatlas import cli
from polyatlas.catalog import CatalogEntry, dumps, entries_from_oracle, read_catalog, verify_entry
from polyatlas.fixtures import FixtureError, fixture_names, load_fixture, parse_group
from polyatlas.oracle import oracle_catalog


# --- fixture files ---------------------------------------------------------


def test_parse_image_lists_and_cycles():
    G = parse_group("# two generators\ndegree 4\n[1,2,3,0]\n(0 1)  # a transposition\n")
    assert G.order() == 24 and G.degree == 4


@pytest.mark.parametrize("text,message", [
    ("degree 3\n", "no generators"),
    ("degree 3\n# only comments\n\n", "no generators"),
    ("[0,1,2]\n", "before the degree"),
    ("degree 3\n[0,1]\n", "2 images"),
    ("degree 3\n[0,0,1]\n", "line 2"),
    ("degree 3\n(0 7)\n", "out of range"),
    ("degree 3\nhello\n", "cannot parse"),
    ("", "missing degree"),
])
def test_parse_errors(text, message):
    with pytest.raises(FixtureError, match=message):
        parse_group(text)


def test_shipped_fixtures():
    names = fixture_names()
    for name in ["S4", "S5", "A5", "D8", "PSL27", "C2xC2xC2", "M11", "M12", "M22", "J1", "Suz", "Ru"]:
        assert name in names
    with pytest.raises(FixtureError):
        load_fixture("nope")


# --- catalogs --------------------------------------------------------------


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_and_oracle_catalogs_are_identical(tmp_path, capsys):
    for name in ["A5", "S4", "S5", "C2xC2xC2"]:
        a, b = tmp_path / f"{name}.jsonl", tmp_path / f"{name}-oracle.jsonl"
        assert run(["--group", name, "--out", str(a)], capsys)[0] == 0
        assert run(["--group", name, "--oracle", "--max-rank", "5", "--out", str(b)], capsys)[0] == 0
        assert a.read_bytes() == b.read_bytes()


def test_summary_line(tmp_path, capsys):
    code, out, _ = run(["--group", "M12", "--out", str(tmp_path / "m.jsonl")], capsys)
    assert code == 0
    assert "rank>3: 14, rank3: 23" in out
    for phase in ["classes", "rank-3", "rank-high", "dedup"]:
        assert phase in out


def test_catalog_goes_to_stdout_without_out(capsys):
    code, out, err = run(["--group", "A5"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert all(json.loads(line)["group_name"] == "A5" for line in lines)
    assert "rank>3: 0, rank3: 2" in err


def test_catalog_deterministic_across_runs_and_threads(tmp_path, capsys):
    outs = []
    for threads in [1, 1, 4]:
        path = tmp_path / f"s5-{len(outs)}.jsonl"
        run(["--group", "S5", "--threads", str(threads), "--out", str(path)], capsys)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_entries_round_trip_and_reverify(tmp_path, capsys):
    path = tmp_path / "s5.jsonl"
    run(["--group", "S5", "--out", str(path)], capsys)
    entries = read_catalog(path)
    assert [e.rank for e in entries] == [3, 3, 3, 3, 4]
    tab = table("S5")
    for e in entries:
        assert CatalogEntry.from_json(e.to_json()) == e
        assert verify_entry(e, tab)
    broken = CatalogEntry(**{**entries[0].__dict__, "schlafli": [9, 9]})
    assert not verify_entry(broken, tab)
    assert dumps(entries) == path.read_text()


def test_self_dual_flags():
    entries = entries_from_oracle("S4", oracle_catalog(table("S4").group, max_rank=3))
    by_type = {tuple(e.schlafli): e.self_dual for e in entries}
    # the tetrahedron is self-dual, the hemicube is not
    assert by_type[(3, 3)] is True
    assert sum(by_type.values()) == 1


def test_empty_group_file(tmp_path, capsys):
    path = tmp_path / "empty.txt"
    path.write_text("degree 4\n")
    code, _, err = run(["--group", str(path)], capsys)
    assert code == cli.EXIT_PARSE
    assert "no generators" in err


def test_bound_errors_are_reported(capsys):
    code, _, err = run(["--group", "M12", "--max-enum", "1000"], capsys)
    assert code == cli.EXIT_TOO_LARGE
    assert "too large" in err
    code, _, err = run(["--group", "M11", "--oracle"], capsys)
    assert code == cli.EXIT_TOO_LARGE


def test_dump_classes(capsys):
    code, out, _ = run(["--group", "M12", "--dump-classes"], capsys)
    assert code == 0
    assert "involution class 0: size 396" in out
    assert len([line for line in out.splitlines() if line.strip()[:1].isdigit()]) == 15


def test_ranks_flag(capsys):
    _, out, err = run(["--group", "S5", "--ranks", "3"], capsys)
    assert len(out.splitlines()) == 4
    _, out, err = run(["--group", "S5", "--ranks", "high"], capsys)
    assert len(out.splitlines()) == 1


# --- oracle ----------------------------------------------------------------


def test_oracle_cyclic_group_is_empty(capsys):
    code, out, _ = run(["--group", "C5", "--oracle"], capsys)
    assert code == 0 and out == ""


def test_oracle_d8_rank_two_and_three():
    classes = oracle_catalog(table("D8").group, max_rank=3, min_rank=2)
    assert [len(c.gens) for c in classes] == [2]
    square = classes[0]
    assert square.self_dual and square.parabolic_orders == (2, 2)
