"""Instance parsing, report round-trips, and the four subcommands."""

import json

import pytest
from hypothesis import given, settings, strategies as st

from scycle import Graph, SplitMix64
from scycle.cli import (Instance, InputFormatError, main, parse_instance,
                        serialize_instance, _clique_union_edges, _gnp_edges,
                        _grid_edges, _simple_cubic_edges)

from conftest import gnp_edges


SAMPLE = """\
c a comment
p scycle 4 3 1 3

e 0 1
e 1 2
c another comment
e 2 0
t 0
t 2
"""


def test_parse_sample():
    inst = parse_instance(SAMPLE)
    assert inst == Instance(4, ((0, 1), (0, 2), (1, 2)), (0, 2), 1, 3)
    g = inst.graph()
    assert g.n == 4 and g.m == 3


def test_roundtrip_explicit():
    inst = parse_instance(SAMPLE)
    assert parse_instance(serialize_instance(inst)) == inst


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_roundtrip_random(seed):
    rng = SplitMix64(seed)
    n = 1 + rng.below(15)
    edges = tuple(sorted(gnp_edges(n, rng.random(), rng)))
    terminals = tuple(sorted(rng.sample(range(n), rng.below(n + 1))))
    inst = Instance(n, edges, terminals, 1 + rng.below(4), 1 + rng.below(7))
    assert parse_instance(serialize_instance(inst)) == inst


@pytest.mark.parametrize("text,line,fragment", [
    ("", 1, "missing problem line"),
    ("e 0 1\n", 1, "before problem line"),
    ("t 0\n", 1, "before problem line"),
    ("p scycle 3 0 1 3\np scycle 3 0 1 3\n", 2, "duplicate problem"),
    ("p scycle 3 0 1\n", 1, "problem line must be"),
    ("p dimacs 3 0 1 3\n", 1, "problem line must be"),
    ("p scycle x 0 1 3\n", 1, "integer"),
    ("p scycle 0 0 1 3\n", 1, "at least one vertex"),
    ("p scycle 3 0 0 3\n", 1, "bad parameters"),
    ("p scycle 3 0 1 0\n", 1, "bad parameters"),
    ("p scycle 3 1 1 3\ne 0\n", 2, "edge line must be"),
    ("p scycle 3 1 1 3\ne 0 5\n", 2, "out of range"),
    ("p scycle 3 1 1 3\ne 1 1\n", 2, "self-loop"),
    ("p scycle 3 2 1 3\ne 0 1\ne 1 0\n", 3, "duplicate edge"),
    ("p scycle 3 1 1 3\ne 0 1\nt 9\n", 3, "out of range"),
    ("p scycle 3 1 1 3\ne 0 1\nt 1 2\n", 3, "terminal line must be"),
    ("p scycle 3 1 1 3\ne 0 1\nx 1\n", 3, "unknown line tag"),
    ("p scycle 3 2 1 3\ne 0 1\n", 1, "promises 2 edges"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(InputFormatError) as err:
        parse_instance(text)
    assert f"line {line}" in str(err.value)
    assert fragment in str(err.value)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


TRIANGLE = "p scycle 3 3 1 3\ne 0 1\ne 1 2\ne 0 2\nt 0\nt 1\nt 2\n"
K4 = ("p scycle 4 6 2 3\n"
      + "".join(f"e {u} {v}\n" for u in range(4) for v in range(u + 1, 4))
      + "".join(f"t {v}\n" for v in range(4)))


def test_solve_exit_codes(tmp_path, capsys):
    inst = write(tmp_path, "tri.txt", TRIANGLE)
    assert main(["solve", inst]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["outcome"] == "packing"
    assert out["packing"] == [[0, 1, 2]]

    inst4 = write(tmp_path, "k4.txt", K4)
    assert main(["solve", inst4]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["outcome"] == "hitting"
    assert len(out["hitting_set"]) == out["size"]


def test_solve_parse_error_exit(tmp_path, capsys):
    bad = write(tmp_path, "bad.txt", "p scycle 3 1 1 3\ne 0 9\n")
    assert main(["solve", bad]) == 2
    err = capsys.readouterr().err
    assert "error: line 2" in err


def test_solve_missing_file(capsys):
    assert main(["solve", "/no/such/file.txt"]) == 2


def test_report_fields_and_summary(tmp_path, capsys):
    inst = write(tmp_path, "k4.txt", K4)
    rep = tmp_path / "report.json"
    assert main(["solve", inst, "--out", str(rep), "--trace"]) == 1
    err = capsys.readouterr().err
    assert "hitting set:" in err
    report = json.loads(rep.read_text())
    assert report["format"] == "scycle-report/1"
    assert report["instance"]["n"] == 4
    assert report["instance"]["terminals"] == [0, 1, 2, 3]
    assert report["bounds"]["s_k"] == 40
    assert report["bounds"]["hitting_bound"] == 552.0
    assert report["shortcut"] is False
    assert report["iterations"] == len(report["trace"])
    for rec in report["trace"]:
        assert set(rec) == {"iteration", "case", "score", "branch", "loops",
                            "pendants", "blocked"}


def test_reports_reproducible_apart_from_wall_clock(tmp_path):
    inst = write(tmp_path, "k4.txt", K4)
    texts = []
    for name in ("a.json", "b.json"):
        rep = tmp_path / name
        main(["solve", inst, "--out", str(rep), "--trace"])
        lines = [ln for ln in rep.read_text().splitlines()
                 if '"wall_ms"' not in ln]
        texts.append(lines)
    assert texts[0] == texts[1]


def test_shortcut_flagged_in_report(tmp_path, capsys):
    text = TRIANGLE.replace("t 1\nt 2\n", "")
    inst = write(tmp_path, "one_t.txt", text)
    assert main(["solve", inst, "--trace"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["shortcut"] is True
    assert report["hitting_set"] == [0]
    assert report["iterations"] == 0
    assert report["trace"] == []


def test_verify_accepts_fresh_report(tmp_path, capsys):
    inst = write(tmp_path, "k4.txt", K4)
    rep = tmp_path / "report.json"
    main(["solve", inst, "--out", str(rep)])
    capsys.readouterr()
    assert main(["verify", inst, str(rep)]) == 0
    assert capsys.readouterr().out.startswith("pass:")


def test_verify_rejects_tampered_packing(tmp_path, capsys):
    inst = write(tmp_path, "tri.txt", TRIANGLE)
    rep = tmp_path / "report.json"
    main(["solve", inst, "--out", str(rep)])
    doc = json.loads(rep.read_text())
    doc["packing"] = [[0, 1]]
    rep.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", inst, str(rep)]) == 1
    assert capsys.readouterr().out.startswith("fail:")


def test_verify_rejects_tampered_hitting_set(tmp_path, capsys):
    inst = write(tmp_path, "k4.txt", K4)
    rep = tmp_path / "report.json"
    main(["solve", inst, "--out", str(rep)])
    doc = json.loads(rep.read_text())
    doc["hitting_set"] = []
    rep.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", inst, str(rep)]) == 1
    assert "survives" in capsys.readouterr().out


def test_verify_rejects_other_instance(tmp_path, capsys):
    k4_path = write(tmp_path, "k4.txt", K4)
    tri_path = write(tmp_path, "tri.txt", TRIANGLE)
    rep = tmp_path / "report.json"
    main(["solve", k4_path, "--out", str(rep)])
    capsys.readouterr()
    assert main(["verify", tri_path, str(rep)]) == 1
    assert "different instance" in capsys.readouterr().out


def test_verify_rejects_unknown_format_or_outcome(tmp_path, capsys):
    inst = write(tmp_path, "k4.txt", K4)
    rep = tmp_path / "report.json"
    main(["solve", inst, "--out", str(rep)])
    doc = json.loads(rep.read_text())
    doc["format"] = "something/9"
    rep.write_text(json.dumps(doc))
    assert main(["verify", inst, str(rep)]) == 1

    main(["solve", inst, "--out", str(rep)])
    doc = json.loads(rep.read_text())
    doc["outcome"] = "maybe"
    rep.write_text(json.dumps(doc))
    assert main(["verify", inst, str(rep)]) == 1


def test_verify_broken_report_json(tmp_path, capsys):
    inst = write(tmp_path, "k4.txt", K4)
    rep = write(tmp_path, "report.json", "{not json")
    assert main(["verify", inst, str(rep)]) == 2


def test_gen_deterministic(tmp_path, capsys):
    args = ["gen", "gnp", "--n", "14", "--p", "0.3", "--seed", "99"]
    assert main(args) == 0
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second
    main(["gen", "gnp", "--n", "14", "--p", "0.3", "--seed", "100"])
    other = capsys.readouterr().out
    assert other != first


def test_gen_output_parses(tmp_path, capsys):
    main(["gen", "gnp", "--n", "9", "--p", "0.5", "--k", "2", "--ell", "4",
          "--seed", "3"])
    inst = parse_instance(capsys.readouterr().out)
    assert inst.n == 9 and inst.k == 2 and inst.ell == 4
    assert inst.terminals == tuple(range(9))  # defaults to every vertex


def test_gen_terminal_sampling(capsys):
    main(["gen", "gnp", "--n", "12", "--p", "0.3", "--terminals", "4",
          "--seed", "8"])
    inst = parse_instance(capsys.readouterr().out)
    assert len(inst.terminals) == 4
    assert main(["gen", "gnp", "--n", "4", "--terminals", "9"]) == 2


def test_gen_gnp_extremes():
    rng = SplitMix64(1)
    assert _gnp_edges(5, 0.0, rng) == []
    assert len(_gnp_edges(5, 1.0, rng)) == 10
    with pytest.raises(InputFormatError):
        _gnp_edges(5, 1.5, rng)


def test_gen_cubic_simple_and_regular(capsys):
    main(["gen", "cubic", "--n", "20", "--seed", "5"])
    inst = parse_instance(capsys.readouterr().out)
    g = inst.graph()
    assert all(g.degree(v) == 3 for v in range(20))
    assert main(["gen", "cubic", "--n", "7"]) == 2
    assert main(["gen", "cubic", "--n", "2"]) == 2


def test_gen_grid(capsys):
    main(["gen", "grid", "--rows", "3", "--cols", "4"])
    inst = parse_instance(capsys.readouterr().out)
    assert inst.n == 12
    assert len(inst.edges) == 3 * 3 + 2 * 4  # rows*(cols-1) + (rows-1)*cols


def test_gen_union_of_cliques(capsys):
    main(["gen", "union-of-cliques", "--k", "3", "--ell", "4"])
    inst = parse_instance(capsys.readouterr().out)
    assert inst.n == 14 and len(inst.edges) == 2 * 21
    assert inst.terminals == tuple(range(14))
    assert main(["gen", "union-of-cliques", "--k", "1"]) == 2


def test_oracle_subcommand(tmp_path, capsys):
    inst = write(tmp_path, "k4.txt", K4)
    assert main(["oracle", inst]) == 0
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert doc["long_s_cycles"] == 7
    assert doc["max_packing"] == 1
    assert doc["min_hitting_size"] == 2
    assert len(doc["max_packing_witness"]) == 1
    assert "max packing 1" in captured.err


def test_oracle_on_forest(tmp_path, capsys):
    text = "p scycle 4 3 1 3\ne 0 1\ne 1 2\ne 2 3\nt 0\n"
    inst = write(tmp_path, "tree.txt", text)
    assert main(["oracle", inst]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["long_s_cycles"] == 0
    assert doc["max_packing"] == 0
    assert doc["min_hitting_set"] == []


def test_oracle_cap(tmp_path, capsys):
    big = "p scycle 30 0 1 3\n"
    inst = write(tmp_path, "big.txt", big)
    assert main(["oracle", inst]) == 2
    assert main(["oracle", inst, "--cap", "30"]) == 0


def test_cli_requires_subcommand():
    with pytest.raises(SystemExit):
        main([])


def test_generator_helpers_are_deterministic():
    a = _gnp_edges(30, 0.2, SplitMix64(7))
    b = _gnp_edges(30, 0.2, SplitMix64(7))
    assert a == b
    ca = _simple_cubic_edges(16, SplitMix64(9))
    cb = _simple_cubic_edges(16, SplitMix64(9))
    assert ca == cb
    n, edges = _clique_union_edges(2, 3)
    assert n == 5 and len(edges) == 10
    assert len(_grid_edges(2, 2)) == 4
