"""Serialisation round trips, input diagnostics and the command line."""

import json
import math
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumsets import BoxUnion, PointSet, Report, dump_set, emit_plot, parse_points_csv, parse_set_json, sequence_report
from sumsets.cli import cli_main
from sumsets.fileio import InputError, decode, encode, load_set, load_vectors, save_set

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


@st.composite
def point_sets(draw):
    dim = draw(st.integers(1, 4))
    pts = draw(st.lists(st.tuples(*[fractions] * dim), min_size=1, max_size=12))
    return PointSet(pts)


@st.composite
def box_unions(draw):
    dim = draw(st.integers(1, 3))
    boxes = []
    for _ in range(draw(st.integers(1, 5))):
        lo = draw(st.tuples(*[fractions] * dim))
        ext = draw(st.tuples(*[st.fractions(min_value=0, max_value=50, max_denominator=1000)] * dim))
        boxes.append((lo, tuple(a + b for a, b in zip(lo, ext))))
    return BoxUnion(boxes)


@settings(max_examples=60, deadline=None)
@given(point_sets())
def test_point_set_json_round_trip(a):
    assert parse_set_json(dump_set(a)).points == a.points


@settings(max_examples=40, deadline=None)
@given(box_unions())
def test_box_union_json_round_trip(u):
    back = parse_set_json(dump_set(u))
    assert back.boxes == u.boxes


scalars = st.one_of(
    st.integers(-(10**30), 10**30),
    fractions,
    st.floats(allow_nan=False),
    st.text(max_size=12),
    st.booleans(),
    st.none(),
)
values = st.recursive(scalars, lambda inner: st.one_of(st.lists(inner, max_size=4), st.dictionaries(st.text(max_size=5), inner, max_size=4)), max_leaves=20)


@settings(max_examples=150, deadline=None)
@given(values)
def test_value_encoding_round_trip(v):
    text = json.dumps(encode(v))
    back = decode(json.loads(text))
    assert back == v and type(back) is type(v)


def test_non_finite_floats_survive():
    for x in (math.inf, -math.inf):
        assert decode(json.loads(json.dumps(encode(x)))) == x
    assert math.isnan(decode(json.loads(json.dumps(encode(math.nan)))))


def test_report_round_trip_and_csv():
    rows = [{"k": 1, "c": Fraction(1), "d": 0.5}, {"k": 2, "c": Fraction(1, 2), "d": 0.25, "note": "1/2"}]
    rep = Report(["sequence"], rows=rows, meta={"flag": None}, timings={"k=1": 0.1})
    back = Report.from_json(rep.to_json())
    assert back.rows == rows and back.meta == rep.meta
    assert "timings" not in json.loads(rep.to_json(timings=False))
    csv_text = rep.to_csv()
    assert csv_text.splitlines()[0] == "k,c,d,note"
    assert csv_text.splitlines()[2].startswith("2,1/2,0.25")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"kind": "points", "data": [[0, 0], [1]]}', ":1"),
        ('{"kind": "points",\n "data": [[0, 0],\n [1, "x"]]}', "bad.json:3"),
        ('{"kind": "blobs", "data": []}', "kind"),
        ("[1, 2", "bad.json"),
        ('{"kind": "boxes", "data": [[[0, 0], [1]]]}', "bad.json"),
    ],
)
def test_json_diagnostics(text, fragment):
    with pytest.raises(InputError) as err:
        parse_set_json(text, source="bad.json")
    assert fragment in str(err.value)


def test_csv_parsing_and_diagnostics():
    a = parse_points_csv("x,y\n# comment\n0,0\n1,1/2\n\n", source="p.csv")
    assert a.points == ((0, 0), (1, Fraction(1, 2)))
    with pytest.raises(InputError) as err:
        parse_points_csv("0,0\n1,2,3\n", source="p.csv")
    assert "p.csv:2" in str(err.value)
    with pytest.raises(InputError):
        parse_points_csv("0,0\n1,abc\n", source="p.csv")


def test_files_and_vectors(tmp_path):
    a = PointSet([(0, 0), (1, 2)])
    save_set(a, tmp_path / "a.json")
    assert load_set(tmp_path / "a.json").points == a.points
    (tmp_path / "v.csv").write_text("1,0\n1,0\n0,1\n")
    assert len(load_vectors(tmp_path / "v.csv")) == 3
    with pytest.raises(InputError):
        load_set(tmp_path / "missing.json")


# ---------------------------------------------------------------------------
# sequence reports and plots
# ---------------------------------------------------------------------------


def test_sequence_report_two_points():
    rep = sequence_report(PointSet([(0,), (1,)]), 8)
    assert [row["c"] for row in rep.rows] == [Fraction(1, k) for k in range(1, 9)]
    assert [row["d"] for row in rep.rows] == [Fraction(1, 2 * k) for k in range(1, 9)]
    assert all(row["k*c"] == 1 for row in rep.rows)
    assert rep.meta["monotone"]["c"] is True and rep.meta["monotone_powers_of_two"]["d"] is True


def test_plot_is_deterministic_and_valid_xml():
    import xml.etree.ElementTree as ET

    rep = sequence_report(PointSet([(0,), (1,), (3,)]), 5, measures=("c", "d"))
    first, second = emit_plot(rep, ["c", "d"]), emit_plot(rep, ["c", "d"])
    assert first == second
    ET.fromstring(first)
    single = Report(["x"], rows=[{"k": 1, "c": 1}])
    assert "<circle" in emit_plot(single, ["c"])
    with pytest.raises(ValueError):
        emit_plot(Report(["x"], rows=[{"k": 1, "c": "n/a"}]), ["c"])


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------


@pytest.fixture
def triangle(tmp_path):
    path = tmp_path / "tri.json"
    path.write_text(json.dumps({"kind": "points", "data": [[0, 0], [1, 0], [0, 1]]}))
    return path


def test_cli_measure_is_byte_deterministic(triangle, tmp_path, capsys):
    out = tmp_path / "m.json"
    assert cli_main(["measure", "--in", str(triangle), "--out", str(out)]) == 0
    first = out.read_bytes()
    assert cli_main(["measure", "--in", str(triangle), "--out", str(out)]) == 0
    assert out.read_bytes() == first
    data = json.loads(first)
    assert data["rows"][0]["delta"]["exact"] == "1/2"


def test_cli_sum_and_average(triangle, tmp_path, capsys):
    target = tmp_path / "avg.json"
    assert cli_main(["sum", "--in", str(triangle), "--average", "2", "--out", str(target)]) == 0
    assert len(load_set(target).points) == 6
    assert cli_main(["sum", "--in", str(triangle), "--in", str(triangle)]) == 0
    assert len(parse_set_json(capsys.readouterr().out).points) == 6


def test_cli_sequence_with_plot(tmp_path, capsys):
    src = tmp_path / "two.json"
    src.write_text(json.dumps({"kind": "points", "data": [[0], [1]]}))
    code = cli_main(["sequence", "--in", str(src), "--kmax", "4", "--plot", "--out-dir", str(tmp_path / "plots")])
    assert code == 0
    assert capsys.readouterr().out.splitlines()[0].startswith("k,size")
    svg = (tmp_path / "plots" / "two-sequence.svg").read_text()
    assert svg.startswith("<?xml")


def test_cli_exit_codes(tmp_path, capsys):
    assert cli_main(["verify", "supermodularity", "--trials", "3"]) == 0
    assert cli_main(["counterexample", "dyn-farkhi", "--f", "10"]) == 2
    assert cli_main(["counterexample", "supermodularity-counterexample"]) == 2
    assert cli_main(["verify", "nonsense"]) == 1
    assert cli_main(["measure", "--in", str(tmp_path / "nope.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "points",\n "data": [[0, 0], [1]]}')
    assert cli_main(["measure", "--in", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "bad.json:2" in err
    assert cli_main(["no-such-command"]) == 1


def test_cli_verify_json_is_parsable(capsys):
    assert cli_main(["verify", "det-supermodularity", "--trials", "2", "--seed", "4", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["results"][0]["verdict"] == "holds" and data["meta"]["seed"] == 4


def test_cli_balance_and_decompose(tmp_path, capsys):
    vec = tmp_path / "vec.csv"
    vec.write_text("1,0\n0,1\n1,1\n")
    assert cli_main(["balance", "--in", str(vec), "--gauge", "l1", "--json"]) == 0
    capsys.readouterr()
    seg = tmp_path / "seg.json"
    seg.write_text(json.dumps({"kind": "points", "data": [[0, 0], [1, 0]]}))
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"kind": "points", "data": [[0, 0], [0, 1]]}))
    assert cli_main(["decompose", "--in", str(seg), "--in", str(other), "--point", "1/2,1/2", "--json"]) == 0
    assert cli_main(["decompose", "--in", str(seg), "--point", "1,2,3"]) == 1


def test_cli_gen_is_seeded(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli_main(["gen", "points", "--seed", "9", "--out", str(a)]) == 0
    assert cli_main(["gen", "points", "--seed", "9", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert cli_main(["gen", "boxes", "--dim", "3", "--seed", "1", "--out", str(tmp_path / "c.json")]) == 0
    assert isinstance(load_set(tmp_path / "c.json"), BoxUnion)


def test_config_from_environment(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 77}))
    monkeypatch.setenv("SUMSETS_CONFIG", str(cfg))
    assert cli_main(["verify", "det-supermodularity", "--trials", "1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["meta"]["seed"] == 77
    cfg.write_text("{not json")
    assert cli_main(["verify", "det-supermodularity", "--trials", "1"]) == 1


def test_module_entry_point():
    import subprocess
    import sys

    done = subprocess.run([sys.executable, "-m", "sumsets", "--help"], capture_output=True, text=True)
    assert done.returncode == 0 and "counterexample" in done.stdout
    assert Path(__file__).exists()
