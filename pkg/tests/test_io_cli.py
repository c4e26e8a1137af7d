import io as _io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from multfree import data, io
from multfree.cli import run
from multfree.errors import SchemaError
from multfree.polytope import RationalPolytope

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
F = Fraction


def sample(name):
    return str(SAMPLES / name)


def cli(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


# scalars and schemas -------------------------------------------------------------

def test_parse_rational():
    assert io.parse_rational("3/6", "x") == F(1, 2)
    assert io.parse_rational(4, "x") == 4
    for bad in ("1.5", 1.5, True, "a/b", None):
        with pytest.raises(SchemaError, match="x"):
            io.parse_rational(bad, "x")


@settings(max_examples=100, deadline=None)
@given(st.fractions(max_denominator=50))
def test_rational_round_trip(q):
    assert io.parse_rational(io.jsonable(q), "q") == q


def test_datum_round_trip():
    for name in data.BUILTIN_NAMES:
        Phi = data.get(name)
        assert io.load_datum(json.loads(json.dumps(io.dump_datum(Phi)))) == Phi


def test_polytope_round_trip():
    P = RationalPolytope.from_vertices([(0, 0), (F(5, 2), 0), (1, 1)])
    Q = io.load_polytope(json.loads(json.dumps(io.dump_polytope(P))))
    assert set(Q.vertices) == set(P.vertices)


def test_schema_errors_name_the_field():
    with pytest.raises(SchemaError, match=r"polytope\.dim"):
        io.load_polytope({"vertices": [[0]]})
    with pytest.raises(SchemaError, match=r"datum\.coroots"):
        io.load_datum({"rank": 1, "roots": [[2]]})
    with pytest.raises(SchemaError, match="builtin"):
        io.load_datum({"builtin": "nope"})


# subcommands ---------------------------------------------------------------------

def test_delzant_hirzebruch_file():
    code, out, _ = cli("--format", "structured", "delzant-check", sample("hirzebruch3.json"))
    recs = records(out)
    assert code == 0
    assert len([r for r in recs if r["record"] == "vertex"]) == 4


def test_delzant_bad_triangle():
    code, out, _ = cli("delzant-check", sample("bad_triangle.json"))
    assert code == 1 and "-2" in out


def test_su2_rejects_d3_at_wall():
    code, out, _ = cli("su2-classify", "--interval", "0", "5", "--d", "3")
    assert code == 1 and "{1, 2, 4}" in out


def test_su2_accepts_table_entries():
    for d in ("1", "2", "4"):
        assert cli("su2-classify", "--interval", "0", "5", "--d", d)[0] == 0


def test_cech_rank_one_bundle():
    code, out, _ = cli("--format", "structured", "cech-vanish", sample("rank1_bundle.json"))
    recs = records(out)
    assert code == 0
    degs = [r for r in recs if r["record"] == "degree"]
    assert [(r["free_rank"], r["rational_betti"]) for r in degs] == [(0, 1), (0, 0)]
    assert all(r["torsion"] == [] for r in degs)


def test_mf_check_undecided_then_oracle():
    base = ("mf-check", sample("so5_triangle.json"), "--datum", sample("so5.json"),
            "--lattice", sample("torus_lattice.json"))
    assert cli(*base)[0] == 3
    assert cli(*base, "--oracle", sample("oracle_example.json"))[0] == 0


def test_glue_and_phi_m():
    code, out, _ = cli("--format", "structured", "glue-weyl", sample("so5_triangle.json"),
                       sample("so5_triangle_assignment.json"), "--datum", sample("so5.json"))
    assert code == 0 and '"order":8' in out
    code, out, _ = cli("phi-m", sample("so5_triangle.json"), sample("so5_triangle_assignment.json"),
                       "--datum", sample("so5.json"), "--lattice", sample("so5_lattice.json"))
    assert code == 0 and "1/2" in out


def test_other_subcommands_succeed():
    assert cli("fibers", sample("sl2.json"), "--point", "0", "--point", "1")[0] == 0
    assert cli("sections", sample("sl2.json"), sample("su2_interval.json"))[0] == 0
    assert cli("rank1-demo", "--s", "0", "--s", "-1", "--s", "4")[0] == 0
    assert cli("cut-corner", sample("square.json"), "--vertex", "0,0", "--eps", "1/3")[0] == 0


def test_input_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "vertices": [[0, 0], ["x", 1]]}')
    code, _, err = cli("delzant-check", str(bad))
    assert code == 2 and "polytope.vertices[1][0]" in err
    bad.write_text("{not json")
    assert cli("delzant-check", str(bad))[0] == 2
    assert cli("delzant-check", str(tmp_path / "missing.json"))[0] == 2
    assert cli("cut-corner", sample("square.json"), "--vertex", "0,0", "--eps", "2")[0] == 2
    assert cli("no-such-command")[0] == 2


# structured output contract ----------------------------------------------------------

ALL_RUNS = [
    ("delzant-check", sample("hirzebruch3.json")),
    ("su2-classify", "--interval", "0", "5", "--d", "3"),
    ("cech-vanish", sample("rank1_bundle.json")),
    ("phi-m", sample("so5_triangle.json"), sample("so5_triangle_assignment.json"),
     "--datum", sample("so5.json"), "--lattice", sample("so5_lattice.json")),
    ("fibers", sample("so5.json"), "--point", "0,0", "--point", "1,0"),
    ("rank1-demo", "--s", "0", "--s", "2"),
]


@pytest.mark.parametrize("argv", ALL_RUNS, ids=[a[0] for a in ALL_RUNS])
def test_structured_round_trip_and_determinism(argv):
    code, out, _ = cli("--format", "structured", *argv)
    recs = records(out)
    assert recs[0] == {"record": "header", "schema_version": io.SCHEMA_VERSION, "command": argv[0]}
    assert recs[-1] == {"record": "exit", "code": code}
    again = "".join(io.encode_record(r) + "\n" for r in recs)
    assert again == out
    assert cli("--format", "structured", *argv)[1] == out
    assert out.isascii()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "multfree", "su2-classify", "--interval", "0", "5", "--d", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "{1, 2, 4}" in proc.stdout
