import json

import pytest

from gmspace.cli import InputError, dispatch, parse_poly
from gmspace.zcong import IntPoly


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, out


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


CHAIN2 = {"vertices": ["a", "b"], "edges": [["a", "b"]]}
CYCLE3 = {"vertices": ["a", "b", "c"],
          "edges": [["a", "b"], ["b", "c"], ["c", "a"]]}


def test_poly_parser():
    assert parse_poly("x^2/2 - x/2") == IntPoly.of([0, 0, 1])
    assert parse_poly("C(x,2)") == IntPoly.of([0, 0, 1])
    assert parse_poly("3x^2 + 1") == IntPoly.from_standard([1, 0, 3])
    assert parse_poly("2*C(x,3) - C(x,1)") == IntPoly.of([0, -1, 0, 2])
    assert parse_poly("-7") == IntPoly.of([-7])
    assert parse_poly("x") == IntPoly.of([0, 1])
    with pytest.raises(InputError):
        parse_poly("x/3")
    with pytest.raises(InputError):
        parse_poly("y + 1")


def test_zigzag_dist(tmp_path, capsys):
    path = write(tmp_path, "g.json", CHAIN2)
    code, out = run(capsys, "zigzag", "dist", path)
    assert code == 0 and '["+"]' in out
    code, out = run(capsys, "zigzag", "dist", path, "--from", "a", "--to", "b")
    assert code == 0 and '["+"]' in out


def test_zigzag_embeddable(tmp_path, capsys):
    good = write(tmp_path, "g.json", CHAIN2)
    assert run(capsys, "zigzag", "embeddable", good)[0] == 0
    bad = write(tmp_path, "c3.json", CYCLE3)
    code, out = run(capsys, "zigzag", "embeddable", bad)
    assert code == 1 and "witness" in out


def test_zigzag_fence(tmp_path, capsys):
    path = write(tmp_path, "g.json", CHAIN2)
    code, out = run(capsys, "zigzag", "fence", path, "--from", "a", "--to", "b")
    assert code == 0
    assert "up_fence: 1" in out and "down_fence: 2" in out


def test_zcong_check_exit_codes(capsys):
    code, out = run(capsys, "zcong", "check", "x^2/2 - x/2")
    assert code == 1
    assert '"k": 2' in out and '"x": 0' in out
    code, _ = run(capsys, "zcong", "check", "x^2 - x")
    assert code == 0
    assert run(capsys, "zcong", "gen", "4")[0] == 0


def test_zcong_extend_and_affine(tmp_path, capsys):
    pairs = write(tmp_path, "pairs.json", [[0, 1], [3, 7]])
    code, out = run(capsys, "zcong", "extend", pairs, "1")
    assert code == 0 and "value: 1" in out
    values = [[[x, y], [1 + 3 * x, 2 + 3 * y]]
              for x in range(-2, 3) for y in range(-2, 3)]
    grid = write(tmp_path, "grid.json",
                 {"dimension": 2, "window": [[-2, 2], [-2, 2]],
                  "values": values})
    code, out = run(capsys, "zcong", "affine", grid)
    assert code == 0 and "multiplier: 3" in out


def test_gms_commands(tmp_path, capsys):
    space = {
        "points": ["x", "y"],
        "monoid": {"elements": [0, 1], "leq": [[0, 1]],
                   "oplus": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]],
                   "involution": [[0, 0], [1, 1]], "zero": 0},
        "dist": [[0, 1], [1, 0]],
    }
    path = write(tmp_path, "space.json", space)
    assert run(capsys, "gms", "check", path)[0] == 0
    code, out = run(capsys, "gms", "hyperconvex", path)
    assert code == 0
    code, out = run(capsys, "gms", "fpp", path)
    assert code == 1 and "witness" in out  # the swap has no fixed point


def test_eqv_commands(tmp_path, capsys):
    system = {"carrier": [0, 1, 2, 3, 4, 5],
              "relations": [[[0, 2, 4], [1, 3, 5]], [[0, 3], [1, 4], [2, 5]]]}
    path = write(tmp_path, "sys.json", system)
    assert run(capsys, "eqv", "arithmetical", path)[0] == 0
    crt = dict(system)
    crt["constraints"] = [[1, 0], [2, 1]]
    code, out = run(capsys, "eqv", "crt", write(tmp_path, "crt.json", crt))
    assert code == 0 and "solution: 5" in out
    bad = dict(system)
    bad["constraints"] = [[0, 0], [1, 0]]
    code, out = run(capsys, "eqv", "crt", write(tmp_path, "bad.json", bad))
    assert code == 1 and "witness_pair" in out
    ext = dict(system)
    ext.update({"map": [[0, 0], [1, 1]], "z": 5})
    code, out = run(capsys, "eqv", "extend", write(tmp_path, "ext.json", ext))
    assert code == 0 and "extension" in out
    code, out = run(capsys, "eqv", "orthogonal", "4")
    assert code == 0 and "size: 3" in out


def test_semirigid_commands(tmp_path, capsys):
    code, out = run(capsys, "semirigid", "zadori", "6", "--check")
    assert code == 0 and "semirigid: true" in out
    code, _ = run(capsys, "semirigid", "zadori", "4")
    assert code == 2
    system = {"carrier": [0, 1, 2], "relations": [[[0], [1], [2]]]}
    path = write(tmp_path, "sys.json", system)
    code, out = run(capsys, "semirigid", "check", path)
    assert code == 1 and "witness" in out
    pts = write(tmp_path, "pts.json", [[0, 0], [1, 0], [0, 1]])
    code, out = run(capsys, "semirigid", "plane", pts,
                    "--monogenic", "--symmetry", "--check")
    assert code == 0
    assert "monogenic: true" in out and "semirigid: true" in out
    assert "has_center_of_symmetry: false" in out


def test_freemon_commands(tmp_path, capsys):
    path = write(tmp_path, "ac.json", ["+-"])
    code, out = run(capsys, "freemon", "factor", path)
    assert code == 0 and '[["+"], ["-"]]' in out
    code, _ = run(capsys, "freemon", "irreducible", path)
    assert code == 1
    single = write(tmp_path, "s.json", ["+"])
    assert run(capsys, "freemon", "irreducible", single)[0] == 0
    empty = write(tmp_path, "e.json", [])
    assert run(capsys, "freemon", "factor", empty)[0] == 2


def test_input_errors(tmp_path, capsys):
    assert run(capsys, "zigzag", "dist", "/nonexistent.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "zigzag", "dist", str(bad))[0] == 2
    assert dispatch(["nonsense"]) == 2


def test_reports_byte_identical(tmp_path, capsys):
    path = write(tmp_path, "g.json", CYCLE3)
    outs = set()
    for _ in range(3):
        code, out = run(capsys, "--json", "zigzag", "dist", path)
        assert code == 0
        outs.add(out)
    assert len(outs) == 1
    report = json.loads(outs.pop())
    assert set(report) == {"command", "input_digest", "result"}


def test_json_round_trip_through_cli(tmp_path, capsys):
    path = write(tmp_path, "g.json", CHAIN2)
    _, out = run(capsys, "--json", "zigzag", "dist", path)
    matrix = json.loads(out)["result"]["matrix"]
    # re-serialize and re-parse: identity
    assert json.loads(json.dumps(matrix)) == matrix
    assert matrix["matrix"][0][1] == ["+"]
