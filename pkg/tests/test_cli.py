import json
from fractions import Fraction

import pytest

from knets.cli import main, parse_proj
from knets.errors import FormatError
from knets.jsonio import net_to_json, dumps
from knets.latin import NONGROUP_5, cyclic_table, klein_table
from knets.plane import ORDER3_PAIR, ORDER4_TRIPLE


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(path, obj):
    path.write_text(json.dumps(obj))
    return path


def test_family_and_verify_hesse(tmp_path, capsys):
    f = tmp_path / "h.json"
    code, _, err = run(capsys, "family", "hesse", "-o", f)
    assert code == 0 and "12 lines" in err
    code, out, _ = run(capsys, "verify", f)
    assert code == 0
    assert "orthogonal pair, d=3, k=4" in out


def test_family_to_stdout_is_net_json(capsys):
    code, out, _ = run(capsys, "family", "cubic", "--s", "1/2", "--t", "1/3")
    doc = json.loads(out)
    assert code == 0 and sum(len(c["lines"]) for c in doc["classes"]) == 9


def test_verify_mutated_and_garbage(tmp_path, capsys):
    f = tmp_path / "h.json"
    run(capsys, "family", "hesse", "-o", f)
    doc = json.loads(f.read_text())
    doc["points"] = doc["points"][:-1]
    code, out, _ = run(capsys, "verify", write(tmp_path / "m.json", doc))
    assert code == 1 and "FAILED" in out and "witnesses" in out
    bad = tmp_path / "g.json"
    bad.write_text("not json at all")
    assert run(capsys, "verify", bad)[0] == 2
    assert run(capsys, "verify", tmp_path / "missing.json")[0] == 2


def test_family_degenerate(capsys):
    code, _, err = run(capsys, "family", "cubic", "--s", "1:1", "--t", "1:1")
    assert code == 1 and "DegenerateParameters" in err


def test_quintic_nongroup_auto_sample(tmp_path, capsys):
    f = tmp_path / "q.json"
    code, _, err = run(capsys, "family", "quintic-nongroup", "--auto-sample", "--verify", "-o", f)
    assert code == 0
    doc = json.loads(f.read_text())
    assert sum(len(c["lines"]) for c in doc["classes"]) == 15
    assert doc["meta"]["group"] is None
    code, out, _ = run(capsys, "verify", f)
    assert code == 0 and "not isotopic to a group table" in out


def test_latin_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "latin", "classify", "-d", 5)
    assert code == 0 and "2 isotopy classes" in out
    code, out, _ = run(capsys, "--json", "latin", "classify", "-d", 4)
    assert json.loads(out)["classes"] == 2
    f = write(tmp_path / "ng.json", NONGROUP_5.to_json())
    code, out, _ = run(capsys, "latin", "group-test", f)
    assert code == 1 and "not a group" in out
    g = write(tmp_path / "z5.json", cyclic_table(5).to_json())
    code, out, _ = run(capsys, "latin", "group-test", g)
    assert code == 0 and "Z/5Z" in out
    pair = write(tmp_path / "pair.json", [M.to_json() for M in ORDER3_PAIR])
    assert run(capsys, "latin", "check-orthogonal", pair)[0] == 0
    assert run(capsys, "latin", "check-orthogonal", g, g)[0] == 1


def test_plane_command(tmp_path, capsys):
    files = [write(tmp_path / f"m{i}.json", M.to_json()) for i, M in enumerate(ORDER4_TRIPLE)]
    code, out, _ = run(capsys, "plane", *files)
    assert code == 0 and "21 points, 21 lines" in out
    code, _, err = run(capsys, "plane", files[0])
    assert code == 1 and "NotComplete" in err


def test_persp_pencil_discover(tmp_path, capsys):
    f = tmp_path / "h.json"
    run(capsys, "family", "hesse", "-o", f)
    doc = json.loads(f.read_text())
    A = write(tmp_path / "a.json", {"field": doc["field"], "lines": doc["classes"][0]["lines"]})
    B = write(tmp_path / "b.json", {"field": doc["field"], "lines": doc["classes"][1]["lines"]})
    code, out, _ = run(capsys, "--json", "persp", A, B)
    assert code == 0 and json.loads(out)["count"] == 6
    code, out, _ = run(capsys, "pencil", f)
    assert code == 0 and "rank 2" in out
    code, out, _ = run(capsys, "discover", f, "-d", 3)
    assert code == 0 and "maximal k = 4" in out


def test_render_command(tmp_path, capsys):
    f = tmp_path / "c.json"
    run(capsys, "family", "conic", "-o", f)
    svg = tmp_path / "c.svg"
    code, out, _ = run(capsys, "--json", "render", f, "-o", svg)
    assert code == 0 and json.loads(out) == {"output": str(svg), "lines": 6, "points": 4}
    first = svg.read_bytes()
    run(capsys, "render", f, "-o", svg)
    assert svg.read_bytes() == first
    h = tmp_path / "h.json"
    run(capsys, "family", "hesse", "-o", h)
    code, _, err = run(capsys, "render", h, "-o", tmp_path / "h.svg")
    assert code == 1 and "NonRealConfiguration" in err


def test_sample_params(capsys):
    code, out, _ = run(capsys, "--json", "sample-params", "nongroup5", "--bound", 5)
    doc = json.loads(out)
    assert code == 0 and doc["field"]["poly"] == ["0", "1"]


def test_field_override(tmp_path, capsys):
    f = tmp_path / "c.json"
    run(capsys, "family", "conic", "-o", f)
    assert run(capsys, "verify", f, "--field", "cyclotomic:3")[0] == 0
    assert run(capsys, "verify", f, "--field", "bogus")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "family", "nope")[0] == 2
    assert run(capsys, "family", "cubic")[0] == 2  # missing --s
    assert parse_proj("1/2", 2) == [Fraction(1, 2), 1]
    assert parse_proj("-3:4", 2) == [-3, 4]
    with pytest.raises(FormatError):
        parse_proj("1:2:3", 2)


@pytest.mark.parametrize("family,args", [
    ("conic", []),
    ("cubic", ["--s", "2:5", "--t", "-3:4"]),
    ("quartic-cyclic", ["--s", "1:2", "--t", "1:3", "--u", "2:5"]),
    ("quartic-klein", ["--s", "1:2", "--t", "1:3", "--u", "2:5"]),
    ("fermat", ["-d", "4"]),
])
def test_round_trip_family_verify(tmp_path, capsys, family, args):
    f = tmp_path / "n.json"
    assert run(capsys, "family", family, *args, "-o", f)[0] == 0
    assert run(capsys, "verify", f)[0] == 0
