import cmath
import json
import math

import pytest

from mobsym.cli import main


def write(tmp_path, points, name="cfg.json"):
    def enc(z):
        return "inf" if z == "inf" else [complex(z).real, complex(z).imag]
    path = tmp_path / name
    path.write_text(json.dumps({"points": [enc(z) for z in points]}))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_stab_roots_of_unity(tmp_path, capsys):
    f = write(tmp_path, [cmath.exp(2j * math.pi * k / 5) for k in range(5)])
    code, out, _ = run(capsys, ["stab", f])
    data = json.loads(out)
    assert code == 0
    assert data["order"] == 10 and data["type"] == "Dihedral(5)"
    assert len(data["elements"]) == 10
    assert sorted(e["order"] for e in data["elements"]).count(2) == 5
    assert 1 <= len(data["generators"]) <= 2


def test_duplicate_points_exit_2(tmp_path, capsys):
    f = write(tmp_path, [0, 1, 2, 1 + 1e-13, 5])
    code, _, err = run(capsys, ["stab", f])
    assert code == 2
    assert json.loads(err)["indices"] == [[1, 3]]


def test_malformed_input(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"points": [[0, 1], "nope"]}')
    assert run(capsys, ["stab", str(path)])[0] == 2
    path.write_text("not json")
    code, _, err = run(capsys, ["stab", str(path)])
    assert code == 2 and json.loads(err)["error"] == "InputError"


def test_trivial_and_infinite(tmp_path, capsys):
    assert run(capsys, ["multvec", write(tmp_path, [0, 1, "inf", 2.3 + 0.7j, -5])])[0] == 5
    assert run(capsys, ["stab", write(tmp_path, [0, "inf"])])[0] == 3


def test_multvec_octahedral_faces(tmp_path, capsys):
    f = write(tmp_path, [0, "inf", 1, -1, 1j, -1j])
    code, out, _ = run(capsys, ["multvec", f])
    data = json.loads(out)
    assert code == 0
    assert data["label"] == "F+0B" and data["vector"] == [0, 0, 1, 0, 0]
    assert data["cross_check"] is True


def test_multvec_dihedral_with_poles(tmp_path, capsys):
    f = write(tmp_path, [cmath.exp(2j * math.pi * k / 5) for k in range(5)] + [0, "inf"])
    data = json.loads(run(capsys, ["multvec", f])[1])
    assert data["label"] == "A+2+0C" and data["vector"] == [1, 1, 0, 0]


def test_multvec_klein_alternates(tmp_path, capsys):
    f = write(tmp_path, [1, -1, 2, -2, 0.5, -0.5])
    data = json.loads(run(capsys, ["multvec", f])[1])
    assert data["type"] == "Dihedral(2)"
    assert data["label"] == "2+1C" and data["vector"] == [1, 0, 1, 1]
    assert data["alternates"] == [{"label": "A+1C", "vector": [1, 1, 0, 1]}]


def test_orbit_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, ["orbit", "--type", "Icosahedral", "--label", "F+mB", "--m", "0"])
    assert code == 0 and len(json.loads(out)["points"]) == 12
    code, out, _ = run(capsys, ["orbit", "--type", "Dihedral(5)", "--label", "A+2+mC", "--m", "0"])
    assert code == 0 and len(json.loads(out)["points"]) == 7
    assert run(capsys, ["orbit", "--type", "Tetrahedral", "--label", "F+mB", "--m", "0"])[0] == 7
    assert run(capsys, ["orbit", "--type", "Icosahedral", "--label", "F"])[0] == 7
    assert run(capsys, ["orbit", "--type", "Nonsense", "--label", "F"])[0] == 7


def test_orbit_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, ["orbit", "--type", "Z3", "--label", "1+mC", "--m", "2"])
    assert code == 0
    path = tmp_path / "orbit.json"
    path.write_text(out)
    data = json.loads(run(capsys, ["stab", str(path)])[1])
    assert data["type"] == "Cyclic(3)"


def test_orbit_seed_on_exceptional_orbit(capsys):
    code, _, err = run(capsys, ["orbit", "--type", "Octahedral", "--label", "F+mB", "--m", "1", "--seed", "0,0"])
    assert code == 7
    assert json.loads(err)["error"] == "SeedOnExceptionalOrbit"


def test_output_is_deterministic(tmp_path, capsys):
    f = write(tmp_path, [0, "inf", 1, -1, 1j, -1j])
    outs = {run(capsys, ["stab", f])[1] for _ in range(3)}
    assert len(outs) == 1


def test_verify_n4(capsys):
    code, out, err = run(capsys, ["verify", "n4"])
    assert code == 0
    lines = [json.loads(l) for l in out.splitlines()]
    assert lines and all(l["ok"] for l in lines)
    assert "checks passed" in err


def test_svg_written(tmp_path, capsys):
    f = write(tmp_path, [0, "inf", 1, -1, 1j, -1j])
    svg = tmp_path / "out.svg"
    assert run(capsys, ["--svg", str(svg), "stab", f])[0] == 0
    assert svg.read_text().startswith("<svg")


def test_bad_subcommand(capsys):
    assert run(capsys, ["frobnicate"])[0] == 2
