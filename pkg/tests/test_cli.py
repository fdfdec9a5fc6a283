import json
import math

import pytest

from dualsurf import cli

PLANE = {"name": "plane", "g": "0", "f": "1", "epsilon": 1, "punctures": []}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _obj_counts(text):
    verts = [l for l in text.splitlines() if l.startswith("v ")]
    faces = [l for l in text.splitlines() if l.startswith("f ")]
    return verts, faces


def test_catalog_lists_all_entries(capsys):
    code, out, _ = run(capsys, "catalog", "--json")
    assert code == 0
    rows = json.loads(out)
    assert [r["name"] for r in rows][:3] == ["euclidean_catenoid", "helicoid_E3", "enneper"]
    assert len(rows) == 13


def test_plane_descriptor_two_by_two(tmp_path, capsys):
    desc = tmp_path / "plane.json"
    desc.write_text(json.dumps(PLANE))
    out = tmp_path / "plane.obj"
    code, _, _ = run(capsys, "surface", str(desc), "--grid", "2x2", "--out", str(out))
    assert code == 0
    verts, faces = _obj_counts(out.read_text())
    assert len(verts) == 4 and len(faces) == 2
    assert all(float(l.split()[3]) == 0 for l in verts)
    side = json.loads((tmp_path / "plane.obj.json").read_text())
    assert side["vertices"] == 4 and side["faces"] == 2
    # the input descriptor is left alone
    assert json.loads(desc.read_text()) == PLANE


def test_obj_faces_are_one_based_and_valid(tmp_path, capsys):
    out = tmp_path / "e.obj"
    assert run(capsys, "surface", "enneper", "--grid", "4x3", "--out", str(out))[0] == 0
    verts, faces = _obj_counts(out.read_text())
    idx = [int(k) for f in faces for k in f.split()[1:]]
    assert min(idx) == 1 and max(idx) == len(verts) == 12
    assert len(faces) == 2 * 3 * 2


def test_surface_sidecar_reports_closed_form_residual(tmp_path, capsys):
    out = tmp_path / "y.obj"
    code, _, _ = run(capsys, "surface", "bonnet_minimal_Yt", "--param", "t=0.5", "--grid", "9x9",
                     "--out", str(out))
    assert code == 0
    side = json.loads((tmp_path / "y.obj.json").read_text())
    assert side["closed_form_residual"] < 1e-8


def test_periods_of_bonnet_minimal(capsys):
    code, out, _ = run(capsys, "periods", "bonnet_minimal", "--param", "lam=1", "--loop", "0,0,1")
    assert code == 0
    p = [float(x) for x in out.split()]
    assert p[0] == pytest.approx(0, abs=1e-9)
    assert p[1] == pytest.approx(-2 * math.pi, abs=1e-9)
    assert p[2] == pytest.approx(0, abs=1e-9)


def test_dual_prints_descriptor(capsys):
    code, out, _ = run(capsys, "dual", "enneper")
    assert code == 0
    doc = json.loads(out)
    assert doc["epsilon"] == -1


def test_bjorling_command(tmp_path, capsys):
    out = tmp_path / "b.obj"
    code, _, _ = run(capsys, "bjorling", "spacelike", "--param", "a=0.5", "--grid", "5x5",
                     "--out", str(out))
    assert code == 0
    assert len(_obj_counts(out.read_text())[0]) == 25


def test_transform_signature_mismatch(capsys):
    code, _, err = run(capsys, "transform", "enneper", "--kind", "hyperbolic", "--amount", "0.3",
                       "--grid", "3x3")
    assert code == 2 and "signature" in err


def test_unknown_name_exit_code(capsys):
    code, _, err = run(capsys, "surface", "costa")
    assert code == 2 and err


def test_bad_parameter_exit_code(capsys):
    assert run(capsys, "surface", "rotated_catenoid_Ct", "--param", "t=3")[0] == 2
    assert run(capsys, "surface", "enneper", "--grid", "1x5")[0] == 2


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["verify", "nope"])
    assert info.value.code == 2


def test_verify_output_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "goursat", "--out", str(a))[0] == 0
    assert run(capsys, "verify", "goursat", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_failing_suite_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "bonnet")
    assert code == 1
    doc = json.loads(out)
    assert not doc["passed"]
