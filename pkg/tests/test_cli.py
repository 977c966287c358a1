import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from quadric_weierstrass.cli import main
from quadric_weierstrass.documents import dumps, loads

ROOT = Path(__file__).resolve().parents[1]
WORKED = str(ROOT / "data" / "worked_example.json")
SVG = "{http://www.w3.org/2000/svg}"

INSTANCES = {
    "worked": ["--input", WORKED],
    "euler32": ["--family", "euler", "--M", "3", "--N", "2"],
    "klm235": ["--family", "klm", "--k", "2", "--l", "3", "--m", "5"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", INSTANCES)
def test_transform_is_byte_identical_across_runs(capsys, name):
    _, first, _ = run(capsys, "transform", *INSTANCES[name])
    code, second, _ = run(capsys, "transform", *INSTANCES[name])
    assert code == 0 and first == second
    doc = json.loads(first)
    assert loads(dumps(doc)) == doc
    assert dumps(doc) == first


def test_separate_processes_agree():
    cmd = [sys.executable, "-m", "quadric_weierstrass", "transform", *INSTANCES["klm235"]]
    a, b = (subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2))
    assert a == b


def test_text_report(capsys):
    code, out, _ = run(capsys, "family", "--family", "euler", "--M", "3", "--N", "2", "--format", "text")
    assert code == 0
    assert out.splitlines()[-1] == "final: y^2 = x(x-3)(x-1)"


def test_trace_document_contents(capsys):
    _, out, _ = run(capsys, "transform", *INSTANCES["worked"])
    doc = json.loads(out)
    assert doc["quadric_stage"]["cubic"]["table"] == [-2, 3, 6, 4, -16, 4, -2, -2, 12, -8]
    step7 = next(s for s in doc["steps"] if s["name"] == "step7")
    assert step7["cubic"]["table"] == [-1, 0, -5988, 0, 0, -9222672, 0, 1, 0, -2682825616]


def test_map_point_both_directions(capsys):
    klm = INSTANCES["klm235"]
    code, out, _ = run(capsys, "map-point", *klm, "--point", "1,1,-1,-1", "--format", "text")
    assert code == 0 and out == "1,1,-1,-1 -> 0,0,1\n"
    code, out, _ = run(capsys, "map-point", *klm, "--point", "0,1,0", "--direction", "backward")
    assert code == 0 and json.loads(out)["output"] == ["1", "1", "1", "1"]


def test_exit_codes(capsys, tmp_path):
    klm = INSTANCES["klm235"]
    # pipeline error: point off the intersection, reported as JSON on stdout
    code, out, _ = run(capsys, "map-point", *klm, "--point", "1,2,3,4")
    assert code == 3 and json.loads(out)["error"]["name"] == "PointNotOnIntersection"
    code, out, _ = run(capsys, "map-point", *klm, "--point", "1,1,1", "--direction", "backward")
    assert code == 3 and json.loads(out)["error"]["name"] == "PointNotOnCurve"
    # malformed input
    code, _, err = run(capsys, "transform", "--family", "euler", "--M", "2", "--N", "2")
    assert code == 2 and err.startswith("error:")
    bad = tmp_path / "asym.json"
    bad.write_text(json.dumps({"quadrics": [[[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                                            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]],
                               "point": [1, 0, 0, 0]}))
    assert run(capsys, "transform", "--input", str(bad))[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert run(capsys, "transform", "--input", str(tmp_path / "junk.json"))[0] == 2
    # valid syntax, impossible combination
    assert run(capsys, "plot", *INSTANCES["euler32"], "--stage", "3", "--out", str(tmp_path))[0] == 4
    assert run(capsys, "transform", *INSTANCES["euler32"], "--format", "svg")[0] == 4
    assert run(capsys, "map-point", *klm)[0] == 4


def _svg(path: Path):
    return ET.parse(path).getroot()


def test_plot_marks_the_distinguished_point(capsys, tmp_path):
    code, out, _ = run(capsys, "plot", "--input", WORKED, "--stage", "0", "--out", str(tmp_path),
                       "--samples", "200")
    assert code == 0
    files = json.loads(out)["files"]
    for view in ("affine", "projective"):
        root = _svg(Path(files[view]))
        assert root.tag == f"{SVG}svg"
        marked = [c for c in root.iter(f"{SVG}circle") if c.get("class") == "marked"]
        assert [c.get("data-point") for c in marked] == ["2,2,1"]
        assert any(p.get("d") for p in root.iter(f"{SVG}path"))


def test_plot_is_deterministic(capsys, tmp_path):
    args = ["plot", *INSTANCES["klm235"], "--stage", "7", "--samples", "120"]
    run(capsys, *args, "--out", str(tmp_path / "a"))
    run(capsys, *args, "--out", str(tmp_path / "b"))
    for name in ("stage7_affine.svg", "stage7_projective.svg"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_plot_window_without_curve_is_still_valid(capsys, tmp_path):
    code, _, _ = run(capsys, "plot", *INSTANCES["klm235"], "--stage", "8", "--window", "1000,1001,5,6",
                     "--samples", "50", "--out", str(tmp_path))
    assert code == 0
    root = _svg(tmp_path / "stage8_affine.svg")
    assert not [p for p in root.iter(f"{SVG}path") if p.get("class") == "curve" and p.get("d")]


def test_bad_window_is_malformed_input(capsys, tmp_path):
    assert run(capsys, "plot", *INSTANCES["klm235"], "--window", "1,0,0,1", "--out", str(tmp_path))[0] == 2
