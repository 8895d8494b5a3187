import io
import json
import math

import numpy as np
import pytest

from blade_angles.cli import ENV_EPS, cmd_angles, cmd_geodesic, cmd_product, cmd_verify, main
from blade_angles.io import parse_document

TILTED = {"a": [[1, 0, 0, 0], [0, 1, 0, 0]], "b": [[2, 0, 1, 0], [0, 1, 0, 3]]}


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def doc(tmp_path):
    def write(data, name="in.json"):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)

    return write


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv(ENV_EPS, raising=False)


@pytest.mark.parametrize("command", ["angles", "product", "bivector", "geodesic", "hitzer"])
def test_json_reports_parse_and_echo_input(doc, command):
    code, text = run([command, "--input", doc(TILTED), "--json"])
    assert code == 0
    report = json.loads(text)
    assert report["command"] == command
    assert report["input"]["a"] == [[float(x) for x in row] for row in TILTED["a"]]
    # echoed input is itself a valid document
    again, text2 = run([command, "--input", doc(report["input"], "echo.json"), "--json"])
    assert again == 0
    assert json.loads(text2)["input"] == report["input"]


def test_angles_values(doc):
    _, text = run(["angles", "--input", doc(TILTED), "--json"])
    report = json.loads(text)
    np.testing.assert_allclose(report["principal"]["thetas"], [math.atan(0.5), math.atan(3.0)], atol=1e-15)
    assert report["angles"]["proj_factor_vw"] == pytest.approx(2 / math.sqrt(50), abs=1e-15)


def test_hitzer_agrees_with_svd(doc):
    _, text = run(["hitzer", "--input", doc(TILTED), "--json"])
    report = json.loads(text)
    assert report["max_difference"] < 1e-12
    assert report["planes"] == [[["e13", 1.0]], [["e24", 1.0]]]


def test_human_output_is_deterministic(doc):
    path = doc(TILTED)
    first = run(["product", "--input", path])
    assert first[0] == 0 and first[1]
    assert run(["product", "--input", path]) == first


def test_csv_input_matches_json(tmp_path, doc):
    (tmp_path / "a.csv").write_text("# plane\n1,0,0,0\n0,1,0,0\n")
    (tmp_path / "b.csv").write_text("2,0,1,0\n0,1,0,3\n")
    code, text = run(["angles", "--csv", str(tmp_path / "a.csv"), str(tmp_path / "b.csv"), "--json"])
    assert code == 0
    _, ref = run(["angles", "--input", doc(TILTED), "--json"])
    assert json.loads(text)["principal"] == json.loads(ref)["principal"]


@pytest.mark.parametrize(
    "data",
    [
        "{not json",
        {"a": [[1, 0]]},
        {"a": [[1, 0]], "b": [[1, 0, 0]]},
        {"a": [[1, "x"]], "b": [[1, 0]]},
        {"a": [[1, 0]], "b": [[1, 0]], "extra": 1},
        {"dim": 3, "a": [[1, 0]], "b": [[1, 0]]},
    ],
)
def test_malformed_documents_exit_2(doc, data):
    assert run(["angles", "--input", doc(data)])[0] == 2


def test_usage_errors_exit_2(doc, tmp_path):
    assert run(["angles"])[0] == 2
    assert run(["angles", "--input", str(tmp_path / "missing.json")])[0] == 2
    assert run(["nonsense"])[0] == 2
    assert run(["geodesic", "--input", doc(TILTED), "--steps", "1"])[0] == 2
    assert run(["verify", "--trials", "0"])[0] == 2
    assert run(["verify", "--nmax", "0"])[0] == 2


def test_rank_deficient_input_exits_3(doc):
    data = {"a": [[1, 0, 0], [2, 0, 0]], "b": [[0, 1, 0]]}
    assert run(["angles", "--input", doc(data)])[0] == 3
    assert run(["angles", "--input", doc({"a": [[1, 0]], "b": [[0, 1]], "b_scale": 0})])[0] == 3


def test_tolerance_precedence(doc, monkeypatch):
    data = dict(TILTED, options={"eps": 1e-9})
    path = doc(data)
    monkeypatch.setenv(ENV_EPS, "1e-7")
    _, text = run(["verify", "--trials", "1", "--json"])
    assert json.loads(text)["eps"] == 1e-7
    _, text = run(["verify", "--trials", "1", "--json", "--eps", "1e-6"])
    assert json.loads(text)["eps"] == 1e-6
    monkeypatch.setenv(ENV_EPS, "tiny")
    assert run(["angles", "--input", path])[0] == 2
    assert run(["verify", "--trials", "1"])[0] == 2
    monkeypatch.setenv(ENV_EPS, "2.0")
    assert run(["angles", "--input", path])[0] == 2


def test_verify_is_reproducible_and_passes():
    argv = ["verify", "--seed", "7", "--trials", "6", "--nmax", "5"]
    code, text = run(argv)
    assert code == 0
    assert text.splitlines()[-1] == "all identities passed"
    assert run(argv) == (code, text)
    _, js = run(argv + ["--json"])
    report = json.loads(js)
    assert report["ok"] is True
    assert all(s["passed"] == s["total"] for s in report["identities"].values())


def test_injected_fault_fails_with_reproduction_line():
    code, text = run(["verify", "--seed", "3", "--trials", "2", "--nmax", "4", "--inject-fault"])
    assert code == 1
    assert "reproduce:" in text
    assert text.splitlines()[-1] == "identity failures detected"


# direct calls on parsed documents


def test_cmd_angles_line_in_plane():
    rep = cmd_angles(parse_document({"a": [[1, 1, 0]], "b": [[1, 0, 0], [0, 1, 0]]}))
    assert rep["angles"]["asym_vw"] == pytest.approx(0.0, abs=1e-15)
    assert rep["angles"]["asym_wv"] == math.pi / 2
    assert rep["degrees"]["asym_wv"] == pytest.approx(90.0)


def test_cmd_angles_tilted_planes():
    rep = cmd_angles(parse_document(TILTED))
    assert rep["angles"]["asym_vw"] == pytest.approx(math.acos(2 / (5 * math.sqrt(2))), abs=1e-15)
    assert rep["angles"]["comp"] == pytest.approx(math.acos(3 / (5 * math.sqrt(2))), abs=1e-15)


def test_cmd_product_of_a_blade_with_itself():
    doc = parse_document({"a": [[1, 2, 0], [0, 1, 1]], "b": [[1, 2, 0], [0, 1, 1]]})
    rep = cmd_product(doc)
    a, _ = doc.blades()
    assert rep["products"]["rev_a_b"] == [["1", pytest.approx(a.norm**2)]]
    assert [c for _, c in rep["plucker"]["coordinates"]] == [pytest.approx(1.0)]


def test_cmd_product_opposed_areas():
    rep = cmd_product(parse_document({"a": [[-1, 0, 0], [0, 3, 4]], "b": [[1, 0, 0], [0, 1, 0]]}))
    # ~A B = -3 + 4 e23, that is -3 - 4 I with the unit plane I = e32
    assert rep["products"]["rev_a_b"] == [["1", pytest.approx(-3.0)], ["e23", pytest.approx(4.0)]]
    assert rep["principal"]["eps_ab"] == -1
    assert rep["plucker"]["sum_of_squares"] == pytest.approx(1.0)


def test_cmd_geodesic_between_three_flats():
    doc = parse_document({"a": np.eye(5)[:3].tolist(), "b": np.eye(5)[[0, 3, 4]].tolist()})
    rep = cmd_geodesic(doc, 3)
    assert [s["t"] for s in rep["samples"]] == [0.0, 0.5, 1.0]
    np.testing.assert_allclose(rep["samples"][1]["angles_to_start"], [0.0, math.pi / 4, math.pi / 4], atol=1e-15)
    np.testing.assert_allclose(rep["samples"][2]["angles_to_start"], [0.0, math.pi / 2, math.pi / 2], atol=1e-15)


def test_cmd_geodesic_endpoints_and_constant_path():
    rep = cmd_geodesic(parse_document(TILTED), 2)
    assert len(rep["samples"]) == 2
    same = cmd_geodesic(parse_document({"a": TILTED["a"], "b": TILTED["a"]}), 4)
    frames = [np.array(s["frame"]) for s in same["samples"]]
    for f in frames:
        np.testing.assert_allclose(f, frames[0], atol=1e-15)


def test_cmd_verify_returns_summary_and_code():
    summary, code = cmd_verify(1, 3, 4)
    assert code == 0 and summary["ok"]
    _, bad = cmd_verify(3, 2, 4, fault=True)
    assert bad == 1
