from __future__ import annotations

import io
import json

import pytest

from acmpoints.cli import main
from acmpoints.corpus import build_example, data_dir
from acmpoints.points import dump_point_set


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hilbert_text_matches_snapshot(capsys):
    code, out, _ = run(capsys, "hilbert", "example1")
    assert code == 0
    assert out == (
        " 1  3  6  6  ⋯\n"
        " 3  9 18 18  ⋯\n"
        " 6 18 27 27  ⋯\n"
        " 6 18 27 27  ⋯\n"
        " ⋮  ⋮  ⋮  ⋮  ⋱\n\n"
    )


def test_delta_json_and_csv(capsys):
    code, out, _ = run(capsys, "delta", str(data_dir() / "p1p2-11pts.json"), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "delta" and doc["values"][2][2] == 1
    code, out, _ = run(capsys, "delta", "p1p2-11pts", "--format", "csv", "--box", "3,3")
    assert out.splitlines()[0] == "i1,i2,value" and len(out.splitlines()) == 17


def test_example_verify(capsys):
    code, out, _ = run(capsys, "example", "example2", "--verify")
    assert code == 0
    assert " 6 18 27 27  ⋯" in out
    assert "FAIL" not in out and out.count("PASS") >= 5


def test_example_list_and_export(capsys):
    code, out, _ = run(capsys, "example", "--list")
    assert code == 0 and "example4" in out
    code, out, _ = run(capsys, "example", "example4", "--export")
    assert json.loads(out)["dims"] == [2, 2]


def test_acm_two_points_names_star_witness(capsys):
    code, out, _ = run(capsys, "acm", "two-noncollinear", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "NotACM"
    assert doc["evidence"]["star_witness"] == ["P_1xP_1", "P_2xP_2"]


def test_assert_acm_exit_codes(capsys):
    assert run(capsys, "acm", "example1", "--assert-acm")[0] == 1
    assert run(capsys, "acm", "example2", "--assert-acm")[0] == 0
    assert run(capsys, "depth", "example1", "--assert-acm")[0] == 1
    assert run(capsys, "depth", "example1")[0] == 0


def test_depth_is_deterministic(capsys):
    a = run(capsys, "depth", "example1", "--seed", "9", "--format", "json")[1]
    b = run(capsys, "depth", "example1", "--seed", "9", "--format", "json")[1]
    assert a == b and json.loads(a)["depth"] == 1


def test_separators_by_label(capsys):
    code, out, _ = run(capsys, "separators", str(data_dir() / "example4.json"), "--point", "Q_{5,2}", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["points"][0]["degrees"] == [[2, 2]]
    code, out, _ = run(capsys, "separators", "two-noncollinear", "--point", "2")
    assert "P_2xP_2" in out


def test_star_and_sx(capsys):
    code, out, _ = run(capsys, "star", "example3")
    assert "Q_{4,5} and Q_{5,3}" in out
    code, out, _ = run(capsys, "sx", "two-noncollinear")
    assert out.strip().endswith("not a chain")


def test_ferrers_and_embed(capsys, tmp_path):
    code, out, _ = run(capsys, "ferrers", "--lambda", "4,4,3", "--target", "1,2")
    doc = json.loads(out)
    assert code == 0 and doc["dims"] == [1, 2] and len(doc["points"]) == 11
    f = tmp_path / "f.json"
    f.write_text(out)
    assert run(capsys, "acm", str(f), "--assert-acm")[0] == 0
    code, out, _ = run(capsys, "ferrers", "--lambda", "2,1", "--target", "2,1")
    assert json.loads(out)["dims"] == [2, 1]
    code, out, _ = run(capsys, "embed", "example1", "--dims", "1,2,2", "--slots", "2,3")
    e = tmp_path / "e.json"
    e.write_text(out)
    code, out, _ = run(capsys, "depth", str(e), "--format", "json")
    assert json.loads(out)["depth"] == 2


def test_prime_field_flag_and_env(capsys, monkeypatch):
    code, out, _ = run(capsys, "acm", "three-collinear-diagonal", "--field", "32003")
    assert out.startswith("NotACM")  # decided by the Hilbert function alone
    code, out, _ = run(capsys, "acm", "example1", "--field", "32003")
    assert out.startswith("ProbablyNotACM")  # decided by the randomized depth search
    code, out, _ = run(capsys, "acm", "example1", "--field", "32003", "--full", "--format", "json")
    assert json.loads(out)["depth"]["field"] == "GF(32003)"
    monkeypatch.setenv("ACMPOINTS_FIELD", "GF(65521)")
    code, out, _ = run(capsys, "depth", "example1", "--format", "json")
    assert json.loads(out)["field"] == "GF(65521)"
    monkeypatch.setenv("ACMPOINTS_FIELD", "GF(9)")
    with pytest.raises(SystemExit) as e:
        main(["depth", "example1"])
    assert e.value.code == 2


def test_input_errors_exit_2(capsys, tmp_path, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dims": [1, 1], "points": [[[1, 0], [1, 1]], [[1, 0], [0, 0]]]}')
    code, _, err = run(capsys, "hilbert", str(bad))
    assert code == 2 and "point 2" in err
    bad.write_text("{oops")
    assert run(capsys, "hilbert", str(bad))[0] == 2
    bad.write_text('{"dims": [1, 1], "points": [[[1, 0]]]}')
    code, _, err = run(capsys, "hilbert", str(bad))
    assert code == 2 and "point 1" in err
    assert run(capsys, "hilbert", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "separators", "example4", "--point", "Q_{9,9}")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["hilbert", "example1", "--field", "2"])
    assert e.value.code == 2
    monkeypatch.setattr("sys.stdin", io.StringIO('{"dims": [1], "points": [[[1, 2]], [[2, 4]]]}'))
    code, _, err = run(capsys, "hilbert", "-")
    assert code == 2 and "duplicate" in err


def test_round_trip_is_idempotent(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text(dump_point_set(build_example("example3").point_set))
    code, out, _ = run(capsys, "embed", str(path), "--dims", "1,2", "--slots", "1,2")
    once = tmp_path / "once.json"
    once.write_text(out)
    code, out2, _ = run(capsys, "embed", str(once), "--dims", "1,2", "--slots", "1,2")
    assert out == out2
