# tests/test_exports.py
import json

from lsl.exports import atomic_write_text, to_csv, to_json, write_csv, write_json


def test_to_json_is_sorted():
    text = to_json({"b": 1, "a": "∅"})
    assert text == '{\n  "a": "∅",\n  "b": 1\n}\n'


def test_to_csv():
    assert to_csv(["x", "y"], [[1, "{1,2}"], [2, ""]]) == 'x,y\n1,"{1,2}"\n2,\n'


def test_atomic_write_creates_parents(tmp_path):
    path = tmp_path / "deep" / "dir" / "file.txt"
    atomic_write_text(path, "hello")
    assert path.read_text(encoding="utf-8") == "hello"
    assert sorted(p.name for p in path.parent.iterdir()) == ["file.txt"]


def test_atomic_write_replaces(tmp_path):
    path = write_json(tmp_path / "r.json", {"v": 1})
    write_json(path, {"v": 2})
    assert json.loads(path.read_text(encoding="utf-8")) == {"v": 2}
    write_csv(tmp_path / "t.csv", ["a"], [[1]])
    assert (tmp_path / "t.csv").read_text(encoding="utf-8") == "a\n1\n"
    assert not list(tmp_path.glob(".*.tmp"))
