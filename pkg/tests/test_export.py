from __future__ import annotations

import json

import pytest

from markoff_kfib.branches import BranchSpec, classify
from markoff_kfib.export import export_dot, export_json, to_jsonable, tree_from_json, triple_to_json
from markoff_kfib.markoff import MOVE_DEDUP, Triple, tree_enumerate
from markoff_kfib.oracle import SearchReport, verify_theorem11
from drawings import DRAWINGS, MISPRINTED


def test_triple_as_strings():
    assert triple_to_json(Triple(6, 23184, 416020)) == ["6", "23184", "416020"]
    assert export_json(Triple(6, 23184, 416020)) == '["6","23184","416020"]\n'


def test_big_integers_survive():
    big = Triple(2584, 1116282, 8653417920)
    text = export_json({"t": big, "n": 2**80})
    assert json.loads(text) == {"n": str(2**80), "t": ["2584", "1116282", "8653417920"]}


def test_empty_report_has_empty_mismatches():
    text = export_json(SearchReport("theorem11", 3, None, 100, [], [], []))
    data = json.loads(text)
    assert data["mismatches"] == [] and data["ok"] is True
    assert text == export_json(SearchReport("theorem11", 3, None, 100, [], [], []))


def test_report_keys_sorted_and_compact():
    text = export_json(verify_theorem11(4, 30, 10**4, workers=1))
    assert ", " not in text and ": " not in text and text.endswith("\n")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["k"] == "4" and data["triples"][0]["triple"] == ["6", "17", "305"]


def test_tree_json_keeps_structure_numbers():
    nodes = tree_enumerate((1, 1, 6), max_depth=1)
    data = json.loads(export_json(nodes))
    assert data["nodes"][1] == {"depth": 1, "move": MOVE_DEDUP, "parent": 0, "triple": ["1", "6", "17"]}


@pytest.mark.parametrize("name", sorted(DRAWINGS))
def test_tree_round_trip(name):
    drawing = DRAWINGS[name]
    nodes = tree_enumerate(drawing.root, max_depth=3)
    back = tree_from_json(export_json(nodes))
    assert back == nodes
    got = {n.triple for n in back}
    assert {MISPRINTED.get(t, t) for t in drawing.triples} <= got


def test_fraction_and_classification():
    data = json.loads(export_json(classify(1, 2, 7)))
    assert data["triple"][0] == "7/3" and data["integer_entries"] is False


def test_unserializable_rejected():
    with pytest.raises(TypeError):
        to_jsonable(object())


def _bold_labels(dot: str) -> set[str]:
    return {line.split('label="')[1].split('"')[0] for line in dot.splitlines() if "style=bold" in line}


def test_dot_bold_principal_chain():
    dot = export_dot(tree_enumerate((4, 6, 72), max_depth=3), BranchSpec(4, 1, 2))
    assert dot.startswith("digraph mtree {") and dot.endswith("}\n")
    assert _bold_labels(dot) == {"(6,72,1292)", "(6,1292,23184)", "(6,23184,416020)"}
    assert '-> n1 [label="v1"]' in dot or '-> n2 [label="v1"]' in dot

    dot = export_dot(tree_enumerate((1, 6, 21), max_depth=3), BranchSpec(1, 3, 2))
    assert _bold_labels(dot) == {"(6,21,377)", "(6,377,6765)", "(6,6765,121393)"}


def test_dot_without_spec_and_depth_zero():
    dot = export_dot(tree_enumerate((4, 6, 72), max_depth=0))
    assert "style=bold" not in dot and "->" not in dot
    assert dot.count("label=") == 1
