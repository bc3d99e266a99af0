import json

import pytest

from rgc import InvalidGraph, format_graph, graph_from_json, graph_to_json, parse_graph, tadpole
from rgc import complex as cx
from rgc.ribbon import RibbonGraph


def test_parse_tadpole():
    assert parse_graph("rg E=1; sigma=(0 1); iota=(0 1)") == tadpole()


@pytest.mark.parametrize(
    "text, code",
    [
        ("rg E=1; sigma=(0 1); iota=(0)(1)", "iota-fixed-point"),
        ("rg E=2; sigma=(0 1)(2 3); iota=(0 1)(2 3)", "disconnected"),
        ("rg E=2; sigma=(0 1 2); iota=(0 1)(2 3)", "not-permutation"),
        ("rg E=2; sigma=(0 1 2 3); iota=(0 1 2)(3)", "iota-not-involution"),
        ("rg E=two; sigma=(0 1); iota=(0 1)", "syntax"),
        ("graph with no structure", "syntax"),
        ('{"E": 1, "sigma": [[0, 1]]}', "syntax"),
        ("{not json", "syntax"),
        ("rg E=0; sigma=(); iota=()", "size"),
    ],
)
def test_parse_errors(text, code):
    with pytest.raises(InvalidGraph) as exc:
        parse_graph(text)
    assert exc.value.code == code


def test_text_round_trip():
    for E in range(1, 5):
        for V in range(1, E + 2):
            for code in cx.iso_classes(V, E):
                G = RibbonGraph.from_code(code)
                text = format_graph(G)
                assert parse_graph(text) == G
                assert format_graph(parse_graph(text)) == text


def test_json_round_trip_and_flat_sigma():
    G = parse_graph("rg E=2; sigma=(0 1 2 3); iota=(0 2)(1 3)")
    obj = graph_to_json(G)
    assert obj == {"E": 2, "sigma": [[0, 1, 2, 3]], "iota": [[0, 2], [1, 3]]}
    assert parse_graph(json.dumps(obj)) == G
    assert graph_from_json({"E": 2, "sigma": [1, 2, 3, 0], "iota": [[0, 2], [1, 3]]}) == G


def test_str_uses_text_form():
    assert str(tadpole()) == "rg E=1; sigma=(0 1); iota=(0 1)"
