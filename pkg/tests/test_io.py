"""Tests for the game file format and JSON result documents."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkk import GameParseError, Mode, solve
from gkk.gamegen import GenSpec, generate, generate_simple
from gkk.io import (
    dumps,
    loads,
    parse,
    record_from_doc,
    record_to_doc,
    result_from_doc,
    result_to_doc,
    serialize,
    trace_doc,
    trace_doc_load,
)

EXAMPLE_A_TEXT = """\
# canonical 2-vertex instance
game 2
vertex 0 MIN
vertex 1 MAX
edge 0 1 -1
edge 1 0 2
"""


class TestParse:
    def test_example_a(self):
        g = parse(EXAMPLE_A_TEXT)
        assert g.n == 2
        assert [(e.src, e.dst, e.weight) for e in g.edges] == [(0, 1, -1), (1, 0, 2)]

    def test_round_trip_is_identity_on_canonical_text(self):
        canonical = serialize(parse(EXAMPLE_A_TEXT))
        assert serialize(parse(canonical)) == canonical

    def test_duplicate_vertex_rejected(self):
        text = "game 1\nvertex 0 MIN\nvertex 0 MAX\nedge 0 0 -1\n"
        with pytest.raises(GameParseError) as err:
            parse(text)
        assert err.value.line == 3

    def test_missing_header_rejected(self):
        with pytest.raises(GameParseError):
            parse("vertex 0 MIN\nedge 0 0 -1\n")

    def test_unknown_directive_rejected(self):
        with pytest.raises(GameParseError):
            parse("game 1\nvertex 0 MIN\nnode 0 0 -1\n")

    def test_bad_integer_reports_line(self):
        with pytest.raises(GameParseError) as err:
            parse("game 1\nvertex 0 MIN\nedge 0 0 x\n")
        assert err.value.line == 3

    def test_undeclared_vertex_rejected(self):
        with pytest.raises(GameParseError):
            parse("game 2\nvertex 0 MIN\nedge 0 0 -1\n")

    def test_validation_errors_propagate(self):
        # vertex 1 is declared but has no outgoing edge
        text = "game 2\nvertex 0 MIN\nvertex 1 MAX\nedge 0 1 1\n"
        from gkk import SinkVertexError

        with pytest.raises(SinkVertexError):
            parse(text)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10**9))
    def test_round_trip_random_games(self, seed):
        g = generate(GenSpec(n=6, m=15, max_abs_weight=9, seed=seed))
        assert serialize(parse(serialize(g))) == serialize(g)


class TestResultDoc:
    def test_example_a_doc_fields(self):
        result = solve(parse(EXAMPLE_A_TEXT))
        doc = result_to_doc(result)
        assert doc["run"]["iterations"] == 1
        assert doc["run"]["mode"] == "SIMPLE"
        assert doc["run"]["E_plus"] == 0
        assert doc["run"]["E_minus"] == 1
        assert doc["run"]["bound_thm3"] == 2 + 0 + 1 + 1
        assert doc["run"]["bound_nN"] == 2 * 2 + 1
        v0, v1 = doc["vertices"]
        assert v0 == {
            "id": 0,
            "en_plus": "inf",
            "en_minus": -1,
            "mp_sign": "pos",
            "potential": 0,
        }
        assert v1["en_plus"] == "inf" and v1["en_minus"] == 0

    def test_round_trip_with_trace(self):
        g = generate_simple(GenSpec(n=7, m=18, max_abs_weight=4, seed=9))
        result = solve(g, want_trace=True)
        doc = loads(dumps(result_to_doc(result, include_trace=True)))
        rebuilt = result_from_doc(doc)
        assert rebuilt == result

    def test_general_mode_marks_duals_unsupported(self):
        result = solve(parse(EXAMPLE_A_TEXT), mode=Mode.GENERAL)
        doc = result_to_doc(result)
        assert doc["run"]["E_minus"] is None
        assert doc["run"]["bound_thm3"] is None
        assert all(v["en_minus"] is None for v in doc["vertices"])
        assert result_from_doc(loads(dumps(doc))) == result

    def test_infinity_sentinels_are_exact_strings(self):
        result = solve(parse(EXAMPLE_A_TEXT))
        text = dumps(result_to_doc(result))
        assert '"inf"' in text and '"-inf"' not in text

    def test_record_round_trip(self):
        g = generate_simple(GenSpec(n=6, m=14, max_abs_weight=3, seed=2))
        result = solve(g, want_trace=True)
        for rec in result.trace:
            assert record_from_doc(loads(dumps(record_to_doc(rec)))) == rec

    def test_trace_doc_round_trip(self):
        g = generate_simple(GenSpec(n=5, m=12, max_abs_weight=3, seed=4))
        result = solve(g, want_trace=True)
        doc = loads(dumps(trace_doc(g, result)))
        game2, result2 = trace_doc_load(doc)
        assert serialize(game2) == serialize(g)
        assert result2 == result
