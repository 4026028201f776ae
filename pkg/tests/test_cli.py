"""Command-line interface: parsing, output formats, exit codes, caching."""

import io
import json

import pytest

from mdgame import canonical_form
from mdgame.cli import (
    ParseError,
    main,
    parse_edge_list,
    parse_family_expression,
    parse_family_term,
    parse_graph_input,
)
from mdgame.families import FamilyKind, FamilySpec, build, path


# ----------------------------------------------------------------------
# input parsing
# ----------------------------------------------------------------------

class TestFamilyParsing:
    def test_terms(self):
        assert parse_family_term("path 5") == FamilySpec(FamilyKind.PATH, 5)
        assert parse_family_term("  biclique 2 3 ") == FamilySpec(
            FamilyKind.BICLIQUE, 2, 3)

    def test_term_round_trip(self):
        for spec in [FamilySpec(FamilyKind.WHEEL, 6),
                     FamilySpec(FamilyKind.BICLIQUE, 3, 4)]:
            again = parse_family_term(str(spec))
            assert again == spec
            assert canonical_form(build(again)) == canonical_form(build(spec))

    def test_expression_sums(self):
        g = parse_family_expression("path 4 + cycle 5")
        assert (g.n, g.edge_count) == (9, 8)
        assert len(g.components()) == 2

    @pytest.mark.parametrize(
        "bad",
        ["", "blob 3", "path", "path x", "path 3 4", "cycle 2", "wheel 2",
         "path 0", "biclique 2"],
    )
    def test_bad_terms(self, bad):
        with pytest.raises(ParseError):
            parse_family_term(bad)


class TestEdgeListParsing:
    def test_basic_with_comments(self):
        text = "# a path on three vertices\n3 2\n\n0 1\n1 2\n"
        g = parse_edge_list(text)
        assert canonical_form(g) == canonical_form(path(3))

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "3\n0 1\n",
            "x y\n",
            "2 1\n0 1\n1 0\n",  # header miscounts the edges
            "2 1\n0 2\n",  # endpoint out of range
            "2 1\n0 1 2\n",
            "2 1\nmoney none\n",
        ],
    )
    def test_bad_edge_lists(self, bad):
        with pytest.raises(ParseError):
            parse_edge_list(bad)

    def test_graph_input_from_file(self, tmp_path):
        f = tmp_path / "g.edges"
        f.write_text("2 1\n0 1\n")
        assert parse_graph_input(str(f)).edge_count == 1

    def test_graph_input_from_stdin(self, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("3 2\n0 1\n1 2\n"))
        assert parse_graph_input("-").n == 3


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

class TestValueCommand:
    def test_text_output(self, capsys):
        assert main(["value", "path 5", "--variant", "classic"]) == 0
        out = capsys.readouterr().out
        assert "value: 1/2" in out
        assert "canonical: {0|1}" in out
        assert "outcome: LeftWins" in out

    def test_json_output(self, capsys):
        assert main(["value", "path 5", "--variant", "mf", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["vertices"] == 5
        assert payload["edges"] == 4
        assert payload["variant"] == "mf"
        assert payload["value"] == "↑*"
        assert payload["kind"] == "ups"
        assert payload["outcome"] == "FirstPlayerWins"
        nodes = payload["dag"]["nodes"]
        root = payload["dag"]["root"]
        assert 0 <= root < len(nodes)
        for node in nodes:
            for side in ("left", "right"):
                assert all(0 <= i < len(nodes) for i in node[side])

    def test_text_and_json_agree(self, capsys):
        main(["value", "cycle 4", "--variant", "classic"])
        text = capsys.readouterr().out
        main(["value", "cycle 4", "--variant", "classic", "--format", "json"])
        payload = json.loads(capsys.readouterr().out)
        assert f"value: {payload['value']}" in text
        assert f"outcome: {payload['outcome']}" in text


class TestAwCommand:
    def test_text_default_variant_is_mf(self, capsys):
        assert main(["aw", "path 9"]) == 0
        assert "atomic weight: 2" in capsys.readouterr().out

    def test_json(self, capsys):
        assert main(["aw", "path 6", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload == {
            "variant": "mf",
            "value": "{0,↑*|0,*}",
            "atomic_weight": 1,
            "is_integer": True,
        }


class TestVerifyCommand:
    def test_single_suite_text(self, capsys):
        code = main(["verify", "--suite", "table-aw", "--max-n", "8"])
        assert code == 0
        assert "[PASS] table-aw" in capsys.readouterr().out

    def test_json_and_report_file(self, capsys, tmp_path):
        report_file = tmp_path / "report.json"
        code = main([
            "verify", "--suite", "winners", "--variant", "classic",
            "--family", "path", "--to", "8", "--format", "json",
            "--report", str(report_file),
        ])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["all_passed"] is True
        assert payload["reports"][0]["name"] == "winners classic path"
        assert json.loads(report_file.read_text()) == payload

    def test_unknown_suite_is_parse_error(self, capsys):
        assert main(["verify", "--suite", "nope"]) == 2


# ----------------------------------------------------------------------
# exit codes
# ----------------------------------------------------------------------

class TestExitCodes:
    def test_parse_errors(self, capsys):
        assert main(["value", "cycle 2"]) == 2
        assert main(["value", "blob 3"]) == 2

    def test_bad_edge_file(self, tmp_path, capsys):
        f = tmp_path / "bad.edges"
        f.write_text("not an edge list\n")
        assert main(["value", str(f)]) == 2

    def test_component_limit(self, capsys):
        assert main(["value", "path 20", "--max-component", "5"]) == 3

    def test_memo_cap(self, capsys):
        assert main(["value", "path 12", "--memo-cap", "4"]) == 3

    def test_precondition_violation(self, capsys):
        # classic P4 = {1|0} is not all-small, so aw refuses
        assert main(["aw", "path 4", "--variant", "classic"]) == 4


# ----------------------------------------------------------------------
# cache flag
# ----------------------------------------------------------------------

class TestCacheFlag:
    def test_cache_written_and_reused(self, tmp_path, capsys):
        cache = tmp_path / "values.mdgc"
        assert main(["value", "path 7", "--variant", "mf",
                     "--cache", str(cache)]) == 0
        first = capsys.readouterr().out
        assert cache.exists() and cache.stat().st_size > 0
        assert main(["value", "path 7", "--variant", "mf",
                     "--cache", str(cache)]) == 0
        assert capsys.readouterr().out == first

    def test_corrupt_cache_is_ignored(self, tmp_path, capsys):
        cache = tmp_path / "values.mdgc"
        main(["value", "path 7", "--variant", "mf", "--cache", str(cache)])
        capsys.readouterr()
        blob = bytearray(cache.read_bytes())
        blob[5] ^= 0xFF
        cache.write_bytes(bytes(blob))
        assert main(["value", "path 7", "--variant", "mf",
                     "--cache", str(cache)]) == 0
        assert "value: ↑" in capsys.readouterr().out
