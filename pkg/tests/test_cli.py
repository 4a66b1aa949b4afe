import json
import subprocess
import sys

from onerelator.cli import main

CENSUS = "<x1, x2 | x1 x2 x1 x2 x1^-1 x2^-2>"
M017 = "<x1, x2 | x1^2 x2 x1^3 x2 x1^2 x2^-2>"
ILLUSTRATION = "<x1, x2 | x2 x1 x2^2 x1 x2^3 x1^-2>"


def run_cli(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def run_json(capsys, *argv):
    status, out, _ = run_cli(capsys, *argv)
    return status, json.loads(out)


class TestCommands:
    def test_fiber_census(self, capsys):
        status, report = run_json(capsys, "fiber", "-q", "--json", CENSUS)
        assert status == 0
        fib = report["fibering"]
        assert fib["lambda"] == [0, 1, 2]
        assert fib["verdict"] == "fg_kernel"
        assert fib["min"]["multiplicity"] == 1
        assert fib["max"]["multiplicity"] == 1

    def test_h1_m017(self, capsys):
        status, report = run_json(capsys, "h1", "-q", "--json", M017)
        assert status == 0
        assert report["h1"] == {"free_rank": 1, "torsion": 7,
                                "description": "Z x Z/7"}

    def test_order_with_parenthesized_powers(self, capsys):
        status, report = run_json(
            capsys, "order", "-q", "--json", M017,
            "x2^-4 x1^2 x2 x1^2 (x1^3 x2 x1^2)^3")
        assert status == 0
        assert report["order"]["order"] == 7

    def test_split_illustration(self, capsys):
        status, report = run_json(capsys, "split", "-q", "--json", ILLUSTRATION)
        assert status == 0
        s = report["splitting"]
        assert s["vertex"]["relator"] == "y0_1 y1_1^2 y2_1^3"
        assert s["levels"] == 2
        assert s["edge_rank"] == 2
        assert s["inclusion_plus"] == {"y0_1": "y0_1", "y1_1": "y1_1"}
        assert s["inclusion_minus"] == {"y0_1": "y1_1", "y1_1": "y2_1"}

    def test_torus_census(self, capsys):
        status, report = run_json(capsys, "torus", "-q", "--json", CENSUS)
        assert status == 0
        torus = report["mapping_torus"]
        assert torus["psi"] == {"y0": "y1", "y1": "y0 y1"}
        assert torus["base_rank"] == 2

    def test_primitive(self, capsys):
        status, report = run_json(capsys, "primitive", "-q", "--json",
                                  "<x1, x2 | x1 x2 x1>")
        assert status == 0 and report["primitive"] is True
        status, report = run_json(capsys, "primitive", "-q", "--json",
                                  "<x1, x2 | x1^2 x2^-3>")
        assert status == 0 and report["primitive"] is False

    def test_hierarchy(self, capsys):
        status, report = run_json(capsys, "hierarchy", "-q", "--json",
                                  "<x1, x2 | x2 x1 x2^2 x1^-1>")
        assert status == 0
        h = report["hierarchy"]
        assert h["verified"] is True
        assert h["terminal"]["group"] == "trivial"
        assert h["steps"][0]["case"] == "cyclic_cover"

    def test_analyze_contains_everything(self, capsys):
        status, report = run_json(capsys, "analyze", "-q", "--json", CENSUS)
        assert status == 0
        for key in ("h1", "primitive", "fibering_reports", "splitting",
                    "mapping_torus", "hierarchy"):
            assert key in report

    def test_analyze_rank_one_skips_fibering(self, capsys):
        status, report = run_json(capsys, "analyze", "-q", "--json",
                                  "<x1 | x1^5>")
        assert status == 0
        assert report["h1"]["description"] == "Z/5"
        assert report["hierarchy"]["terminal"]["group"] == "Z/5"
        assert "fibering_reports" not in report
        assert "fibering" in report["skipped"]

    def test_analyze_free_presentation(self, capsys):
        status, report = run_json(capsys, "analyze", "-q", "--json",
                                  "<x1, x2 | >")
        assert status == 0
        assert report["h1"]["description"] == "Z x Z"
        assert report["primitive"] is False
        assert report["hierarchy"]["terminal"]["group"] == "Z"

    def test_label_flag(self, capsys):
        status, report = run_json(capsys, "h1", "-q", "--json",
                                  "--label", "census", CENSUS)
        assert status == 0
        assert report["input"]["label"] == "census"


class TestExitCodes:
    def test_parse_error_is_2(self, capsys):
        status, out, err = run_cli(capsys, "fiber", "-q", "<x1,x2|x1 &&>")
        assert status == 2 and "error" in err

    def test_precondition_failure_is_1(self, capsys):
        status, out, err = run_cli(capsys, "torus", "-q",
                                   "<x1, x2 | x2 x1 x2^2 x1^-1>")
        assert status == 1 and "error" in err

    def test_fiber_on_free_presentation_is_1(self, capsys):
        status, _, _ = run_cli(capsys, "fiber", "-q", "<x1, x2 | >")
        assert status == 1


class TestBatch:
    CORPUS = (
        "# comment line\n"
        "<x1, x2 | x1^2 x2^-3> ; label=trefoil\n"
        "\n"
        "<x1, x2 | x2 x1 x2^2 x1^-1>\n"
        "garbage\n"
        "<x1, x2 | x1 x2 x1 x2 x1^-1 x2^-2>\n"
    )

    def write_corpus(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text(self.CORPUS, encoding="utf-8")
        return str(path)

    def test_order_and_errors(self, capsys, tmp_path):
        path = self.write_corpus(tmp_path)
        status, out, err = run_cli(capsys, "batch", "-q", "--json", path)
        assert status == 2  # the garbage line is a parse error
        lines = [json.loads(line) for line in out.splitlines()]
        assert [entry["line"] for entry in lines] == [2, 4, 5, 6]
        assert lines[0]["input"]["label"] == "trefoil"
        assert "error" in lines[2]
        assert lines[3]["fibering_reports"][0]["verdict"] == "fg_kernel"

    def test_clean_corpus_exit_0(self, capsys, tmp_path):
        path = tmp_path / "ok.txt"
        path.write_text("<x1, x2 | x1^2 x2^-3>\n", encoding="utf-8")
        status, _, _ = run_cli(capsys, "batch", "-q", "--json", str(path))
        assert status == 0

    def test_parallel_output_matches_serial(self, capsys, tmp_path):
        path = self.write_corpus(tmp_path)
        _, serial, _ = run_cli(capsys, "batch", "-q", "--json", path)
        _, parallel, _ = run_cli(capsys, "batch", "-q", "--json",
                                 "--jobs", "3", path)
        assert serial == parallel

    def test_unreadable_file(self, capsys, tmp_path):
        status, _, err = run_cli(capsys, "batch", "-q",
                                 str(tmp_path / "missing.txt"))
        assert status == 2 and "cannot read" in err


class TestDeterminism:
    def test_json_byte_identical(self, capsys):
        _, first, _ = run_cli(capsys, "analyze", "-q", "--json", CENSUS)
        _, second, _ = run_cli(capsys, "analyze", "-q", "--json", CENSUS)
        assert first == second

    def test_text_byte_identical(self, capsys):
        _, first, _ = run_cli(capsys, "analyze", "-q", CENSUS)
        _, second, _ = run_cli(capsys, "analyze", "-q", CENSUS)
        assert first == second

    def test_text_and_json_share_numbers(self, capsys):
        _, text, _ = run_cli(capsys, "fiber", "-q", CENSUS)
        _, report = run_json(capsys, "fiber", "-q", "--json", CENSUS)
        fib = report["fibering"]
        assert "lambda: (%s)" % ", ".join(map(str, fib["lambda"])) in text
        assert "verdict: %s" % fib["verdict"] in text
        assert "value: %d" % fib["min"]["value"] in text
        assert "multiplicity: %d" % fib["max"]["multiplicity"] in text

    def test_timing_goes_to_stderr_only(self, capsys):
        status, out, err = run_cli(capsys, "h1", CENSUS)
        assert status == 0
        assert "ms]" in err
        assert "ms]" not in out


class TestSubprocess:
    def test_module_entry_point(self):
        result = subprocess.run(
            [sys.executable, "-m", "onerelator.cli", "h1", "-q", "--json", M017],
            capture_output=True, text=True, check=True)
        assert json.loads(result.stdout)["h1"]["torsion"] == 7
        assert result.stderr == ""
