"""Golden-file checks: recorded outputs of verified runs must not drift.

The golden files were produced by the first verified build; any change
to rewriting conventions, candidate ordering, or report layout shows up
here as a byte-level diff.
"""

import json
from pathlib import Path

from onerelator.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    assert status == 0
    return out


def test_baumslag_solitar_hierarchy_trace(capsys):
    out = run(capsys, "hierarchy", "-q", "--json",
              "<x1, x2 | x2 x1 x2^2 x1^-1>")
    golden = (DATA / "bs_hierarchy_golden.json").read_text()
    assert out == golden
    trace = json.loads(golden)["hierarchy"]
    assert trace["verified"] is True
    for step in trace["steps"]:
        if step["case"] == "cyclic_cover":
            assert step["metric_after"] <= step["metric_before"] - 2


def test_census_analyze_text_golden(capsys):
    out = run(capsys, "analyze", "-q",
              "<x1, x2 | x1 x2 x1 x2 x1^-1 x2^-2>")
    assert out == (DATA / "census_analyze_golden.txt").read_text()


def test_census_analyze_json_golden(capsys):
    out = run(capsys, "analyze", "-q", "--json",
              "<x1, x2 | x1 x2 x1 x2 x1^-1 x2^-2>")
    assert out == (DATA / "census_analyze_golden.json").read_text()


def test_text_and_json_goldens_share_numeric_content():
    report = json.loads((DATA / "census_analyze_golden.json").read_text())
    text = (DATA / "census_analyze_golden.txt").read_text()
    fib = report["fibering_reports"][0]
    assert "lambda: (%s)" % ", ".join(map(str, fib["lambda"])) in text
    assert "verdict: %s" % fib["verdict"] in text
    assert "free_rank: %d" % report["h1"]["free_rank"] in text
    assert "step_count: %d" % report["hierarchy"]["step_count"] in text
    for step in report["hierarchy"]["steps"]:
        assert "metric_before: %d" % step["metric_before"] in text
