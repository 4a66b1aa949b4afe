"""Command-line front-end.

Commands: fiber, split, torus, hierarchy, h1, order, primitive, analyze,
batch.  Output is deterministic: the same invocation always produces
byte-identical stdout, in both text and --json modes (timings go to
stderr).  Exit codes: 0 success, 1 precondition failure, 2 parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .automorphisms import is_primitive
from .hierarchy import BudgetExhausted, build_hierarchy, verify_hierarchy
from .presentations import (
    OneRelatorPresentation,
    abelianization,
    element_order_in_h1,
    format_presentation,
    parse_presentation,
)
from .rewriting import (
    brown_test,
    canonical_vanishing_character,
    mapping_torus,
    moldavansky_split,
)
from .words import ParseError, format_word, parse_word

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_PARSE = 2


# ---------------------------------------------------------------------------
# Report payloads (plain dicts with stable key order; schema in README)
# ---------------------------------------------------------------------------

def _word_text(w) -> str:
    return format_word(w)


def _input_payload(p: OneRelatorPresentation) -> dict:
    return {
        "presentation": format_presentation(p),
        "rank": p.rank,
        "relator": _word_text(p.relator),
        "label": p.label,
    }


def _fibering_payload(p, phi) -> dict:
    report = brown_test(p, phi)
    return {
        "character": list(phi.values),
        "lambda": list(report.lambda_sequence),
        "min": {"value": report.min_value,
                "multiplicity": report.min_multiplicity},
        "max": {"value": report.max_value,
                "multiplicity": report.max_multiplicity},
        "rank_is_two": report.rank_is_two,
        "verdict": report.verdict,
        "exclusion": report.exclusion,
    }


def _splitting_payload(p, phi) -> dict:
    s = moldavansky_split(p, phi)
    vertex_rank = s.vertex.rank
    names = [s.vertex_name(i) for i in range(1, vertex_rank + 1)]
    parts = []
    run_letter, run_length = None, 0
    for letter in list(s.vertex.relator) + [0]:
        if letter == run_letter:
            run_length += 1
            continue
        if run_letter is not None:
            exponent = run_length if run_letter > 0 else -run_length
            name = s.vertex_name(abs(run_letter))
            parts.append(name if exponent == 1 else "%s^%d" % (name, exponent))
        run_letter, run_length = letter, 1
    relator_y = " ".join(parts)
    return {
        "character": list(phi.values),
        "normalization_moves": [list(m) for m in s.theta.moves]
        if s.theta.moves is not None else None,
        "levels": s.levels,
        "stable": s.stable_name,
        "vertex": {
            "rank": vertex_rank,
            "generators": names,
            "relator": relator_y,
        },
        "edge_rank": s.edge_rank,
        "inclusion_plus": {names[k - 1]: s.vertex_name(abs(s.inclusion_plus.images[k - 1][0]))
                           for k in range(1, s.edge_rank + 1)},
        "inclusion_minus": {names[k - 1]: s.vertex_name(abs(s.inclusion_minus.images[k - 1][0]))
                            for k in range(1, s.edge_rank + 1)},
    }


def _format_y(w) -> str:
    """Render a word over edge/vertex generators with y-names (y0, y1, ...)."""
    parts = []
    run_letter, run_length = None, 0
    for letter in list(w) + [0]:
        if letter == run_letter:
            run_length += 1
            continue
        if run_letter is not None:
            exponent = run_length if run_letter > 0 else -run_length
            name = "y%d" % (abs(run_letter) - 1)
            parts.append(name if exponent == 1 else "%s^%d" % (name, exponent))
        run_letter, run_length = letter, 1
    return " ".join(parts)


def _torus_payload(p, phi) -> dict:
    data = mapping_torus(p, phi)
    return {
        "character": list(phi.values),
        "base_rank": data.base_rank,
        "psi": {"y%d" % j: _format_y(img)
                for j, img in enumerate(data.psi.forward.images)},
        "psi_inverse": {"y%d" % j: _format_y(img)
                        for j, img in enumerate(data.psi.backward.images)},
        "w3": _format_y(data.w3),
    }


def _hierarchy_payload(p, max_steps) -> dict:
    h = build_hierarchy(p, max_steps=max_steps)
    steps = []
    for step in h.steps:
        entry = {
            "case": step.case_tag,
            "metric_before": step.metric_before,
            "metric_after": step.metric_after,
            "child": {"rank": step.child.rank,
                      "relator": _word_text(step.child.relator)},
            "character": list(step.character_used.values)
            if step.character_used else None,
            "omitted_generator": step.omitted,
            "edge_rank": step.splitting.edge_rank if step.splitting else 0,
            "automorphism_moves": [list(m) for m in step.automorphism_used.moves]
            if step.automorphism_used.moves is not None else None,
        }
        steps.append(entry)
    return {
        "step_count": len(h.steps),
        "steps": steps,
        "terminal": {"exponent": h.terminal_exponent,
                     "group": h.terminal_description()},
        "verified": verify_hierarchy(h),
    }


def _h1_payload(p) -> dict:
    inv = abelianization(p)
    return {"free_rank": inv.free_rank, "torsion": inv.torsion,
            "description": inv.describe()}


def _order_payload(p, word) -> dict:
    order = element_order_in_h1(p, word)
    return {"word": _word_text(word),
            "order": "infinite" if order == math.inf else order}


def analyze(p: OneRelatorPresentation, max_steps: int = 64) -> dict:
    """The full report: every analysis whose preconditions hold."""
    report = {"input": _input_payload(p)}
    skipped = {}
    report["h1"] = _h1_payload(p)
    report["primitive"] = bool(p.relator) and is_primitive(p.relator, p.rank)
    try:
        phi = canonical_vanishing_character(p)
    except ValueError as exc:
        phi = None
        skipped["fibering"] = str(exc)
    if phi is not None:
        report["fibering_reports"] = [_fibering_payload(p, phi)]
        report["exclusion_certificate"] = report["fibering_reports"][0]["exclusion"]
        report["splitting"] = _splitting_payload(p, phi)
        try:
            report["mapping_torus"] = _torus_payload(p, phi)
        except ValueError as exc:
            skipped["mapping_torus"] = str(exc)
    try:
        report["hierarchy"] = _hierarchy_payload(p, max_steps)
    except (ValueError, BudgetExhausted) as exc:
        skipped["hierarchy"] = str(exc)
    if skipped:
        report["skipped"] = skipped
    return report


# ---------------------------------------------------------------------------
# Text rendering (same numbers as the JSON tree)
# ---------------------------------------------------------------------------

def _render(payload: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append("%s%s:" % (indent, key))
            lines.extend(_render(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append("%s%s:" % (indent, key))
            for i, item in enumerate(value):
                lines.append("%s  [%d]" % (indent, i))
                lines.extend(_render(item, indent + "    "))
        else:
            if isinstance(value, list):
                rendered = "(" + ", ".join(str(v) for v in value) + ")"
            elif value is None:
                rendered = "none"
            elif isinstance(value, bool):
                rendered = "true" if value else "false"
            else:
                rendered = str(value)
            lines.append("%s%s: %s" % (indent, key, rendered))
    return lines


def _emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(report) + "\n")
    else:
        out.write("\n".join(_render(report)) + "\n")


# ---------------------------------------------------------------------------
# Command dispatch
# ---------------------------------------------------------------------------

def _single_report(command: str, args, max_steps: int, label) -> dict:
    p = parse_presentation(args.presentation, parens=True)
    if label is not None:
        p = OneRelatorPresentation(p.rank, p.relator, label=label)
    report = {"command": command, "input": _input_payload(p)}
    if command == "h1":
        report["h1"] = _h1_payload(p)
    elif command == "primitive":
        report["primitive"] = bool(p.relator) and is_primitive(p.relator, p.rank)
    elif command == "order":
        word = parse_word(args.word, p.rank, parens=True)
        report["order"] = _order_payload(p, word)
    elif command == "fiber":
        phi = canonical_vanishing_character(p)
        report["fibering"] = _fibering_payload(p, phi)
    elif command == "split":
        phi = canonical_vanishing_character(p)
        report["splitting"] = _splitting_payload(p, phi)
    elif command == "torus":
        phi = canonical_vanishing_character(p)
        report["mapping_torus"] = _torus_payload(p, phi)
    elif command == "hierarchy":
        report["hierarchy"] = _hierarchy_payload(p, max_steps)
    elif command == "analyze":
        report.update(analyze(p, max_steps))
    else:
        raise ValueError("unknown command %r" % command)
    return report


def _batch_worker(task) -> tuple[int, str, dict | None, str | None, int]:
    line_no, text, max_steps = task
    try:
        p = parse_presentation(text, parens=True)
    except (ParseError, ValueError) as exc:
        kind = EXIT_PARSE if isinstance(exc, ParseError) else EXIT_PRECONDITION
        return line_no, text, None, str(exc), kind
    report = {"line": line_no, "command": "analyze"}
    report.update(analyze(p, max_steps))
    return line_no, text, report, None, EXIT_OK


def _run_batch(args, as_json: bool, max_steps: int, jobs: int, quiet: bool,
               out, err) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as handle:
            raw_lines = handle.read().splitlines()
    except OSError as exc:
        err.write("error: cannot read %s: %s\n" % (args.file, exc))
        return EXIT_PARSE
    tasks = []
    for line_no, line in enumerate(raw_lines, start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        tasks.append((line_no, stripped, max_steps))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_batch_worker, tasks))
    else:
        results = [_batch_worker(task) for task in tasks]
    status = EXIT_OK
    for line_no, text, report, error, severity in results:
        if report is None:
            status = max(status, severity)
            payload = {"line": line_no, "input": text,
                       "error": {"kind": "parse" if severity == EXIT_PARSE
                                 else "precondition",
                                 "message": error}}
            _emit(payload, as_json, out)
            if not quiet:
                err.write("line %d: %s\n" % (line_no, error))
        else:
            _emit(report, as_json, out)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="structured output (one JSON tree per input)")
    common.add_argument("--max-steps", type=int, default=64, metavar="N",
                        help="hierarchy step budget (default 64)")
    common.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="parallel workers for batch (default 1)")
    common.add_argument("--quiet", "-q", action="store_true",
                        help="suppress timing and per-line notes on stderr")
    common.add_argument("--label", default=None, metavar="NAME",
                        help="attach a label to the input presentation")

    parser = argparse.ArgumentParser(
        prog="onerelator",
        description="Symbolic analysis of one-relator group presentations.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def presentation_command(name, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("presentation", help='e.g. "<x1, x2 | x1^2 x2^-3>"')
        return sp

    presentation_command("fiber", "Brown's criterion for the canonical character")
    presentation_command("split", "Moldavansky HNN splitting")
    presentation_command("torus", "mapping-torus monodromy extraction")
    presentation_command("hierarchy", "build and verify the 1-relator hierarchy")
    presentation_command("h1", "abelianization invariants")
    presentation_command("primitive", "is the relator a primitive word?")
    presentation_command("analyze", "all analyses whose preconditions hold")
    sp = presentation_command("order", "order of a word's image in H1")
    sp.add_argument("word", help='e.g. "(x1^3 x2 x1^2)^3"')
    sp = sub.add_parser("batch", parents=[common],
                        help="analyze a file, one presentation per line")
    sp.add_argument("file", help="input file; # starts a comment")
    return parser


def run(args) -> int:
    """Execute a parsed command line; returns the exit status."""
    as_json = args.json
    out, err = sys.stdout, sys.stderr
    started = time.perf_counter()
    if args.command == "batch":
        status = _run_batch(args, as_json, args.max_steps, args.jobs,
                            args.quiet, out, err)
    else:
        try:
            report = _single_report(args.command, args, args.max_steps,
                                    args.label)
        except ParseError as exc:
            err.write("error: %s\n" % exc)
            return EXIT_PARSE
        except (ValueError, BudgetExhausted) as exc:
            err.write("error: %s\n" % exc)
            return EXIT_PRECONDITION
        _emit(report, as_json, out)
        status = EXIT_OK
    if not args.quiet:
        err.write("[%.1f ms]\n" % ((time.perf_counter() - started) * 1e3))
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
