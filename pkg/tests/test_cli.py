"""End-to-end command-line behavior driven in process through ``main``."""

from __future__ import annotations

import json

import pytest

from convexa.cli import (
    EXIT_DIM1_INFEASIBLE,
    EXIT_NOT_CONVEX,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_UNSUPPORTED,
    canonical_antichains,
    main,
)
from convexa.decision import CONVEX, DIM_EXACTLY_1, NOT_CONVEX, PATH_CASE

FIG_MIN_TEXT = "1356\n123\n124\n12\n13\n"
CODE_D_TEXT = "1356\n123\n124\n12\n13\n23\n24\n5\n6\n"
CYCLE_TEXT = "12\n13\n23\n"
FOUR_FACETS_TEXT = "12\n34\n56\n78\n"


@pytest.fixture
def run(capsys):
    def invoke(*argv: str) -> tuple[int, str, str]:
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def write(tmp_path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# --- analyze ----------------------------------------------------------------


def test_analyze_convex_document(run, tmp_path):
    path = write(tmp_path, "code.txt", FIG_MIN_TEXT)
    status, out, _ = run("analyze", path)
    assert status == EXIT_OK
    doc = json.loads(out)
    assert doc["verdict"] == {
        "outcome": CONVEX,
        "dim": DIM_EXACTLY_1,
        "strategy": PATH_CASE,
    }
    assert doc["path_witness"]["order"] == ["124", "123", "1356"]
    assert doc["minimal_code"] == ["{}", "12", "123", "124", "13", "1356"]
    assert all(r["status"] == "satisfied" for r in doc["obstructions"])
    assert doc["realization"] is None


def test_analyze_with_embedded_realization(run, tmp_path):
    path = write(tmp_path, "code.txt", CODE_D_TEXT)
    status, out, _ = run("analyze", path, "--realize")
    assert status == EXIT_OK
    doc = json.loads(out)
    assert doc["realization"]["dim"] == 2
    assert doc["certificate"]["code"] == doc["code"]


def test_analyze_not_convex(run, tmp_path):
    path = write(tmp_path, "code.txt", CYCLE_TEXT)
    status, out, _ = run("analyze", path)
    assert status == EXIT_NOT_CONVEX
    doc = json.loads(out)
    assert doc["verdict"]["outcome"] == NOT_CONVEX
    bad = {r["sigma"] for r in doc["obstructions"] if r["status"] == "obstruction"}
    assert bad == {"1", "2", "3"}


def test_analyze_unsupported(run, tmp_path):
    path = write(tmp_path, "code.txt", FOUR_FACETS_TEXT)
    status, out, _ = run("analyze", path)
    assert status == EXIT_UNSUPPORTED
    doc = json.loads(out)
    assert doc["minimal_code"] is None
    assert doc["verdict"]["strategy"] is None


def test_analyze_json_input(run, tmp_path):
    payload = json.dumps({"code": ["1356", "123", "124", "12", "13", "{}"], "n": 7})
    path = write(tmp_path, "code.json", payload)
    status, out, _ = run("analyze", path, "--json")
    assert status == EXIT_OK
    assert json.loads(out)["n"] == 7


# --- realize ----------------------------------------------------------------


def test_realize_dim1_golden_intervals(run, tmp_path):
    path = write(tmp_path, "code.txt", FIG_MIN_TEXT)
    status, out, _ = run("realize", path, "--dim", "1")
    assert status == EXIT_OK
    doc = json.loads(out)
    assert doc["dim"] == 1
    assert doc["sets"] == [
        None,
        {"lo": "0", "hi": "5"},
        {"lo": "0", "hi": "3"},
        {"lo": "2", "hi": "5"},
        {"lo": "0", "hi": "1"},
        {"lo": "4", "hi": "5"},
        {"lo": "4", "hi": "5"},
    ]
    cert = doc["certificate"]
    assert sorted(cert["code"]) == sorted(["{}", "12", "123", "124", "13", "1356"])
    assert all(len(x) == 1 for x in cert["witnesses"].values())


def test_realize_auto_picks_the_plane_for_code_d(run, tmp_path):
    path = write(tmp_path, "code.txt", CODE_D_TEXT)
    status, out, _ = run("realize", path)
    assert status == EXIT_OK
    doc = json.loads(out)
    assert doc["dim"] == 2
    assert len(doc["cuts"]) == 4
    assert sorted(doc["certificate"]["code"]) == sorted(
        ["{}", "12", "123", "124", "13", "1356", "23", "24", "5", "6"]
    )
    assert all(len(x) == 2 for x in doc["certificate"]["witnesses"].values())


def test_realize_dim1_infeasible_for_code_d(run, tmp_path):
    path = write(tmp_path, "code.txt", CODE_D_TEXT)
    status, _, err = run("realize", path, "--dim", "1")
    assert status == EXIT_DIM1_INFEASIBLE
    assert "infeasible" in err


def test_realize_not_convex_and_unsupported(run, tmp_path):
    status, _, err = run("realize", write(tmp_path, "bad.txt", CYCLE_TEXT))
    assert status == EXIT_NOT_CONVEX
    assert "obstructions at 1, 2, 3" in err
    status, _, err = run("realize", write(tmp_path, "wide.txt", FOUR_FACETS_TEXT))
    assert status == EXIT_UNSUPPORTED


def test_realize_not_convex_names_only_obstructed_sigmas(run, tmp_path):
    """Facets-only input: sigma 1 has a contractible (path) link and is
    merely satisfied-by-scan; the message must name just 12 and 13."""
    status, _, err = run("realize", write(tmp_path, "f.txt", "1356\n123\n124\n"))
    assert status == EXIT_NOT_CONVEX
    assert "obstructions at 12, 13" in err
    assert "at 1," not in err


def test_realize_renders_svg(run, tmp_path):
    code = write(tmp_path, "code.txt", FIG_MIN_TEXT)
    svg = tmp_path / "fig.svg"
    status, _, _ = run("realize", code, "--dim", "1", "--svg", str(svg))
    assert status == EXIT_OK
    assert svg.stat().st_size > 0
    svg2 = tmp_path / "fig2.svg"
    status, _, _ = run("realize", write(tmp_path, "d.txt", CODE_D_TEXT), "--svg", str(svg2))
    assert status == EXIT_OK
    assert svg2.stat().st_size > 0


# --- verify -----------------------------------------------------------------


def test_realize_verify_round_trip(run, tmp_path):
    code = write(tmp_path, "code.txt", CODE_D_TEXT)
    status, out, _ = run("realize", code)
    assert status == EXIT_OK
    real = write(tmp_path, "real.json", out)
    status, out, _ = run("verify", real, code)
    assert status == EXIT_OK
    report = json.loads(out)
    assert report["match"] is True
    assert report["missing"] == [] and report["extra"] == []


def test_verify_reports_missing_words(run, tmp_path):
    fig = write(tmp_path, "fig.txt", FIG_MIN_TEXT)
    status, out, _ = run("realize", fig, "--dim", "1")
    real = write(tmp_path, "real.json", out)
    target = write(tmp_path, "d.txt", CODE_D_TEXT)
    status, out, _ = run("verify", real, target)
    assert status == EXIT_NOT_CONVEX
    report = json.loads(out)
    assert report["match"] is False
    assert report["missing"] == ["23", "24", "5", "6"]
    assert report["extra"] == []


def test_verify_reports_extra_words_with_witnesses(run, tmp_path):
    code = write(tmp_path, "code.txt", CODE_D_TEXT)
    status, out, _ = run("realize", code)
    real = write(tmp_path, "real.json", out)
    small = write(tmp_path, "small.txt", FIG_MIN_TEXT)
    status, out, _ = run("verify", real, small)
    assert status == EXIT_NOT_CONVEX
    report = json.loads(out)
    extras = {entry["word"] for entry in report["extra"]}
    assert extras == {"23", "24", "5", "6"}
    for entry in report["extra"]:
        assert len(entry["witness"]) == 2


def test_verify_rejects_unknown_dim(run, tmp_path):
    real = write(tmp_path, "real.json", json.dumps({"dim": 3}))
    code = write(tmp_path, "code.txt", FIG_MIN_TEXT)
    status, _, err = run("verify", real, code)
    assert status == EXIT_PARSE
    assert "dim" in err


# --- malformed inputs ----------------------------------------------------------


def test_parse_errors_exit_2(run, tmp_path):
    status, _, err = run("analyze", write(tmp_path, "junk.txt", "garbage\n"))
    assert status == EXIT_PARSE
    assert "line 1" in err
    status, _, err = run("analyze", str(tmp_path / "missing.txt"))
    assert status == EXIT_PARSE
    status, _, err = run(
        "analyze", write(tmp_path, "bad.json", "{not json"), "--json"
    )
    assert status == EXIT_PARSE


def test_cli_requires_a_subcommand():
    with pytest.raises(SystemExit):
        main([])


# --- enumerate ------------------------------------------------------------------


def test_canonical_antichain_counts():
    assert canonical_antichains(3, 3) == [(1, 2, 4), (3, 5, 6)]
    assert len(canonical_antichains(4, 3)) == 9


def test_enumerate_writes_summary_and_per_complex_files(run, tmp_path):
    out = tmp_path / "survey"
    status, stdout, _ = run(
        "enumerate", "--neurons", "3", "--facets", "3", "--out", str(out)
    )
    assert status == EXIT_OK
    assert "2 complexes" in stdout
    assert (out / "summary.csv").exists()
    assert (out / "summary.png").stat().st_size > 0
    details = sorted(out.glob("cpx-*.json"))
    assert len(details) == 2
    doc = json.loads(details[0].read_text())
    assert doc["n"] == 3
    assert set(doc["intermediate"]) == {
        "total",
        "evaluated",
        "convex",
        "not_convex",
        "sampled",
        "seed",
    }


def test_enumerate_is_deterministic_under_a_seed(run, tmp_path):
    first = tmp_path / "a"
    second = tmp_path / "b"
    for out in (first, second):
        status, _, _ = run(
            "enumerate",
            "--neurons", "4",
            "--facets", "2",
            "--out", str(out),
            "--seed", "11",
        )
        assert status == EXIT_OK
    assert (first / "summary.csv").read_bytes() == (second / "summary.csv").read_bytes()


def test_enumerate_rejects_out_of_range_bounds(run, tmp_path):
    status, _, err = run(
        "enumerate", "--neurons", "9", "--facets", "3", "--out", str(tmp_path / "x")
    )
    assert status == EXIT_PARSE
    assert "bounds" in err
    status, _, err = run(
        "enumerate", "--neurons", "3", "--facets", "4", "--out", str(tmp_path / "y")
    )
    assert status == EXIT_PARSE
