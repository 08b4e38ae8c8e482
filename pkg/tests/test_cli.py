from __future__ import annotations

import json
import shutil

import pytest

from .conftest import CORPUS, clean_corpus, negative_corpus, run_cli


# -- check ---------------------------------------------------------------

@pytest.mark.parametrize("path", clean_corpus(), ids=lambda p: p.name)
def test_check_clean_corpus_exits_zero(path):
    code, _, err = run_cli("check", str(path))
    assert code == 0, err


@pytest.mark.parametrize("path", negative_corpus(), ids=lambda p: p.name)
def test_check_negative_corpus_exits_one(path):
    code, _, err = run_cli("check", str(path))
    assert code == 1, err
    assert "ERROR" in err


def test_check_missing_file_exits_two():
    code, _, err = run_cli("check", "no/such/file.bmc")
    assert code == 2
    assert "cannot read" in err


def test_check_unknown_flag_exits_two(capsys):
    code, _, _ = run_cli("check", "--bogus", str(CORPUS / "figure9.bmc"))
    assert code == 2


def test_check_unknown_extension_requires_input_flag(tmp_path):
    target = tmp_path / "model.txt"
    shutil.copy(CORPUS / "figure9.bmc", target)
    code, _, err = run_cli("check", str(target))
    assert code == 2
    assert "--input" in err
    code, _, _ = run_cli("check", "--input", "dsl", str(target))
    assert code == 0


def test_check_dr3_violation_cites_rule():
    code, _, err = run_cli(
        "check", str(CORPUS / "negative" / "dr3_cs_vp_supports.bmc")
    )
    assert code == 1
    line = [l for l in err.splitlines() if "E010" in l][0]
    assert "DR3" in line


def test_check_diagnostic_line_format(figure9_path):
    code, _, err = run_cli("check", str(figure9_path))
    assert code == 0
    first = err.splitlines()[0]
    severity, code_field, location, *_ = first.split()
    assert severity == "WARNING"
    assert code_field == "W102"
    assert location.startswith(str(figure9_path))
    assert location.count(":") >= 2


def test_check_no_lint_suppresses_warnings(figure9_path):
    code, _, err = run_cli("check", "--no-lint", str(figure9_path))
    assert code == 0
    assert err == ""


def test_check_deny_warnings_upgrades(figure9_path):
    code, _, err = run_cli("check", "--deny-warnings", str(figure9_path))
    assert code == 1
    assert "ERROR W102" in err


def test_check_json_envelope(figure9_path):
    code, out, err = run_cli("check", "--json", str(figure9_path))
    assert code == 0
    assert err == ""
    doc = json.loads(out)
    assert doc["ok"] is True
    assert {d["code"] for d in doc["diagnostics"]} == {"W102", "W105"}
    assert doc["model"]["format"] == "bmc-model"


def test_check_json_omits_model_on_errors():
    code, out, _ = run_cli(
        "check", "--json", str(CORPUS / "negative" / "dr1_self_affects.bmc")
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["ok"] is False
    assert "model" not in doc
    assert doc["diagnostics"][0]["rule"] == "DR1"
    assert "span" in doc["diagnostics"][0]


def test_check_json_byte_stable(figure9_path):
    first = run_cli("check", "--json", str(figure9_path))
    second = run_cli("check", "--json", str(figure9_path))
    assert first == second


def test_check_reads_json_models():
    code, _, _ = run_cli("check", str(CORPUS / "figure9.json"))
    assert code == 0


def test_check_flags_shared_names_across_sibling_models():
    code, _, err = run_cli("check", str(CORPUS / "nested.bmc"))
    assert code == 0
    assert "W106" in err
    assert "Shared Plant" in err


def test_color_honours_bmc_no_color(figure9_path, monkeypatch, capsys):
    import sys

    from bmclang.cli import main

    monkeypatch.setattr(sys.stderr, "isatty", lambda: True, raising=False)
    monkeypatch.delenv("BMC_NO_COLOR", raising=False)
    main(["check", str(figure9_path)])
    assert "\x1b[33m" in capsys.readouterr().err
    monkeypatch.setenv("BMC_NO_COLOR", "1")
    main(["check", str(figure9_path)])
    assert "\x1b[" not in capsys.readouterr().err


# -- fmt -----------------------------------------------------------------

def test_fmt_check_canonical_file_exits_zero(figure9_path):
    code, out, _ = run_cli("fmt", str(figure9_path), "--check")
    assert code == 0
    assert out == ""


def test_fmt_check_passive_file_shows_diff():
    code, out, _ = run_cli("fmt", str(CORPUS / "passive.bmc"), "--check")
    assert code == 1
    assert "-    Panels is_determined_by Customers" in out
    assert "+    Customers determines Panels" in out


def test_fmt_write_rewrites_in_place(tmp_path):
    target = tmp_path / "model.bmc"
    shutil.copy(CORPUS / "passive.bmc", target)
    code, _, _ = run_cli("fmt", str(target), "--write")
    assert code == 0
    assert "determines" in target.read_text()
    code, _, _ = run_cli("fmt", str(target), "--check")
    assert code == 0


def test_fmt_syntax_error_exits_two():
    code, _, err = run_cli("fmt", str(CORPUS / "negative" / "syntax_error.bmc"), "--check")
    assert code == 2
    assert "cannot format" in err


def test_fmt_default_prints_canonical_text():
    code, out, _ = run_cli("fmt", str(CORPUS / "passive.bmc"))
    assert code == 0
    assert "Customers determines Panels" in out


# -- render --------------------------------------------------------------

@pytest.mark.parametrize("fmt", ["dot", "svg", "json"])
def test_render_formats(figure9_path, tmp_path, fmt):
    out_file = tmp_path / f"out.{fmt}"
    code, _, err = run_cli(
        "render", str(figure9_path), "--format", fmt, "-o", str(out_file)
    )
    assert code == 0, err
    assert out_file.read_text()


def test_render_to_stdout(figure9_path):
    code, out, _ = run_cli("render", str(figure9_path), "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_render_invalid_model_writes_nothing(tmp_path):
    out_file = tmp_path / "out.svg"
    code, _, err = run_cli(
        "render", str(CORPUS / "negative" / "dr3_cs_vp_supports.bmc"),
        "--format", "svg", "-o", str(out_file),
    )
    assert code == 1
    assert not out_file.exists()
    assert "E010" in err


def test_render_pmc_svg_by_name(pmc_path, tmp_path):
    out_file = tmp_path / "pmc.svg"
    code, _, err = run_cli(
        "render", str(pmc_path), "--format", "svg",
        "--bm", "Polycarbonate", "-o", str(out_file),
    )
    assert code == 0, err
    assert "data-kind" in out_file.read_text()


def test_render_ambiguous_without_bm_flag():
    code, _, err = run_cli(
        "render", str(CORPUS / "nested.bmc"), "--format", "dot"
    )
    assert code == 2
    assert "--bm" in err


def test_render_unknown_bm_name(figure9_path):
    code, _, err = run_cli(
        "render", str(figure9_path), "--format", "dot", "--bm", "Nope"
    )
    assert code == 2
    assert "Nope" in err


def test_render_nested_bm_reachable_by_name():
    code, out, _ = run_cli(
        "render", str(CORPUS / "nested.bmc"), "--format", "dot",
        "--bm", "Alpha_Sub",
    )
    assert code == 0
    assert "digraph" in out


@pytest.mark.parametrize("fmt", ["dot", "svg", "json"])
def test_render_byte_identical_across_runs(figure9_path, fmt):
    first = run_cli("render", str(figure9_path), "--format", fmt)
    second = run_cli("render", str(figure9_path), "--format", fmt)
    assert first == second


# -- infer ---------------------------------------------------------------

@pytest.mark.parametrize(
    "src, dst, expected",
    [
        ("CS", "VP", "determines"),
        ("VP", "CS", "reverse-only (reverse kind: determines)"),
        ("KR", "KR", "supports"),
        ("key_resource", "key_activity", "supports"),
        ("R$", "C$", "affects"),
        ("C$", "R$", "affects"),
        ("cs", "c$", "affects"),
    ],
)
def test_infer(src, dst, expected):
    code, out, _ = run_cli("infer", src, dst)
    assert code == 0
    assert out.strip() == expected


def test_infer_unknown_kind_exits_two():
    code, _, err = run_cli("infer", "XX", "VP")
    assert code == 2
    assert "XX" in err


# -- matrix ---------------------------------------------------------------

def test_matrix_csv_has_81_rows():
    code, out, _ = run_cli("matrix", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "src,dst,entry"
    assert len(lines) == 82
    assert "CR,VP,affects" in lines
    assert "CS,KR,reverse-only(supports)" in lines


def test_matrix_table_cells():
    code, out, _ = run_cli("matrix")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["KR", "KA", "KP", "CS", "VP", "CH", "CR", "R$", "C$"]
    rows = {line.split()[0]: line.split()[1:] for line in lines[1:]}
    kinds = lines[0].split()
    assert rows["CR"][kinds.index("VP")] == "A"
    assert rows["CS"][kinds.index("KR")] == "·S"
    assert rows["KR"][kinds.index("KR")] == "S"
    assert rows["CS"][kinds.index("VP")] == "D"


def test_matrix_output_stable():
    assert run_cli("matrix", "--format", "csv") == run_cli("matrix", "--format", "csv")


def test_matrix_csv_required_rows_equal_the_golden_file():
    from .test_policy import GOLDEN

    golden = set()
    for line in GOLDEN.read_text().splitlines():
        src, verb, dst = line.split()
        golden.add((src, dst, verb))
    _, out, _ = run_cli("matrix", "--format", "csv")
    required = set()
    reverse_only = 0
    for line in out.strip().splitlines()[1:]:
        src, dst, cell = line.split(",", 2)
        if cell.startswith("reverse-only("):
            reverse_only += 1
        else:
            required.add((src, dst, cell))
    assert required == golden
    assert reverse_only == 35
