from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given, settings

from bmclang.diagnostics import has_errors
from bmclang.dsl import format_enterprise, parse_text
from bmclang.model import BusinessModel, Enterprise, equivalent

from .conftest import CORPUS
from .strategies import enterprises

DSL_CORPUS = sorted(CORPUS.glob("*.bmc")) + sorted(
    p for p in (CORPUS / "negative").glob("*.bmc")
)


def roundtrippable(path: Path) -> bool:
    """Formatting needs a file that lowers without dropping anything."""
    _, diags = parse_text(path.read_text(encoding="utf-8"))
    return not any(d.code in ("E001", "E002", "E003", "E005", "E006", "E008", "E013")
                   for d in diags)


@pytest.mark.parametrize("path", DSL_CORPUS, ids=lambda p: p.name)
def test_corpus_formatter_idempotence_and_roundtrip(path):
    text = path.read_text(encoding="utf-8")
    if not roundtrippable(path):
        pytest.skip("fixture exists to exercise loader errors")
    model, _ = parse_text(text)
    once = format_enterprise(model)
    reparsed, diags = parse_text(once)
    assert not has_errors(diags)
    assert format_enterprise(reparsed) == once
    assert equivalent(model, reparsed)


def test_canonical_fixture_is_a_fixpoint(figure9_text):
    model, _ = parse_text(figure9_text)
    assert format_enterprise(model) == figure9_text


def test_elements_grouped_by_kind_order():
    model, _ = parse_text(
        'enterprise "E" { business_model "M" {\n'
        "  cost_structure Costs\n"
        "  key_activity Production\n"
        "  key_resource Factory\n"
        "} }"
    )
    out = format_enterprise(model)
    lines = [line.strip() for line in out.splitlines() if line.strip()]
    assert lines[2:5] == [
        "key_resource Factory",
        "key_activity Production",
        "cost_structure Costs",
    ]


def test_relationships_sorted_and_active_voice():
    model, _ = parse_text(
        'enterprise "E" { business_model "M" {\n'
        "  key_resource F\n"
        "  key_activity P\n"
        "  cost_structure C\n"
        "  P is_supported_by F\n"
        "  C is_affected_by F\n"
        "} }"
    )
    out = format_enterprise(model)
    assert "is_supported_by" not in out
    lines = [line.strip() for line in out.splitlines()]
    assert "F affects C" in lines
    assert "F supports P" in lines
    assert lines.index("F affects C") < lines.index("F supports P")


def test_empty_business_model_formats_to_one_line():
    model, _ = parse_text('enterprise "E" { business_model "X" { } }')
    assert 'business_model "X" {}' in format_enterprise(model)


def test_enterprise_without_models_still_formats():
    out = format_enterprise(Enterprise("Bare"))
    assert out == 'enterprise "Bare" {}\n'


def test_string_escaping_roundtrips():
    model = Enterprise('Quote " and \\ and\nnewline', [BusinessModel("M\n2")])
    out = format_enterprise(model)
    reparsed, diags = parse_text(out)
    assert diags == []
    assert reparsed.name == model.name
    assert reparsed.business_models[0].name == "M\n2"


def test_display_name_omitted_when_equal_to_id():
    model, _ = parse_text(
        'enterprise "E" { business_model "M" { key_resource F "F" } }'
    )
    out = format_enterprise(model)
    assert 'key_resource F\n' in out


def test_children_and_annotations_render_inside_body():
    model, _ = parse_text(
        'enterprise "E" { business_model "M" {\n'
        '  key_resource F "Factory" {\n'
        '    desc "site"\n'
        "    vrin true false false true\n"
        "    key_resource Lathe\n"
        "  }\n"
        "} }"
    )
    out = format_enterprise(model)
    assert 'key_resource F "Factory" {' in out
    assert '      desc "site"' in out
    assert "      vrin true false false true" in out
    assert "      key_resource Lathe" in out


@settings(max_examples=80, deadline=None)
@given(enterprises(legal_edges=True))
def test_random_models_roundtrip(model):
    once = format_enterprise(model)
    reparsed, diags = parse_text(once)
    assert not has_errors(diags)
    assert format_enterprise(reparsed) == once
    assert equivalent(model, reparsed)
