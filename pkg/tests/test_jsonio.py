from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

from bmclang.dsl import parse_text
from bmclang.export import from_json, to_json
from bmclang.model import (
    BusinessModel,
    ElementKind,
    Enterprise,
    RelationshipKind,
    VrinAnnotation,
)

from .conftest import CORPUS
from .strategies import enterprises


def test_empty_enterprise_roundtrips():
    model = Enterprise("Bare")
    loaded, diags = from_json(to_json(model))
    assert diags == []
    assert loaded == model


def test_figure9_roundtrips_byte_stably(figure9_text):
    model, _ = parse_text(figure9_text)
    first = to_json(model)
    second = to_json(model)
    assert first == second
    loaded, diags = from_json(first)
    assert diags == []
    assert loaded == model
    assert to_json(loaded) == first


def test_rich_model_roundtrips():
    bm = BusinessModel("M")
    factory = bm.add_element(
        ElementKind.KEY_RESOURCE, "Factory", name="The factory",
        description="main site", vrin=VrinAnnotation(True, False, True, False),
    )
    bm.nest_element(factory, type(factory)("Lathe", ElementKind.KEY_RESOURCE, "Lathe"))
    bm.add_element(ElementKind.KEY_ACTIVITY, "Production")
    bm.add_relationship("Factory", "Production", RelationshipKind.SUPPORTS,
                        label="runs")
    nested = bm.add_business_model("Inner")
    nested.add_element(ElementKind.CUSTOMER_SEGMENT, "Customers")
    model = Enterprise("E", [bm])
    loaded, diags = from_json(to_json(model))
    assert diags == []
    assert loaded == model


def test_key_order_is_fixed():
    model, _ = parse_text(
        'enterprise "E" { business_model "M" { key_resource F "Name" { desc "d" } } }'
    )
    doc = json.loads(to_json(model))
    assert list(doc) == ["format", "version", "enterprise"]
    assert list(doc["enterprise"]) == ["name", "business_models"]
    bm = doc["enterprise"]["business_models"][0]
    assert list(bm) == ["name", "elements", "relationships"]
    assert list(bm["elements"][0]) == ["id", "kind", "name", "desc"]


def test_optional_keys_omitted_when_absent(figure9_text):
    model, _ = parse_text(figure9_text)
    doc = json.loads(to_json(model))
    element = doc["enterprise"]["business_models"][0]["elements"][0]
    assert "desc" not in element
    assert "vrin" not in element
    assert "children" not in element
    assert "business_models" not in doc["enterprise"]["business_models"][0]


def test_unknown_kind_rejected_with_path():
    text = (CORPUS / "negative" / "bad_kind.json").read_text()
    _, diags = from_json(text)
    assert [d.code for d in diags] == ["E007"]
    assert "$.enterprise.business_models[0].elements[0].kind" in diags[0].message


def test_unknown_key_rejected_with_path():
    text = (CORPUS / "negative" / "unknown_key.json").read_text()
    _, diags = from_json(text)
    assert [d.code for d in diags] == ["E007"]
    assert "$.enterprise.business_models[0].elements[0].color" in diags[0].message


def test_malformed_json_has_span():
    _, diags = from_json('{"format": "bmc-model",')
    assert [d.code for d in diags] == ["E001"]
    assert diags[0].span is not None


def test_wrong_format_marker():
    _, diags = from_json('{"format": "other", "version": 1, "enterprise": {"name": "X", "business_models": []}}')
    assert any("$.format" in d.message and d.code == "E007" for d in diags)


def test_wrong_version():
    doc = {"format": "bmc-model", "version": 2,
           "enterprise": {"name": "X", "business_models": []}}
    _, diags = from_json(json.dumps(doc))
    assert any("$.version" in d.message for d in diags)
    _, diags = from_json(json.dumps({**doc, "version": True}))
    assert any("$.version" in d.message for d in diags)


def test_bad_vrin_shape():
    doc = {
        "format": "bmc-model", "version": 1,
        "enterprise": {"name": "X", "business_models": [{
            "name": "M",
            "elements": [{"id": "F", "kind": "key_resource", "name": "F",
                          "vrin": [True, True, True]}],
            "relationships": [],
        }]},
    }
    _, diags = from_json(json.dumps(doc))
    assert any(d.code == "E007" and ".vrin" in d.message for d in diags)


def test_bad_relationship_kind():
    doc = {
        "format": "bmc-model", "version": 1,
        "enterprise": {"name": "X", "business_models": [{
            "name": "M",
            "elements": [],
            "relationships": [{"source": "a", "target": "b", "kind": "helps"}],
        }]},
    }
    _, diags = from_json(json.dumps(doc))
    assert any(
        d.code == "E007" and "relationships[0].kind" in d.message for d in diags
    )


def test_multiple_schema_errors_collected():
    doc = {
        "format": "bmc-model", "version": 1,
        "enterprise": {"name": "X", "business_models": [{
            "name": "M",
            "elements": [
                {"id": "A", "kind": "nope", "name": "A"},
                {"id": "B", "kind": "channel", "name": "B", "bogus": 1},
            ],
            "relationships": [],
        }]},
    }
    _, diags = from_json(json.dumps(doc))
    assert len([d for d in diags if d.code == "E007"]) == 2


def test_structural_problems_are_left_to_the_validator():
    # duplicate ids and dangling references are not schema errors
    doc = {
        "format": "bmc-model", "version": 1,
        "enterprise": {"name": "X", "business_models": [{
            "name": "M",
            "elements": [
                {"id": "A", "kind": "channel", "name": "A"},
                {"id": "A", "kind": "channel", "name": "A"},
            ],
            "relationships": [{"source": "A", "target": "Zed", "kind": "supports"}],
        }]},
    }
    loaded, diags = from_json(json.dumps(doc))
    assert diags == []
    assert len(loaded.business_models[0].elements) == 2


@pytest.mark.parametrize("payload", ["[]", "3", '"text"', "null"])
def test_non_object_document(payload):
    _, diags = from_json(payload)
    assert any(d.code == "E007" for d in diags)


@settings(max_examples=80, deadline=None)
@given(enterprises(legal_edges=False))
def test_random_models_roundtrip_identically(model):
    text = to_json(model)
    loaded, diags = from_json(text)
    assert diags == []
    assert loaded == model
    assert to_json(loaded) == text
