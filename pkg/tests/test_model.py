from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bmclang.model import (
    BusinessModel,
    Element,
    ElementKind,
    Enterprise,
    ModelError,
    RelationshipKind,
    Span,
    Subgroup,
    SuperKind,
    equivalent,
    taxonomy,
)

KR = ElementKind.KEY_RESOURCE
KA = ElementKind.KEY_ACTIVITY
KP = ElementKind.KEY_PARTNERSHIP
CS = ElementKind.CUSTOMER_SEGMENT
VP = ElementKind.VALUE_PROPOSITION
CH = ElementKind.CHANNEL
CR = ElementKind.CUSTOMER_RELATIONSHIP
RS = ElementKind.REVENUE_STREAM
CO = ElementKind.COST_STRUCTURE


def test_exactly_nine_kinds_in_fixed_order():
    assert [k.abbrev for k in ElementKind] == [
        "KR", "KA", "KP", "CS", "VP", "CH", "CR", "R$", "C$",
    ]


@pytest.mark.parametrize(
    "kind, superkind, subgroup",
    [
        (KR, SuperKind.KEY, Subgroup.INTERNAL_KEY),
        (KA, SuperKind.KEY, Subgroup.INTERNAL_KEY),
        (KP, SuperKind.KEY, Subgroup.EXTERNAL_KEY),
        (CS, SuperKind.VALUE, Subgroup.VALUE_CREATION),
        (VP, SuperKind.VALUE, Subgroup.VALUE_CREATION),
        (CH, SuperKind.VALUE, Subgroup.VALUE_DELIVERY),
        (CR, SuperKind.VALUE, Subgroup.VALUE_DELIVERY),
        (RS, SuperKind.PERFORMANCE, Subgroup.PERFORMANCE),
        (CO, SuperKind.PERFORMANCE, Subgroup.PERFORMANCE),
    ],
)
def test_taxonomy_is_total(kind, superkind, subgroup):
    assert taxonomy(kind) == (superkind, subgroup)


def test_superkind_partition():
    key = {k for k in ElementKind if taxonomy(k)[0] is SuperKind.KEY}
    value = {k for k in ElementKind if taxonomy(k)[0] is SuperKind.VALUE}
    perf = {k for k in ElementKind if taxonomy(k)[0] is SuperKind.PERFORMANCE}
    assert key == {KR, KA, KP}
    assert value == {CS, VP, CH, CR}
    assert perf == {RS, CO}
    subgroups = {}
    for kind in ElementKind:
        subgroups.setdefault(taxonomy(kind)[1], set()).add(kind)
    assert set().union(*subgroups.values()) == set(ElementKind)
    assert sum(len(v) for v in subgroups.values()) == 9


@given(st.permutations(list(ElementKind)))
def test_kind_order_is_a_stable_sort_key(shuffled):
    once = sorted(shuffled)
    assert sorted(once) == once
    assert once == list(ElementKind)


def test_from_token_accepts_keyword_and_abbrev():
    assert ElementKind.from_token("key_resource") is KR
    assert ElementKind.from_token("kr") is KR
    assert ElementKind.from_token("R$") is RS
    assert ElementKind.from_token("nope") is None
    assert ElementKind.from_keyword("KR") is None


def test_add_element_and_resolve():
    bm = BusinessModel("M")
    factory = bm.add_element(KR, "Factory")
    assert bm.resolve("Factory") is factory
    assert bm.resolve("Ghost") is None


def test_add_element_rejects_duplicate_id():
    bm = BusinessModel("M")
    bm.add_element(KR, "Factory")
    with pytest.raises(ModelError) as exc:
        bm.add_element(KA, "Factory")
    assert exc.value.code == "E003"


def test_add_element_rejects_malformed_id():
    bm = BusinessModel("M")
    with pytest.raises(ModelError) as exc:
        bm.add_element(KR, "9x")
    assert exc.value.code == "E004"


def test_nest_element_same_kind_ok():
    bm = BusinessModel("M")
    factory = bm.add_element(KR, "Factory")
    lathe = bm.nest_element(factory, Element("Lathe", KR, "Lathe"))
    assert bm.resolve("Lathe") is lathe
    assert factory.children == [lathe]


def test_nest_element_rejects_kind_mismatch():
    bm = BusinessModel("M")
    factory = bm.add_element(KR, "Factory")
    with pytest.raises(ModelError) as exc:
        bm.nest_element(factory, Element("Work", KA, "Work"))
    assert exc.value.code == "E005"


def test_nest_element_rejects_duplicate_id():
    bm = BusinessModel("M")
    factory = bm.add_element(KR, "Factory")
    bm.add_element(KR, "Lathe")
    with pytest.raises(ModelError) as exc:
        bm.nest_element(factory, Element("Lathe", KR, "Lathe"))
    assert exc.value.code == "E003"


def test_add_relationship_endpoints_must_resolve():
    bm = BusinessModel("M")
    bm.add_element(KR, "Factory")
    with pytest.raises(ModelError) as exc:
        bm.add_relationship("Factory", "Ghost", RelationshipKind.SUPPORTS)
    assert exc.value.code == "E002"


def test_add_relationship_rejects_duplicate_ordered_pair():
    bm = BusinessModel("M")
    bm.add_element(KR, "Factory")
    bm.add_element(KA, "Production")
    bm.add_relationship("Factory", "Production", RelationshipKind.SUPPORTS)
    with pytest.raises(ModelError) as exc:
        bm.add_relationship("Factory", "Production", RelationshipKind.SUPPORTS)
    assert exc.value.code == "E013"
    # the reverse ordered pair is a distinct slot
    bm.add_relationship("Production", "Factory", RelationshipKind.SUPPORTS)


def test_relationship_to_nested_child_resolves():
    bm = BusinessModel("M")
    factory = bm.add_element(KR, "Factory")
    bm.nest_element(factory, Element("Lathe", KR, "Lathe"))
    bm.add_element(KA, "Production")
    rel = bm.add_relationship("Lathe", "Production", RelationshipKind.SUPPORTS)
    assert rel in bm.relationships


def test_nested_business_model_opens_fresh_namespace():
    bm = BusinessModel("Outer")
    bm.add_element(KR, "Plant")
    inner = bm.add_business_model("Inner")
    inner.add_element(KR, "Plant")  # no clash across namespaces
    assert bm.resolve("Plant") is not inner.resolve("Plant")
    with pytest.raises(ModelError):
        inner.add_relationship("Plant", "Missing", RelationshipKind.SUPPORTS)


def test_element_children_form_a_forest():
    bm = BusinessModel("M")
    factory = bm.add_element(KR, "Factory")
    lathe = bm.nest_element(factory, Element("Lathe", KR, "Lathe"))
    bm.nest_element(lathe, Element("Chuck", KR, "Chuck"))
    seen = [e.id for e in bm.iter_elements()]
    assert seen == ["Factory", "Lathe", "Chuck"]

    # no element is its own ancestor
    def ancestors_ok(element, trail):
        assert element.id not in trail
        for child in element.children:
            ancestors_ok(child, trail | {element.id})
    for top in bm.elements:
        ancestors_ok(top, set())


def test_span_validation():
    with pytest.raises(ValueError):
        Span(3, 1)
    with pytest.raises(ValueError):
        Span(-1, 0)


def test_spans_do_not_affect_equality():
    a = Element("X", KR, "X", span=Span(0, 5))
    b = Element("X", KR, "X", span=Span(7, 9))
    assert a == b


def test_equivalent_ignores_canonical_reordering():
    left = Enterprise("E", [BusinessModel("M")])
    right = Enterprise("E", [BusinessModel("M")])
    left.business_models[0].add_element(KA, "Production")
    left.business_models[0].add_element(KR, "Factory")
    right.business_models[0].add_element(KR, "Factory")
    right.business_models[0].add_element(KA, "Production")
    assert left != right
    assert equivalent(left, right)


def test_equivalent_detects_differences():
    left = Enterprise("E", [BusinessModel("M")])
    right = Enterprise("E", [BusinessModel("M")])
    left.business_models[0].add_element(KR, "Factory")
    right.business_models[0].add_element(KR, "Factory", name="The factory")
    assert not equivalent(left, right)
