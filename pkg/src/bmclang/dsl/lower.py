"""Lowering from concrete syntax to the data model.

Two passes per business model: all element declarations are bound first
(nested children included), then relationships are resolved, so edges may
appear textually before the elements they name. Passive verbs are
normalised by swapping endpoints; the stored model holds active kinds
only. Offending items (duplicate ids, unresolved or duplicate edges,
mismatched children) are reported and dropped, never stored.
"""
from __future__ import annotations

from .. import diagnostics as dc
from ..diagnostics import Diagnostic, error
from ..model import (
    BusinessModel,
    Element,
    ElementKind,
    Enterprise,
    Relationship,
    VrinAnnotation,
)
from .parser import (
    BusinessModelNode,
    DescNode,
    ElementNode,
    RelationNode,
    SourceTree,
    VrinNode,
)


def lower(tree: SourceTree) -> tuple[Enterprise, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    if tree.enterprise is None:
        return Enterprise(""), diags
    enterprise = Enterprise(tree.enterprise.name)
    for bm_node in tree.enterprise.business_models:
        enterprise.business_models.append(_lower_bm(bm_node, diags))
    return enterprise, diags


def _lower_bm(node: BusinessModelNode, diags: list[Diagnostic]) -> BusinessModel:
    bm = BusinessModel(node.name)
    namespace: dict[str, Element] = {}

    # Pass 1: declare every element, nested children included.
    for item in node.items:
        if isinstance(item, ElementNode):
            element = _lower_element(item, None, namespace, diags)
            if element is not None:
                bm.elements.append(element)

    # Pass 2: resolve relationships; forward references are fine.
    seen_pairs: set[tuple[str, str]] = set()
    for item in node.items:
        if isinstance(item, RelationNode):
            rel = _lower_relationship(item, namespace, seen_pairs, diags)
            if rel is not None:
                bm.relationships.append(rel)

    for item in node.items:
        if isinstance(item, BusinessModelNode):
            bm.business_models.append(_lower_bm(item, diags))
    return bm


def _lower_element(
    node: ElementNode,
    parent: ElementNode | None,
    namespace: dict[str, Element],
    diags: list[Diagnostic],
) -> Element | None:
    if not node.element_id:
        return None  # parser already reported the missing id
    if parent is not None and node.kind is not parent.kind:
        diags.append(error(
            dc.E_NEST_KIND,
            f"child '{node.element_id}' has kind {node.kind.keyword}, expected "
            f"{parent.kind.keyword} (children decompose their parent)",
            span=node.span,
        ))
        return None
    if node.element_id in namespace:
        diags.append(error(
            dc.E_DUPLICATE_ID,
            f"duplicate element id '{node.element_id}'",
            span=node.id_span,
        ))
        return None
    name = node.display_name if node.display_name is not None else node.element_id
    element = Element(node.element_id, node.kind, name, span=node.span)
    namespace[node.element_id] = element
    for body_item in node.body:
        if isinstance(body_item, DescNode):
            element.description = body_item.text
        elif isinstance(body_item, VrinNode):
            if node.kind is not ElementKind.KEY_RESOURCE:
                diags.append(error(
                    dc.E_BAD_VRIN,
                    f"'{node.element_id}' carries a vrin annotation but is a "
                    f"{node.kind.keyword}; vrin applies to key resources only",
                    span=body_item.span,
                ))
            else:
                element.vrin = VrinAnnotation(*body_item.flags)
        elif isinstance(body_item, ElementNode):
            child = _lower_element(body_item, node, namespace, diags)
            if child is not None:
                element.children.append(child)
    return element


def _lower_relationship(
    node: RelationNode,
    namespace: dict[str, Element],
    seen_pairs: set[tuple[str, str]],
    diags: list[Diagnostic],
) -> Relationship | None:
    if node.passive:
        source, target = node.target, node.source
        source_span, target_span = node.target_span, node.source_span
    else:
        source, target = node.source, node.target
        source_span, target_span = node.source_span, node.target_span
    missing = False
    for eid, span in ((source, source_span), (target, target_span)):
        if eid not in namespace:
            diags.append(error(dc.E_UNRESOLVED, f"unresolved element id '{eid}'",
                               span=span))
            missing = True
    if missing:
        return None
    pair = (source, target)
    if pair in seen_pairs:
        diags.append(error(
            dc.E_DUPLICATE_REL,
            f"duplicate relationship {source} -> {target}",
            span=node.span,
        ))
        return None
    seen_pairs.add(pair)
    return Relationship(source, target, node.kind, label=node.label, span=node.span)
