"""Model validation: policy conformance, structural checks, and lints.

Validation never mutates or raises; every finding is a ``Diagnostic``.
Output order is deterministic: business models in declaration order, and
within one model structural findings (element order, then relationship
order), policy findings (relationship order), then lints.
"""
from __future__ import annotations

from collections import Counter

from . import diagnostics as dc
from .diagnostics import Diagnostic, error, warning
from .model import (
    ID_PATTERN,
    BusinessModel,
    Element,
    ElementKind,
    Enterprise,
    Relationship,
    RelationshipKind,
)
from .policy import citation_rule, required_kind


def check_relationship(rel: Relationship, bm: BusinessModel) -> list[Diagnostic]:
    """Policy verdict for one relationship whose endpoints resolve."""
    source = bm.resolve(rel.source)
    target = bm.resolve(rel.target)
    assert source is not None and target is not None, "endpoints must resolve"

    if source is target:
        if rel.kind is RelationshipKind.SUPPORTS:
            return []
        return [
            error(
                dc.E_WRONG_KIND,
                f"self-relationship on '{rel.source}' must be supports, "
                f"found {rel.kind.value}",
                span=rel.span,
                rule_refs=("DR1",),
                fix_hint=f"use: {rel.source} supports {rel.source}",
            )
        ]

    entry = required_kind(source.kind, target.kind)
    pair = f"{source.kind.abbrev} -> {target.kind.abbrev}"
    if entry.required:
        if rel.kind is entry.kind:
            return []
        rule = citation_rule(source.kind, target.kind)
        refs = (rule.rule_id,) if rule else ()
        detail = f" ({rule.rule_id}: {rule.summary})" if rule else ""
        return [
            error(
                dc.E_WRONG_KIND,
                f"{pair} requires {entry.kind.value}, found {rel.kind.value}{detail}",
                span=rel.span,
                rule_refs=refs,
                fix_hint=f"use: {rel.source} {entry.kind.value} {rel.target}",
            )
        ]

    # Reverse-only: no edge in this direction; cite the rule that mandates
    # the reverse edge.
    rule = citation_rule(target.kind, source.kind)
    refs = (rule.rule_id,) if rule else ()
    return [
        error(
            dc.E_WRONG_DIRECTION,
            f"{pair} relationships are stored in the opposite direction only",
            span=rel.span,
            rule_refs=refs,
            fix_hint=f"reverse: {rel.target} {entry.kind.value} {rel.source}",
        )
    ]


def validate(enterprise: Enterprise, lints: bool = True) -> list[Diagnostic]:
    """Validate a whole enterprise, nested business models included."""
    out: list[Diagnostic] = []
    if not enterprise.business_models:
        out.append(
            error(dc.E_SYNTAX, "an enterprise must own at least one business model")
        )
    if lints:
        out.extend(_shared_name_lints(enterprise.business_models))
    for bm in enterprise.business_models:
        _validate_bm(bm, out, lints)
    return out


def _validate_bm(bm: BusinessModel, out: list[Diagnostic], lints: bool) -> None:
    resolved = _structural_pass(bm, out)
    for rel in bm.relationships:
        if id(rel) in resolved:
            out.extend(check_relationship(rel, bm))
    if lints:
        out.extend(lint(bm))
    for nested in bm.business_models:
        _validate_bm(nested, out, lints)


def _structural_pass(bm: BusinessModel, out: list[Diagnostic]) -> set[int]:
    """Namespace and shape checks for models built from external data.

    Returns the identities (``id()``) of relationships whose endpoints
    resolve and that are not duplicates; only those get a policy verdict.
    """
    seen_ids: dict[str, Element] = {}

    def visit(element: Element, parent: Element | None) -> None:
        if not ID_PATTERN.match(element.id):
            out.append(error(dc.E_MALFORMED_ID, f"malformed element id '{element.id}'",
                             span=element.span))
        elif element.id in seen_ids:
            out.append(error(dc.E_DUPLICATE_ID, f"duplicate element id '{element.id}'",
                             span=element.span))
        else:
            seen_ids[element.id] = element
        if parent is not None and element.kind is not parent.kind:
            out.append(error(
                dc.E_NEST_KIND,
                f"child '{element.id}' has kind {element.kind.keyword}, expected "
                f"{parent.kind.keyword} (children decompose their parent)",
                span=element.span,
            ))
        if element.vrin is not None and element.kind is not ElementKind.KEY_RESOURCE:
            out.append(error(
                dc.E_BAD_VRIN,
                f"'{element.id}' carries a vrin annotation but is a "
                f"{element.kind.keyword}; vrin applies to key resources only",
                span=element.span,
            ))
        for child in element.children:
            visit(child, element)

    for element in bm.elements:
        visit(element, None)

    ok: set[int] = set()
    seen_pairs: set[tuple[str, str]] = set()
    for rel in bm.relationships:
        unresolved = [eid for eid in (rel.source, rel.target) if bm.resolve(eid) is None]
        if unresolved:
            for eid in unresolved:
                out.append(error(dc.E_UNRESOLVED, f"unresolved element id '{eid}'",
                                 span=rel.span))
            continue
        pair = (rel.source, rel.target)
        if pair in seen_pairs:
            out.append(error(
                dc.E_DUPLICATE_REL,
                f"duplicate relationship {rel.source} -> {rel.target}",
                span=rel.span,
            ))
            continue
        seen_pairs.add(pair)
        ok.add(id(rel))
    return ok


def lint(bm: BusinessModel) -> list[Diagnostic]:
    """Advisory warnings for one business model (non-recursive)."""
    out: list[Diagnostic] = []
    incident: Counter[str] = Counter()
    incoming_determines: dict[str, list[str]] = {}
    for rel in bm.relationships:
        incident[rel.source] += 1
        incident[rel.target] += 1
        if rel.kind is RelationshipKind.DETERMINES:
            incoming_determines.setdefault(rel.target, []).append(rel.source)

    elements = list(bm.iter_elements())
    for element in elements:
        if incident[element.id] == 0:
            out.append(warning(
                dc.W_UNCONNECTED,
                f"'{element.id}' has no relationships",
                span=element.span,
            ))

    present = {element.kind for element in elements}
    for kind in ElementKind:
        if kind not in present:
            out.append(warning(
                dc.W_EMPTY_BLOCK,
                f"business model '{bm.name}' has no {kind.keyword} element",
            ))

    for element in elements:
        if element.kind is ElementKind.REVENUE_STREAM:
            if not incoming_determines.get(element.id):
                out.append(warning(
                    dc.W_UNDETERMINED_REVENUE,
                    f"revenue stream '{element.id}' is not determined by anything",
                    span=element.span,
                ))
        elif element.kind is ElementKind.VALUE_PROPOSITION:
            sources = incoming_determines.get(element.id, [])
            if not any(
                (src := bm.resolve(s)) is not None
                and src.kind is ElementKind.CUSTOMER_SEGMENT
                for s in sources
            ):
                out.append(warning(
                    dc.W_UNTARGETED_PROPOSITION,
                    f"value proposition '{element.id}' is not determined by any "
                    "customer segment",
                    span=element.span,
                ))
        elif element.kind is ElementKind.KEY_RESOURCE and element.vrin is None:
            out.append(warning(
                dc.W_MISSING_VRIN,
                f"key resource '{element.id}' has no vrin annotation",
                span=element.span,
            ))

    out.extend(_shared_name_lints(bm.business_models))
    return out


def _shared_name_lints(siblings: list[BusinessModel]) -> list[Diagnostic]:
    """W106: identically named elements across sibling business models."""
    owners: dict[str, list[str]] = {}
    for bm in siblings:
        for element in bm.iter_elements():
            bucket = owners.setdefault(element.name, [])
            if bm.name not in bucket:
                bucket.append(bm.name)
    out = []
    for name in sorted(n for n, bms in owners.items() if len(bms) > 1):
        bms = ", ".join(f"'{b}'" for b in owners[name])
        out.append(warning(
            dc.W_SHARED_NAME,
            f"element name '{name}' appears in sibling business models {bms}; "
            "possibly a shared resource",
        ))
    return out
