"""Hypothesis strategies for generating models."""
from __future__ import annotations

from hypothesis import strategies as st

from bmclang.model import (
    BusinessModel,
    Element,
    ElementKind,
    Enterprise,
    Relationship,
    RelationshipKind,
    VrinAnnotation,
)
from bmclang.policy import POLICY

identifiers = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,7}", fullmatch=True)
display_names = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",)), min_size=0, max_size=12
)
kinds = st.sampled_from(list(ElementKind))
rel_kinds = st.sampled_from(list(RelationshipKind))
vrins = st.builds(
    VrinAnnotation, st.booleans(), st.booleans(), st.booleans(), st.booleans()
)


@st.composite
def elements(draw, pool: list[str], kind=None):
    element_id = pool.pop()
    element_kind = kind if kind is not None else draw(kinds)
    element = Element(
        element_id,
        element_kind,
        draw(st.one_of(st.just(element_id), display_names)),
        description=draw(st.none() | display_names),
        vrin=draw(vrins)
        if element_kind is ElementKind.KEY_RESOURCE and draw(st.booleans())
        else None,
    )
    if pool and draw(st.booleans()):
        element.children.append(draw(elements(pool, kind=element_kind)))
    return element


@st.composite
def business_models(draw, legal_edges: bool = True, allow_nested: bool = True):
    count = draw(st.integers(min_value=0, max_value=5))
    pool = draw(
        st.lists(identifiers, min_size=count, max_size=count, unique=True)
    )
    bm = BusinessModel(draw(display_names))
    while pool:
        bm.elements.append(draw(elements(pool)))
    everything = list(bm.iter_elements())
    if len(everything) >= 2:
        pair_count = draw(st.integers(min_value=0, max_value=4))
        taken: set[tuple[str, str]] = set()
        for _ in range(pair_count):
            source = draw(st.sampled_from(everything))
            target = draw(st.sampled_from(everything))
            if (source.id, target.id) in taken:
                continue
            taken.add((source.id, target.id))
            if source is target:
                kind = RelationshipKind.SUPPORTS if legal_edges else draw(rel_kinds)
            elif legal_edges:
                entry = POLICY[(source.kind, target.kind)]
                if not entry.required:
                    continue
                kind = entry.kind
            else:
                kind = draw(rel_kinds)
            bm.relationships.append(Relationship(
                source.id, target.id, kind,
                label=draw(st.none() | display_names),
            ))
    if allow_nested and draw(st.integers(0, 9)) == 0:
        bm.business_models.append(
            draw(business_models(legal_edges=legal_edges, allow_nested=False))
        )
    return bm


@st.composite
def enterprises(draw, legal_edges: bool = True):
    model_count = draw(st.integers(min_value=1, max_value=2))
    return Enterprise(
        draw(display_names),
        [draw(business_models(legal_edges=legal_edges)) for _ in range(model_count)],
    )
