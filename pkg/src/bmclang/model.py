"""Typed data model for business model canvases.

Construction is deliberately unchecked with respect to the relationship
policy: a model may hold edges the rules module rejects, so that invalid
files can be loaded and fully diagnosed. Only namespace hygiene (ids,
nesting) is enforced by the builder methods here.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering


@total_ordering
class ElementKind(Enum):
    """The nine canvas element kinds, in their fixed canonical order."""

    KEY_RESOURCE = ("key_resource", "KR")
    KEY_ACTIVITY = ("key_activity", "KA")
    KEY_PARTNERSHIP = ("key_partnership", "KP")
    CUSTOMER_SEGMENT = ("customer_segment", "CS")
    VALUE_PROPOSITION = ("value_proposition", "VP")
    CHANNEL = ("channel", "CH")
    CUSTOMER_RELATIONSHIP = ("customer_relationship", "CR")
    REVENUE_STREAM = ("revenue_stream", "R$")
    COST_STRUCTURE = ("cost_structure", "C$")

    def __init__(self, keyword: str, abbrev: str) -> None:
        self.keyword = keyword
        self.abbrev = abbrev

    @property
    def index(self) -> int:
        return _KIND_INDEX[self]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ElementKind):
            return NotImplemented
        return self.index < other.index

    @classmethod
    def from_keyword(cls, word: str) -> ElementKind | None:
        """Strict lookup by the snake_case keyword (the wire spelling)."""
        return _BY_KEYWORD.get(word)

    @classmethod
    def from_token(cls, token: str) -> ElementKind | None:
        """Lenient lookup: keyword or abbreviation, case-insensitive."""
        return _BY_TOKEN.get(token.lower())


_KIND_INDEX = {kind: i for i, kind in enumerate(ElementKind)}
_BY_KEYWORD = {kind.keyword: kind for kind in ElementKind}
_BY_TOKEN = {kind.keyword: kind for kind in ElementKind}
_BY_TOKEN.update({kind.abbrev.lower(): kind for kind in ElementKind})


class SuperKind(Enum):
    KEY = "KE"
    VALUE = "VE"
    PERFORMANCE = "PE"

    @property
    def label(self) -> str:
        return _SUPERKIND_LABELS[self]


_SUPERKIND_LABELS = {
    SuperKind.KEY: "Key Elements",
    SuperKind.VALUE: "Value Elements",
    SuperKind.PERFORMANCE: "Performance Elements",
}


class Subgroup(Enum):
    INTERNAL_KEY = "internal_key"
    EXTERNAL_KEY = "external_key"
    VALUE_CREATION = "value_creation"
    VALUE_DELIVERY = "value_delivery"
    PERFORMANCE = "performance"


_TAXONOMY = {
    ElementKind.KEY_RESOURCE: (SuperKind.KEY, Subgroup.INTERNAL_KEY),
    ElementKind.KEY_ACTIVITY: (SuperKind.KEY, Subgroup.INTERNAL_KEY),
    ElementKind.KEY_PARTNERSHIP: (SuperKind.KEY, Subgroup.EXTERNAL_KEY),
    ElementKind.CUSTOMER_SEGMENT: (SuperKind.VALUE, Subgroup.VALUE_CREATION),
    ElementKind.VALUE_PROPOSITION: (SuperKind.VALUE, Subgroup.VALUE_CREATION),
    ElementKind.CHANNEL: (SuperKind.VALUE, Subgroup.VALUE_DELIVERY),
    ElementKind.CUSTOMER_RELATIONSHIP: (SuperKind.VALUE, Subgroup.VALUE_DELIVERY),
    ElementKind.REVENUE_STREAM: (SuperKind.PERFORMANCE, Subgroup.PERFORMANCE),
    ElementKind.COST_STRUCTURE: (SuperKind.PERFORMANCE, Subgroup.PERFORMANCE),
}


def taxonomy(kind: ElementKind) -> tuple[SuperKind, Subgroup]:
    """Return the superkind and subgroup an element kind belongs to."""
    return _TAXONOMY[kind]


class RelationshipKind(Enum):
    SUPPORTS = "supports"
    DETERMINES = "determines"
    AFFECTS = "affects"

    @property
    def passive(self) -> str:
        """Surface-language alias naming the same edge read from the target."""
        return _PASSIVE[self]


_PASSIVE = {
    RelationshipKind.SUPPORTS: "is_supported_by",
    RelationshipKind.DETERMINES: "is_determined_by",
    RelationshipKind.AFFECTS: "is_affected_by",
}

ID_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Span:
    """Byte range [start, end) into a source text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid span ({self.start}, {self.end})")


@dataclass(frozen=True)
class VrinAnnotation:
    """Resource-assessment flags, attachable to key resources only."""

    valuable: bool
    rare: bool
    inimitable: bool
    non_substitutable: bool

    def as_list(self) -> list[bool]:
        return [self.valuable, self.rare, self.inimitable, self.non_substitutable]


class ModelError(Exception):
    """Raised by the builder methods on namespace or shape violations."""

    def __init__(self, code: str, message: str) -> None:
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


@dataclass(eq=True)
class Element:
    """A named, typed node. Children decompose the element into parts of
    the same kind; they share the owning model's id namespace."""

    id: str
    kind: ElementKind
    name: str
    description: str | None = None
    vrin: VrinAnnotation | None = None
    children: list[Element] = field(default_factory=list)
    # Source provenance; excluded from structural equality.
    span: Span | None = field(default=None, compare=False)

    def walk(self):
        """Yield this element and all nested children, pre-order."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(eq=True)
class Relationship:
    """A directed edge between two elements of the same business model."""

    source: str
    target: str
    kind: RelationshipKind
    label: str | None = None
    span: Span | None = field(default=None, compare=False)


@dataclass(eq=True)
class BusinessModel:
    """Owns elements, relationships, and optionally nested business models.

    Nested business models open fresh id namespaces: their elements are
    invisible to the parent and vice versa.
    """

    name: str
    elements: list[Element] = field(default_factory=list)
    relationships: list[Relationship] = field(default_factory=list)
    business_models: list[BusinessModel] = field(default_factory=list)

    def iter_elements(self):
        """All elements of this model including nested children, pre-order.

        Does not descend into nested business models.
        """
        for element in self.elements:
            yield from element.walk()

    def resolve(self, element_id: str) -> Element | None:
        for element in self.iter_elements():
            if element.id == element_id:
                return element
        return None

    def add_element(
        self,
        kind: ElementKind,
        element_id: str,
        name: str | None = None,
        description: str | None = None,
        vrin: VrinAnnotation | None = None,
    ) -> Element:
        _check_id(element_id)
        if self.resolve(element_id) is not None:
            raise ModelError("E003", f"duplicate element id '{element_id}'")
        if vrin is not None and kind is not ElementKind.KEY_RESOURCE:
            raise ModelError("E008", "vrin annotations apply to key resources only")
        element = Element(element_id, kind, name if name is not None else element_id,
                          description=description, vrin=vrin)
        self.elements.append(element)
        return element

    def nest_element(self, parent: Element, child: Element) -> Element:
        _check_id(child.id)
        if child.kind is not parent.kind:
            raise ModelError(
                "E005",
                f"child '{child.id}' has kind {child.kind.keyword}, expected "
                f"{parent.kind.keyword} (children decompose their parent)",
            )
        if self.resolve(child.id) is not None:
            raise ModelError("E003", f"duplicate element id '{child.id}'")
        parent.children.append(child)
        return child

    def add_relationship(
        self,
        source_id: str,
        target_id: str,
        kind: RelationshipKind,
        label: str | None = None,
    ) -> Relationship:
        for endpoint in (source_id, target_id):
            if self.resolve(endpoint) is None:
                raise ModelError("E002", f"unresolved element id '{endpoint}'")
        if any(r.source == source_id and r.target == target_id for r in self.relationships):
            raise ModelError(
                "E013", f"duplicate relationship {source_id} -> {target_id}"
            )
        relationship = Relationship(source_id, target_id, kind, label=label)
        self.relationships.append(relationship)
        return relationship

    def add_business_model(self, name: str) -> BusinessModel:
        nested = BusinessModel(name)
        self.business_models.append(nested)
        return nested


@dataclass(eq=True)
class Enterprise:
    """Root of a model: an enterprise owns one or more business models."""

    name: str
    business_models: list[BusinessModel] = field(default_factory=list)

    def add_business_model(self, name: str) -> BusinessModel:
        model = BusinessModel(name)
        self.business_models.append(model)
        return model

    def walk_business_models(self):
        """All business models, depth-first in declaration order."""
        stack = list(reversed(self.business_models))
        while stack:
            model = stack.pop()
            yield model
            stack.extend(reversed(model.business_models))


def _check_id(element_id: str) -> None:
    if not ID_PATTERN.match(element_id):
        raise ModelError("E004", f"malformed element id '{element_id}'")


def equivalent(a: Enterprise, b: Enterprise) -> bool:
    """Structural equality up to canonical reordering.

    The canonical formatter regroups elements by kind and sorts
    relationships, so round-tripped models compare equal under this
    relation even when the original declaration order differed.
    """
    if a.name != b.name or len(a.business_models) != len(b.business_models):
        return False
    return all(
        _bm_equivalent(x, y) for x, y in zip(a.business_models, b.business_models)
    )


def _bm_equivalent(a: BusinessModel, b: BusinessModel) -> bool:
    if a.name != b.name:
        return False
    a_elems = {e.id: e for e in a.elements}
    b_elems = {e.id: e for e in b.elements}
    if a_elems.keys() != b_elems.keys():
        return False
    if not all(_element_equivalent(a_elems[k], b_elems[k]) for k in a_elems):
        return False
    a_rels = {(r.source, r.target): r for r in a.relationships}
    b_rels = {(r.source, r.target): r for r in b.relationships}
    if a_rels.keys() != b_rels.keys():
        return False
    if not all(a_rels[k] == b_rels[k] for k in a_rels):
        return False
    if len(a.business_models) != len(b.business_models):
        return False
    return all(
        _bm_equivalent(x, y) for x, y in zip(a.business_models, b.business_models)
    )


def _element_equivalent(a: Element, b: Element) -> bool:
    if (a.id, a.kind, a.name, a.description, a.vrin) != (b.id, b.kind, b.name, b.description, b.vrin):
        return False
    a_children = {c.id: c for c in a.children}
    b_children = {c.id: c for c in b.children}
    if a_children.keys() != b_children.keys():
        return False
    return all(_element_equivalent(a_children[k], b_children[k]) for k in a_children)
