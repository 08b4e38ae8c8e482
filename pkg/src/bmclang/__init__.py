"""bmclang: a compiler-style toolchain for a textual business model canvas
language — parse, validate against the relationship policy, and emit
canonical JSON, DOT graphs, and SVG canvases."""
from .diagnostics import Diagnostic, Severity
from .model import (
    BusinessModel,
    Element,
    ElementKind,
    Enterprise,
    ModelError,
    Relationship,
    RelationshipKind,
    Span,
    Subgroup,
    SuperKind,
    VrinAnnotation,
    equivalent,
    taxonomy,
)
from .policy import (
    PolicyEntry,
    classify_verb,
    policy_census,
    required_kind,
    rules_crosscheck,
)
from .validation import check_relationship, lint, validate

__all__ = [
    "BusinessModel",
    "Diagnostic",
    "Element",
    "ElementKind",
    "Enterprise",
    "ModelError",
    "PolicyEntry",
    "Relationship",
    "RelationshipKind",
    "Severity",
    "Span",
    "Subgroup",
    "SuperKind",
    "VrinAnnotation",
    "check_relationship",
    "classify_verb",
    "equivalent",
    "lint",
    "policy_census",
    "required_kind",
    "rules_crosscheck",
    "taxonomy",
    "validate",
]

__version__ = "0.1.0"
