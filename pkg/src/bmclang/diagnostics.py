"""Diagnostic values shared by the validator, the parsers, and the emitters.

Code families:
- E0xx  structural and syntactic errors
- E01x  relationship-policy errors (E010 wrong kind, E011 wrong direction)
- W1xx  advisory lints; never block
- DR1..DR11 design-rule ids, carried in ``rule_refs``
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .model import Span


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


# Structural / syntactic
E_SYNTAX = "E001"  # lexical, parse, or containment-shape error
E_UNRESOLVED = "E002"
E_DUPLICATE_ID = "E003"
E_MALFORMED_ID = "E004"
E_NEST_KIND = "E005"
E_UNKNOWN_VERB = "E006"
E_SCHEMA = "E007"
E_BAD_VRIN = "E008"
# Relationship policy
E_WRONG_KIND = "E010"
E_WRONG_DIRECTION = "E011"
E_DUPLICATE_REL = "E013"
# Lints
W_UNCONNECTED = "W101"
W_EMPTY_BLOCK = "W102"
W_UNDETERMINED_REVENUE = "W103"
W_UNTARGETED_PROPOSITION = "W104"
W_MISSING_VRIN = "W105"
W_SHARED_NAME = "W106"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: Span | None = None
    rule_refs: tuple[str, ...] = ()
    fix_hint: str | None = None

    def to_wire(self) -> dict:
        """JSON-ready dict; optional fields are omitted when absent."""
        payload: dict = {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
        }
        if self.span is not None:
            payload["span"] = {"start": self.span.start, "end": self.span.end}
        if self.rule_refs:
            payload["rule"] = ",".join(self.rule_refs)
        if self.fix_hint is not None:
            payload["hint"] = self.fix_hint
        return payload


def error(code: str, message: str, span: Span | None = None,
          rule_refs: tuple[str, ...] = (), fix_hint: str | None = None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span, rule_refs, fix_hint)


def warning(code: str, message: str, span: Span | None = None,
            rule_refs: tuple[str, ...] = (), fix_hint: str | None = None) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, span, rule_refs, fix_hint)


def has_errors(diagnostics) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


def line_col(text: str, byte_offset: int) -> tuple[int, int]:
    """1-based line and column (in characters) of a byte offset in ``text``."""
    data = text.encode("utf-8")
    prefix = data[: max(0, min(byte_offset, len(data)))].decode("utf-8", errors="replace")
    line = prefix.count("\n") + 1
    last_nl = prefix.rfind("\n")
    column = len(prefix) - last_nl if last_nl >= 0 else len(prefix) + 1
    return line, column
