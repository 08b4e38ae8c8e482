"""Shared load-and-validate pipeline behind the CLI and the wire API.

Both front ends must report identical diagnostics for identical input,
so the whole sequence (parse or load, validate, envelope) lives here.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Diagnostic, Severity, has_errors
from .dsl import format_enterprise, lower, parse, tokenize
from .export import from_json, to_obj
from .model import Enterprise
from .validation import validate

SOURCES = ("dsl", "json")


@dataclass
class CheckResult:
    enterprise: Enterprise | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return not has_errors(self.diagnostics)


def check_text(text: str, source: str, lints: bool = True) -> CheckResult:
    """Load ``text`` in the given source format and fully validate it."""
    if source == "dsl":
        tokens, diags = tokenize(text)
        tree, parse_diags = parse(tokens)
        enterprise, lower_diags = lower(tree)
        diags = diags + parse_diags + lower_diags
        if tree.enterprise is None:
            return CheckResult(None, diags)
    elif source == "json":
        enterprise, diags = from_json(text)
        if has_errors(diags) and not enterprise.business_models and not enterprise.name:
            return CheckResult(None, diags)
    else:
        raise ValueError(f"unknown source format '{source}'")
    diags = diags + validate(enterprise, lints=lints)
    return CheckResult(enterprise, diags)


def format_text(text: str) -> tuple[str | None, list[Diagnostic]]:
    """Canonical rendering of DSL text, or None when it has errors."""
    tokens, diags = tokenize(text)
    tree, parse_diags = parse(tokens)
    enterprise, lower_diags = lower(tree)
    diags = diags + parse_diags + lower_diags
    if has_errors(diags) or tree.enterprise is None:
        return None, diags
    return format_enterprise(enterprise), diags


def deny_warnings(diagnostics: list[Diagnostic]) -> list[Diagnostic]:
    """Upgrade every warning to an error (CI mode)."""
    return [
        Diagnostic(Severity.ERROR, d.code, d.message, d.span, d.rule_refs, d.fix_hint)
        if d.severity is Severity.WARNING
        else d
        for d in diagnostics
    ]


def check_envelope(result: CheckResult) -> dict:
    """The wire shape shared by ``check --json`` and the validate endpoint."""
    envelope: dict = {
        "ok": result.ok,
        "diagnostics": [d.to_wire() for d in result.diagnostics],
    }
    if result.ok and result.enterprise is not None:
        envelope["model"] = to_obj(result.enterprise)
    return envelope
