"""Textual surface language: tokenizer, parser, lowering, formatter."""
from __future__ import annotations

from ..diagnostics import Diagnostic
from ..model import Enterprise
from .formatter import format_enterprise
from .lexer import Token, TokenKind, tokenize
from .lower import lower
from .parser import SourceTree, parse

__all__ = [
    "Diagnostic",
    "SourceTree",
    "Token",
    "TokenKind",
    "format_enterprise",
    "lower",
    "parse",
    "parse_text",
    "tokenize",
]


def parse_text(text: str) -> tuple[Enterprise, list[Diagnostic]]:
    """Tokenize, parse, and lower in one step."""
    tokens, diags = tokenize(text)
    tree, parse_diags = parse(tokens)
    enterprise, lower_diags = lower(tree)
    return enterprise, diags + parse_diags + lower_diags
