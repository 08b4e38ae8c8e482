"""Tokenizer for the canvas language.

Maximal munch over UTF-8 text; spans are byte offsets. Comments (``//``
to end of line, non-nesting ``/* */``) and whitespace are trivia. No
input raises: lexical problems become spanned diagnostics and lexing
continues.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .. import diagnostics as dc
from ..diagnostics import Diagnostic, error
from ..model import ElementKind, RelationshipKind, Span


class TokenKind(Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    STRING = "string"
    PUNCT = "punctuation"
    EOF = "end"


KIND_KEYWORDS: dict[str, ElementKind] = {}
for _kind in ElementKind:
    KIND_KEYWORDS[_kind.keyword] = _kind
    KIND_KEYWORDS[_kind.abbrev] = _kind

ACTIVE_VERBS = {kind.value: kind for kind in RelationshipKind}
PASSIVE_VERBS = {kind.passive: kind for kind in RelationshipKind}

KEYWORDS = frozenset(
    {"enterprise", "business_model", "desc", "vrin", "true", "false"}
    | KIND_KEYWORDS.keys()
    | ACTIVE_VERBS.keys()
    | PASSIVE_VERBS.keys()
)

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n"}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span
    value: str = ""  # decoded text for STRING tokens

    def is_keyword(self, word: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.lexeme == word


def _blen(text: str) -> int:
    return len(text.encode("utf-8"))


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    i = 0          # character index
    off = 0        # byte offset
    n = len(text)

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            off += _blen(c)
            continue
        if text.startswith("//", i):
            j = text.find("\n", i)
            j = n if j < 0 else j
            off += _blen(text[i:j])
            i = j
            continue
        if text.startswith("/*", i):
            j = text.find("*/", i + 2)
            if j < 0:
                diags.append(error(dc.E_SYNTAX, "unterminated comment",
                                   span=Span(off, off + _blen(text[i:]))))
                i = n
                continue
            off += _blen(text[i:j + 2])
            i = j + 2
            continue
        if c == '"':
            token, i, off, problems = _lex_string(text, i, off)
            tokens.append(token)
            diags.extend(problems)
            continue
        if c in "{},":
            tokens.append(Token(TokenKind.PUNCT, c, Span(off, off + 1)))
            i += 1
            off += 1
            continue
        if text[i:i + 2] in ("R$", "C$"):
            tokens.append(Token(TokenKind.KEYWORD, text[i:i + 2], Span(off, off + 2)))
            i += 2
            off += 2
            continue
        if c.isascii() and (c.isalpha() or c == "_"):
            j = i + 1
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENT
            tokens.append(Token(kind, word, Span(off, off + len(word))))
            i = j
            off += len(word)
            continue
        diags.append(error(dc.E_SYNTAX, f"unexpected character {c!r}",
                           span=Span(off, off + _blen(c))))
        i += 1
        off += _blen(c)

    tokens.append(Token(TokenKind.EOF, "", Span(off, off)))
    return tokens, diags


def _lex_string(text: str, i: int, off: int) -> tuple[Token, int, int, list[Diagnostic]]:
    """Lex a double-quoted string starting at ``text[i]``.

    Strings may not contain raw newlines; ``\\"``, ``\\\\`` and ``\\n``
    are the recognised escapes.
    """
    problems: list[Diagnostic] = []
    n = len(text)
    start_off = off
    j = i + 1
    parts: list[str] = []
    closed = False
    while j < n and text[j] != "\n":
        ch = text[j]
        if ch == '"':
            j += 1
            closed = True
            break
        if ch == "\\" and j + 1 < n:
            follower = text[j + 1]
            if follower in _ESCAPES:
                parts.append(_ESCAPES[follower])
                j += 2
                continue
            esc_off = start_off + _blen(text[i:j])
            problems.append(error(
                dc.E_SYNTAX, f"unknown escape '\\{follower}'",
                span=Span(esc_off, esc_off + 1 + _blen(follower)),
            ))
            if follower != "\n":
                parts.append(follower)
                j += 2
                continue
            j += 1
            continue
        parts.append(ch)
        j += 1
    lexeme = text[i:j]
    end_off = start_off + _blen(lexeme)
    if not closed:
        problems.append(error(dc.E_SYNTAX, "unterminated string",
                              span=Span(start_off, end_off)))
    token = Token(TokenKind.STRING, lexeme, Span(start_off, end_off), value="".join(parts))
    return token, j, end_off, problems
