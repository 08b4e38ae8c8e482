"""Recursive-descent parser producing a concrete syntax tree.

Grammar (terminals quoted)::

    file           := enterprise EOF
    enterprise     := "enterprise" STRING "{" business_model* "}"
    business_model := "business_model" STRING "{" item* "}"
    item           := element_decl | rel_decl | business_model
    element_decl   := kind_kw IDENT STRING? body?
    body           := "{" (("desc" STRING) | ("vrin" BOOL BOOL BOOL BOOL)
                           | element_decl)* "}"
    rel_decl       := IDENT verb IDENT ("," STRING)?

The written grammar requires at least one business model per enterprise;
that minimum is enforced by validation rather than here, so a skeleton
file still parses and gets a single structural diagnostic.

On a syntax error the parser records a diagnostic and resynchronises at
the next item boundary (``}``, a kind keyword, or ``business_model``), so
several errors surface in one pass.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .. import diagnostics as dc
from ..diagnostics import Diagnostic, error
from ..model import ElementKind, RelationshipKind, Span
from ..policy import classify_verb
from .lexer import ACTIVE_VERBS, KIND_KEYWORDS, PASSIVE_VERBS, Token, TokenKind


@dataclass
class DescNode:
    text: str
    span: Span


@dataclass
class VrinNode:
    flags: tuple[bool, bool, bool, bool]
    span: Span


@dataclass
class ElementNode:
    kind: ElementKind
    element_id: str
    id_span: Span
    display_name: str | None
    body: list = field(default_factory=list)  # DescNode | VrinNode | ElementNode
    span: Span = Span(0, 0)


@dataclass
class RelationNode:
    source: str
    source_span: Span
    kind: RelationshipKind
    passive: bool
    target: str
    target_span: Span
    label: str | None
    span: Span


@dataclass
class BusinessModelNode:
    name: str
    name_span: Span
    items: list = field(default_factory=list)
    span: Span = Span(0, 0)


@dataclass
class EnterpriseNode:
    name: str
    name_span: Span
    business_models: list[BusinessModelNode] = field(default_factory=list)
    span: Span = Span(0, 0)


@dataclass
class SourceTree:
    enterprise: EnterpriseNode | None
    span: Span


def parse(tokens: list[Token]) -> tuple[SourceTree, list[Diagnostic]]:
    parser = _Parser(tokens)
    tree = parser.parse_file()
    return tree, parser.diags


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.pos = 0
        self.diags: list[Diagnostic] = []

    # -- cursor helpers ------------------------------------------------
    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def at_eof(self) -> bool:
        return self.cur.kind is TokenKind.EOF

    def advance(self) -> Token:
        token = self.cur
        if not self.at_eof():
            self.pos += 1
        return token

    def at_punct(self, ch: str) -> bool:
        return self.cur.kind is TokenKind.PUNCT and self.cur.lexeme == ch

    def error_here(self, message: str, span: Span | None = None) -> None:
        self.diags.append(error(dc.E_SYNTAX, message, span=span or self.cur.span))

    def expect_punct(self, ch: str) -> bool:
        if self.at_punct(ch):
            self.advance()
            return True
        self.error_here(f"expected '{ch}', found {_describe(self.cur)}")
        return False

    def expect_string(self, what: str) -> tuple[str, Span]:
        if self.cur.kind is TokenKind.STRING:
            token = self.advance()
            return token.value, token.span
        self.error_here(f"expected {what} string, found {_describe(self.cur)}")
        return "", self.cur.span

    def at_item_boundary(self) -> bool:
        token = self.cur
        return (
            self.at_punct("}")
            or token.lexeme in KIND_KEYWORDS
            or token.is_keyword("business_model")
            or self.at_eof()
        )

    def sync_to_item_boundary(self) -> None:
        while not self.at_item_boundary():
            self.advance()

    # -- grammar -------------------------------------------------------
    def parse_file(self) -> SourceTree:
        start = self.cur.span.start
        enterprise = None
        if self.cur.is_keyword("enterprise"):
            enterprise = self.parse_enterprise()
        else:
            self.error_here(f"expected 'enterprise', found {_describe(self.cur)}")
            while not self.at_eof() and not self.cur.is_keyword("enterprise"):
                self.advance()
            if self.cur.is_keyword("enterprise"):
                enterprise = self.parse_enterprise()
        if not self.at_eof():
            self.error_here(f"unexpected {_describe(self.cur)} after enterprise block")
        return SourceTree(enterprise, Span(start, self.cur.span.end))

    def parse_enterprise(self) -> EnterpriseNode:
        start = self.advance().span.start  # 'enterprise'
        name, name_span = self.expect_string("enterprise name")
        node = EnterpriseNode(name, name_span)
        self.expect_punct("{")
        while not self.at_punct("}") and not self.at_eof():
            if self.cur.is_keyword("business_model"):
                node.business_models.append(self.parse_business_model())
            else:
                self.error_here(
                    f"expected 'business_model', found {_describe(self.cur)}"
                )
                self.advance()
                self.sync_to_item_boundary()
        end = self.cur.span.end
        self.expect_punct("}")
        node.span = Span(start, end)
        return node

    def parse_business_model(self) -> BusinessModelNode:
        start = self.advance().span.start  # 'business_model'
        name, name_span = self.expect_string("business model name")
        node = BusinessModelNode(name, name_span)
        if not self.expect_punct("{"):
            # resume at the next item boundary and read the block as if the
            # brace had been there
            self.sync_to_item_boundary()
        while not self.at_punct("}") and not self.at_eof():
            token = self.cur
            if token.lexeme in KIND_KEYWORDS and token.kind is TokenKind.KEYWORD:
                node.items.append(self.parse_element())
            elif token.is_keyword("business_model"):
                node.items.append(self.parse_business_model())
            elif token.kind is TokenKind.IDENT:
                rel = self.parse_relationship()
                if rel is not None:
                    node.items.append(rel)
            else:
                self.error_here(
                    "expected an element declaration, a relationship, or a nested "
                    f"business_model, found {_describe(token)}"
                )
                self.advance()
                self.sync_to_item_boundary()
        end = self.cur.span.end
        self.expect_punct("}")
        node.span = Span(start, end)
        return node

    def parse_element(self) -> ElementNode:
        kind_token = self.advance()
        kind = KIND_KEYWORDS[kind_token.lexeme]
        if self.cur.kind is TokenKind.IDENT:
            id_token = self.advance()
            element_id, id_span = id_token.lexeme, id_token.span
        else:
            self.error_here(f"expected element id, found {_describe(self.cur)}")
            element_id, id_span = "", kind_token.span
            self.sync_to_item_boundary()
            return ElementNode(kind, element_id, id_span, None, span=kind_token.span)
        display_name = None
        if self.cur.kind is TokenKind.STRING:
            display_name = self.advance().value
        node = ElementNode(kind, element_id, id_span, display_name)
        end = id_span.end
        if self.at_punct("{"):
            end = self.parse_body(node)
        node.span = Span(kind_token.span.start, end)
        return node

    def parse_body(self, node: ElementNode) -> int:
        self.advance()  # '{'
        while not self.at_punct("}") and not self.at_eof():
            token = self.cur
            if token.is_keyword("desc"):
                start = self.advance().span.start
                text, text_span = self.expect_string("description")
                node.body.append(DescNode(text, Span(start, text_span.end)))
            elif token.is_keyword("vrin"):
                start = self.advance().span.start
                flags: list[bool] = []
                end = start
                for _ in range(4):
                    if self.cur.lexeme in ("true", "false"):
                        flag_token = self.advance()
                        flags.append(flag_token.lexeme == "true")
                        end = flag_token.span.end
                    else:
                        self.error_here(
                            "vrin takes four booleans (valuable rare inimitable "
                            f"non_substitutable), found {_describe(self.cur)}"
                        )
                        break
                if len(flags) == 4:
                    node.body.append(VrinNode(tuple(flags), Span(start, end)))
                else:
                    self.sync_to_item_boundary()
            elif token.lexeme in KIND_KEYWORDS and token.kind is TokenKind.KEYWORD:
                node.body.append(self.parse_element())
            else:
                self.error_here(
                    f"expected 'desc', 'vrin', or a nested element, found "
                    f"{_describe(token)}"
                )
                self.advance()
                self.sync_to_item_boundary()
        end = self.cur.span.end
        self.expect_punct("}")
        return end

    def parse_relationship(self) -> RelationNode | None:
        source_token = self.advance()
        verb_token = self.cur
        if verb_token.lexeme in ACTIVE_VERBS:
            kind, passive = ACTIVE_VERBS[verb_token.lexeme], False
            self.advance()
        elif verb_token.lexeme in PASSIVE_VERBS:
            kind, passive = PASSIVE_VERBS[verb_token.lexeme], True
            self.advance()
        else:
            self._unknown_verb(source_token)
            return None
        if self.cur.kind is TokenKind.IDENT:
            target_token = self.advance()
        else:
            self.error_here(
                f"expected relationship target id, found {_describe(self.cur)}"
            )
            self.sync_to_item_boundary()
            return None
        label = None
        end = target_token.span.end
        if self.at_punct(","):
            self.advance()
            label, label_span = self.expect_string("relationship label")
            end = label_span.end
        return RelationNode(
            source_token.lexeme, source_token.span, kind, passive,
            target_token.lexeme, target_token.span, label,
            Span(source_token.span.start, end),
        )

    def _unknown_verb(self, source_token: Token) -> None:
        """Report E006 for a non-verb where a verb was expected.

        Multi-word synonym phrases (idents up to the final target id) are
        folded into one phrase so the lexicon can suggest the canonical
        verb.
        """
        words: list[Token] = []
        while self.cur.kind is TokenKind.IDENT:
            words.append(self.advance())
        if len(words) >= 2:
            phrase_tokens, target = words[:-1], words[-1]
        elif words:
            phrase_tokens, target = words, None
        else:
            self.error_here(
                f"expected relationship verb after '{source_token.lexeme}', found "
                f"{_describe(self.cur)}"
            )
            self.sync_to_item_boundary()
            return
        phrase = " ".join(t.lexeme for t in phrase_tokens).replace("_", " ")
        span = Span(phrase_tokens[0].span.start, phrase_tokens[-1].span.end)
        hint = None
        sense = classify_verb(phrase)
        if sense is not None:
            hint = (
                f"'{phrase}' reads as a {sense.value}-type relationship; use "
                f"'{sense.value}' (or '{sense.passive}' for the reverse reading)"
            )
        self.diags.append(error(
            dc.E_UNKNOWN_VERB,
            f"unknown relationship verb '{phrase}'",
            span=span,
            fix_hint=hint,
        ))
        if target is None:
            self.sync_to_item_boundary()
        elif self.at_punct(","):
            self.advance()
            if self.cur.kind is TokenKind.STRING:
                self.advance()


def _describe(token: Token) -> str:
    if token.kind is TokenKind.EOF:
        return "end of input"
    return f"{token.kind.value} '{token.lexeme}'"
