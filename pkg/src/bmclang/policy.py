"""The normative relationship policy.

Every ordered pair of element kinds gets exactly one entry: either the
edge is legal in that direction with exactly one relationship kind
(``required``), or no edge is legal in that direction and the reverse
direction carries the kind (``reverse-only``). Same-kind pairs are always
``supports``; the revenue/cost pair is the single cross-kind pair legal in
both directions (mutual ``affects``).

The eleven design rules DR1..DR11 restate the same policy at rule level;
``rules_crosscheck`` brute-forces all 81 pairs to prove table and rules
agree. Two historically tempting misreadings are kept as deliberately
misconfigurable variants so the cross-check demonstrably catches them:

- applying the performance-pair rule (DR7, affects) to same-kind
  performance pairs, which the same-kind diagonal rule overrides;
- reading the cost-structure row of the summary matrix as "determined by"
  customer segments and value propositions, which DR10 (value elements
  affect cost structure) overrides.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .model import ElementKind, RelationshipKind, SuperKind, taxonomy

_KR = ElementKind.KEY_RESOURCE
_KA = ElementKind.KEY_ACTIVITY
_KP = ElementKind.KEY_PARTNERSHIP
_SEG = ElementKind.CUSTOMER_SEGMENT
_PROP = ElementKind.VALUE_PROPOSITION
_CHAN = ElementKind.CHANNEL
_REL = ElementKind.CUSTOMER_RELATIONSHIP
_REV = ElementKind.REVENUE_STREAM
_COST = ElementKind.COST_STRUCTURE

_S = RelationshipKind.SUPPORTS
_D = RelationshipKind.DETERMINES
_A = RelationshipKind.AFFECTS


@dataclass(frozen=True)
class PolicyEntry:
    """Verdict for one ordered kind pair."""

    required: bool
    kind: RelationshipKind

    @property
    def wire_entry(self) -> str:
        return "required" if self.required else "reverse-only"


# Active (legal-direction) edges, by source kind. The diagonal is implied.
_ACTIVE_CROSS: dict[tuple[ElementKind, ElementKind], RelationshipKind] = {}


def _active(source: ElementKind, kind: RelationshipKind, *targets: ElementKind) -> None:
    for target in targets:
        _ACTIVE_CROSS[(source, target)] = kind


_active(_KR, _S, _KA, _SEG, _PROP, _CHAN, _REL)
_active(_KA, _S, _SEG, _PROP, _CHAN, _REL)
_active(_KP, _S, _KR, _KA, _SEG, _PROP, _CHAN, _REL)
_active(_CHAN, _S, _SEG, _PROP, _REL)
_active(_REL, _S, _SEG)
_active(_SEG, _D, _PROP, _REV)
_active(_PROP, _D, _REV)
_active(_CHAN, _D, _REV)
_active(_REL, _D, _REV)
_active(_KR, _A, _REV, _COST)
_active(_KA, _A, _REV, _COST)
_active(_KP, _A, _REV, _COST)
_active(_SEG, _A, _COST)
_active(_PROP, _A, _COST)
_active(_CHAN, _A, _COST)
_active(_REL, _A, _PROP, _COST)
_active(_REV, _A, _COST)
_active(_COST, _A, _REV)


def _build_policy(
    active_cross: dict[tuple[ElementKind, ElementKind], RelationshipKind],
) -> dict[tuple[ElementKind, ElementKind], PolicyEntry]:
    table: dict[tuple[ElementKind, ElementKind], PolicyEntry] = {}
    for a in ElementKind:
        for b in ElementKind:
            if a is b:
                table[(a, b)] = PolicyEntry(True, _S)
            elif (a, b) in active_cross:
                table[(a, b)] = PolicyEntry(True, active_cross[(a, b)])
            else:
                table[(a, b)] = PolicyEntry(False, active_cross[(b, a)])
    return table


POLICY = _build_policy(_ACTIVE_CROSS)


def required_kind(source_kind: ElementKind, target_kind: ElementKind) -> PolicyEntry:
    """Policy entry for an ordered kind pair. Pure and total.

    Does not account for the same-instance override: an edge from an
    element to itself is always ``supports`` (DR1), which the validator
    applies before consulting the kind pair.
    """
    return POLICY[(source_kind, target_kind)]


def policy_census() -> dict[str, int]:
    """Counts of entries per verdict, over all 81 ordered pairs."""
    counts = {"supports": 0, "determines": 0, "affects": 0, "reverse-only": 0}
    for entry in POLICY.values():
        if entry.required:
            counts[entry.kind.value] += 1
        else:
            counts["reverse-only"] += 1
    return counts


# --- Design rules -----------------------------------------------------------

Predicate = Callable[[ElementKind, ElementKind], bool]


@dataclass(frozen=True)
class DesignRule:
    """A constraint on the relationship kind for a family of kind pairs.

    ``applies`` is the kind-level applicability test; DR1 additionally
    fires whenever source and target are the same element instance,
    regardless of kinds.
    """

    rule_id: str
    summary: str
    applies: Predicate
    demands: RelationshipKind
    specificity: int  # higher wins when citing a rule in a diagnostic


def _is_super(kind: ElementKind, superkind: SuperKind) -> bool:
    return taxonomy(kind)[0] is superkind


DR1 = DesignRule(
    "DR1", "a relationship between an element and itself must be supports",
    lambda a, b: False, _S, specificity=4,
)
DR2 = DesignRule(
    "DR2", "a relationship between key elements must be supports",
    lambda a, b: _is_super(a, SuperKind.KEY) and _is_super(b, SuperKind.KEY),
    _S, specificity=1,
)
DR3 = DesignRule(
    "DR3", "customer segment to value proposition must be determines",
    lambda a, b: a is _SEG and b is _PROP, _D, specificity=3,
)
DR4 = DesignRule(
    "DR4", "channel to value proposition must be supports",
    lambda a, b: a is _CHAN and b is _PROP, _S, specificity=3,
)
DR5 = DesignRule(
    "DR5", "customer relationship to value proposition must be affects",
    lambda a, b: a is _REL and b is _PROP, _A, specificity=3,
)
DR6 = DesignRule(
    "DR6",
    "channel or customer relationship to customer segment or customer "
    "relationship must be supports",
    lambda a, b: a in (_CHAN, _REL) and b in (_SEG, _REL), _S, specificity=2,
)
# Restricted to cross-kind performance pairs: same-kind pairs follow the
# diagonal supports rule instead.
DR7 = DesignRule(
    "DR7", "revenue streams and cost structure must affect each other",
    lambda a, b: a is not b
    and _is_super(a, SuperKind.PERFORMANCE) and _is_super(b, SuperKind.PERFORMANCE),
    _A, specificity=1,
)
DR8 = DesignRule(
    "DR8", "key element to value element must be supports",
    lambda a, b: _is_super(a, SuperKind.KEY) and _is_super(b, SuperKind.VALUE),
    _S, specificity=1,
)
DR9 = DesignRule(
    "DR9", "key element to performance element must be affects",
    lambda a, b: _is_super(a, SuperKind.KEY) and _is_super(b, SuperKind.PERFORMANCE),
    _A, specificity=1,
)
DR10 = DesignRule(
    "DR10", "value element to cost structure must be affects",
    lambda a, b: _is_super(a, SuperKind.VALUE) and b is _COST, _A, specificity=2,
)
DR11 = DesignRule(
    "DR11", "value element to revenue streams must be determines",
    lambda a, b: _is_super(a, SuperKind.VALUE) and b is _REV, _D, specificity=2,
)

DESIGN_RULES = (DR1, DR2, DR3, DR4, DR5, DR6, DR7, DR8, DR9, DR10, DR11)


def applicable_rules(
    source_kind: ElementKind, target_kind: ElementKind, rules: Iterable[DesignRule] = DESIGN_RULES
) -> list[DesignRule]:
    """Kind-level applicable rules, most specific first."""
    hits = [r for r in rules if r.applies(source_kind, target_kind)]
    hits.sort(key=lambda r: (-r.specificity, r.rule_id))
    return hits


def citation_rule(source_kind: ElementKind, target_kind: ElementKind) -> DesignRule | None:
    """The most specific rule to cite for a kind pair, if any covers it."""
    hits = applicable_rules(source_kind, target_kind)
    return hits[0] if hits else None


@dataclass(frozen=True)
class Disagreement:
    """A policy entry contradicted by an applicable design rule."""

    source_kind: ElementKind
    target_kind: ElementKind
    policy_kind: RelationshipKind
    rule_id: str
    rule_kind: RelationshipKind


def rules_crosscheck(
    *, dr7_on_same_kind: bool = False, cost_row_determines: bool = False
) -> list[Disagreement]:
    """Check every required policy entry against every applicable rule.

    The correctly configured policy and rule set agree on all 81 pairs.
    The two keyword flags reintroduce the documented misreadings and must
    each surface their predicted disagreements; tests rely on that.
    """
    rules = list(DESIGN_RULES)
    if dr7_on_same_kind:
        unrestricted = DesignRule(
            DR7.rule_id, DR7.summary,
            lambda a, b: _is_super(a, SuperKind.PERFORMANCE)
            and _is_super(b, SuperKind.PERFORMANCE),
            DR7.demands, DR7.specificity,
        )
        rules[rules.index(DR7)] = unrestricted

    active = dict(_ACTIVE_CROSS)
    if cost_row_determines:
        active[(_SEG, _COST)] = _D
        active[(_PROP, _COST)] = _D
    table = _build_policy(active)

    disagreements: list[Disagreement] = []
    for a in ElementKind:
        for b in ElementKind:
            entry = table[(a, b)]
            if not entry.required:
                continue
            for rule in applicable_rules(a, b, rules):
                if rule.demands is not entry.kind:
                    disagreements.append(
                        Disagreement(a, b, entry.kind, rule.rule_id, rule.demands)
                    )
    return disagreements


# --- Verb lexicon ------------------------------------------------------------

# Exact phrases, grouped by the relationship sense they express. Passive
# phrasings classify by sense; they do not flip edge direction here.
VERB_LEXICON: dict[str, RelationshipKind] = {}
for _phrase in (
    "ensures communication to", "is based on", "is delivered by", "is ensured by",
    "is sustained by", "may be acquired from", "may be ensured by",
    "may be the source of", "may ensure", "reaches", "supports", "sustains",
    "performs", "builds on", "provides", "enables", "is required by",
    "established through",
):
    VERB_LEXICON[_phrase] = _S
for _phrase in (
    "is created for", "generates", "is determined by", "is generated by",
    "is generated from", "addresses", "targets",
):
    VERB_LEXICON[_phrase] = _D
for _phrase in (
    "affects", "allows to earn", "contribute to", "influences", "is affected by",
    "is earned thanks to", "is influenced by",
):
    VERB_LEXICON[_phrase] = _A


def classify_verb(phrase: str) -> RelationshipKind | None:
    """Exact-phrase, case-insensitive lexicon lookup; None when unknown."""
    return VERB_LEXICON.get(" ".join(phrase.lower().split()))
