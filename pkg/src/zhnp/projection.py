"""Plurality and definiteness rules applied to English NPs, and their
projection onto the matched Chinese NPs.

An English NP is plural when its head carries a plural tag (NNS/NNPS) or it
contains a numeral naming a quantity above one; it is definite when it
contains "the", a demonstrative determiner, or a proper name. Possessive
determiners do not mark definiteness unless the switch is enabled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .corpus import AnnotatedNP, Definiteness, NPSpan, ParallelSentence, Plurality, Span
from .matching import NPMatch

_UNITS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6, "seven": 7,
    "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12, "thirteen": 13,
    "fourteen": 14, "fifteen": 15, "sixteen": 16, "seventeen": 17, "eighteen": 18,
    "nineteen": 19, "twenty": 20,
}
_TENS = {"thirty": 30, "forty": 40, "fifty": 50, "sixty": 60, "seventy": 70,
         "eighty": 80, "ninety": 90}
_SCALES = {"hundred": 100, "thousand": 1000, "million": 1000000}

DEMONSTRATIVES = {"this", "that", "these", "those"}


@dataclass
class NumberLexicon:
    """English number words mapped to values, plus a digit-string parser.

    Compound numerals are not composed; "twenty one" is covered because
    either token alone already names a quantity above one.
    """

    words: dict = field(default_factory=lambda: {**_UNITS, **_TENS, **_SCALES})
    parse_digits: bool = True

    @classmethod
    def from_file(cls, path) -> "NumberLexicon":
        words = {}
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                word, value = line.split()
                words[word.lower()] = int(value)
        return cls(words=words)

    def value(self, token: str) -> Optional[int]:
        folded = token.lower()
        if folded in self.words:
            return self.words[folded]
        if self.parse_digits:
            digits = folded.replace(",", "")
            if digits.isdigit():
                return int(digits)
        return None


DEFAULT_LEXICON = NumberLexicon()


def numeral_value(token: str, lexicon: Optional[NumberLexicon] = None) -> Optional[int]:
    """Integer value of a numeral token, or None for non-numerals."""
    return (lexicon or DEFAULT_LEXICON).value(token)


def plurality_of(en_span: NPSpan, tokens, pos,
                 lexicon: Optional[NumberLexicon] = None) -> Plurality:
    """Plural iff the head tag is NNS/NNPS or a numeral in the span exceeds one."""
    if pos[en_span.head] in ("NNS", "NNPS"):
        return Plurality.PLURAL
    for i in range(en_span.start, en_span.end):
        if pos[i] == "CD":
            value = numeral_value(tokens[i], lexicon)
            if value is not None and value > 1:
                return Plurality.PLURAL
    return Plurality.SINGULAR


def definiteness_of(en_span: NPSpan, tokens, pos,
                    possessive_definite: bool = False) -> Definiteness:
    """Definite iff the span contains "the", a demonstrative determiner, or a
    proper name; everything else (a/an, bare NPs) is indefinite."""
    if en_span.is_proper:
        return Definiteness.DEFINITE
    for i in range(en_span.start, en_span.end):
        surface = tokens[i].lower()
        if surface == "the":
            return Definiteness.DEFINITE
        if pos[i] == "DT" and surface in DEMONSTRATIVES:
            return Definiteness.DEFINITE
        if possessive_definite and pos[i] == "PRP$":
            return Definiteness.DEFINITE
    return Definiteness.INDEFINITE


@dataclass
class ProjectionConfig:
    possessive_definite: bool = False
    lexicon: NumberLexicon = field(default_factory=NumberLexicon)


def project(match: NPMatch, pair: ParallelSentence,
            config: Optional[ProjectionConfig] = None) -> AnnotatedNP:
    """Annotate the Chinese NP of a filtered match from its English side.

    Explicitness flags are left at their defaults; the Chinese-side analysis
    fills them in. The record id is deterministic in (sentence, zh span).
    """
    cfg = config or ProjectionConfig()
    en, zh = match.en_span, match.zh_span
    return AnnotatedNP(
        id=f"{pair.id}:{zh.start}-{zh.end}",
        sent_id=pair.id,
        zh_span=Span.of(zh),
        zh_text=" ".join(pair.zh_tokens[zh.start:zh.end]),
        en_span=Span.of(en),
        en_text=" ".join(pair.en_tokens[en.start:en.end]),
        plurality=plurality_of(en, pair.en_tokens, pair.en_pos, cfg.lexicon),
        definiteness=definiteness_of(en, pair.en_tokens, pair.en_pos,
                                     cfg.possessive_definite),
    )
