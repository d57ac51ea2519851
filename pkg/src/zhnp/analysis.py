"""Chinese-side analysis: explicitness flags, the 们-suffix subset, corpus
statistics, and the deterministic train/dev/test split.

Explicitness is a function of the Chinese span alone. Plurality counts as
explicitly marked when the span holds a numeral or measure word; definiteness
when it holds a proper name, a possessive construction, or a numeral/measure
preceded by a demonstrative.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .corpus import AnnotatedNP, Definiteness, ParallelSentence, Plurality
from .hashing import stable_rank

# 们 appears inside these pronouns and lexicalized nouns without functioning
# as the suffix under study.
MEN_PRONOUN_EXCLUSIONS = ("我们", "你们", "您们", "他们", "她们", "它们", "咱们")
MEN_LEXICAL_EXCLUSIONS = ("哥们", "爷们", "娘们")

_NOUN_OR_PRONOUN_PREFIXES = ("N", "PN")


def load_word_list(path) -> tuple:
    words = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            word = line.strip()
            if word and not word.startswith("#"):
                words.append(word)
    return tuple(words)


def explicit_plural(zh_span, tokens, pos) -> bool:
    """True iff the span contains a numeral (CD) or measure word (M)."""
    return any(pos[i] in ("CD", "M") for i in range(zh_span.start, zh_span.end))


def _is_demonstrative(token: str, tag: str) -> bool:
    return tag == "DT" and (token.startswith("这") or token.startswith("那"))


def explicit_definite(zh_span, tokens, pos) -> bool:
    """True iff the span contains a proper name, a possessive construction,
    or a numeral/measure preceded by a demonstrative determiner.

    The possessive test is structural: a genitive 的 (tag DEG) preceded
    within the span by a pronoun or noun.
    """
    lo, hi = zh_span.start, zh_span.end
    for i in range(lo, hi):
        if pos[i] == "NR":
            return True
        if pos[i] == "DEG" and any(
            pos[j] == "PN" or pos[j].startswith("N") for j in range(lo, i)
        ):
            return True
        if pos[i] in ("CD", "M") and any(
            _is_demonstrative(tokens[j], pos[j]) for j in range(lo, i)
        ):
            return True
    return False


def is_men_suffix_head(head_token: str,
                       pronoun_exclusions=MEN_PRONOUN_EXCLUSIONS,
                       lexical_exclusions=MEN_LEXICAL_EXCLUSIONS) -> bool:
    """True iff the head noun carries a genuine 们 suffix."""
    if not head_token.endswith("们"):
        return False
    if head_token in pronoun_exclusions or head_token in lexical_exclusions:
        return False
    return True


def annotate_record(record: AnnotatedNP, pair: ParallelSentence,
                    pronoun_exclusions=MEN_PRONOUN_EXCLUSIONS,
                    lexical_exclusions=MEN_LEXICAL_EXCLUSIONS) -> AnnotatedNP:
    """Fill the record's Chinese-side flags from its sentence."""
    if record.sent_id != pair.id:
        raise ValueError(f"record {record.id} does not belong to sentence {pair.id}")
    span = record.zh_span
    return replace(
        record,
        explicit_plural=explicit_plural(span, pair.zh_tokens, pair.zh_pos),
        explicit_definite=explicit_definite(span, pair.zh_tokens, pair.zh_pos),
        men_suffix=is_men_suffix_head(
            pair.zh_tokens[span.head], pronoun_exclusions, lexical_exclusions
        ),
    )


@dataclass
class MenSubset:
    records: list
    count: int
    singular_rate: Optional[float]
    indefinite_rate: Optional[float]


def men_suffix_nps(records: Iterable[AnnotatedNP],
                   pronoun_exclusions=MEN_PRONOUN_EXCLUSIONS,
                   lexical_exclusions=MEN_LEXICAL_EXCLUSIONS) -> MenSubset:
    """Select NPs whose head noun has a 们 suffix and report their label mix."""
    subset = [
        r for r in records
        if is_men_suffix_head(r.head_token(), pronoun_exclusions, lexical_exclusions)
    ]
    n = len(subset)
    if n == 0:
        return MenSubset(records=[], count=0, singular_rate=None, indefinite_rate=None)
    singular = sum(1 for r in subset if r.plurality is Plurality.SINGULAR)
    indefinite = sum(1 for r in subset if r.definiteness is Definiteness.INDEFINITE)
    return MenSubset(
        records=subset,
        count=n,
        singular_rate=singular / n,
        indefinite_rate=indefinite / n,
    )


@dataclass
class CorpusStats:
    n_records: int
    n_sentences: int
    by_split: dict
    explicit_plural_count: int
    explicit_definite_count: int
    explicit_plural_rate: Optional[float]
    explicit_definite_rate: Optional[float]
    explicit_plural_sentence_rate: Optional[float]
    explicit_definite_sentence_rate: Optional[float]
    men_count: int
    men_singular_rate: Optional[float]
    men_indefinite_rate: Optional[float]

    def to_json(self) -> dict:
        return {
            "n_records": self.n_records,
            "n_sentences": self.n_sentences,
            "by_split": self.by_split,
            "explicit_plural_count": self.explicit_plural_count,
            "explicit_definite_count": self.explicit_definite_count,
            "explicit_plural_rate": self.explicit_plural_rate,
            "explicit_definite_rate": self.explicit_definite_rate,
            "explicit_plural_sentence_rate": self.explicit_plural_sentence_rate,
            "explicit_definite_sentence_rate": self.explicit_definite_sentence_rate,
            "men_count": self.men_count,
            "men_singular_rate": self.men_singular_rate,
            "men_indefinite_rate": self.men_indefinite_rate,
        }


def corpus_stats(records: Iterable[AnnotatedNP]) -> CorpusStats:
    """Exact counts and rates over the dataset.

    The explicitness literature is ambiguous about whether the denominator
    is NPs or utterances, so both rates are reported: `*_rate` is per NP,
    `*_sentence_rate` is the fraction of distinct sentences containing at
    least one explicitly marked NP. Rates over an empty denominator are
    None, never a division error.
    """
    records = list(records)
    n = len(records)
    by_split = {}
    for split in ("train", "dev", "test", "unsplit"):
        subset = [r for r in records if r.split == split]
        if not subset and split == "unsplit":
            continue
        by_split[split] = {
            "n": len(subset),
            "plurality": {
                "singular": sum(1 for r in subset if r.plurality is Plurality.SINGULAR),
                "plural": sum(1 for r in subset if r.plurality is Plurality.PLURAL),
            },
            "definiteness": {
                "definite": sum(1 for r in subset if r.definiteness is Definiteness.DEFINITE),
                "indefinite": sum(1 for r in subset if r.definiteness is Definiteness.INDEFINITE),
            },
        }
    sentences = defaultdict(list)
    for r in records:
        sentences[r.sent_id].append(r)
    n_sent = len(sentences)
    ep = sum(1 for r in records if r.explicit_plural)
    ed = sum(1 for r in records if r.explicit_definite)
    ep_sent = sum(1 for rs in sentences.values() if any(r.explicit_plural for r in rs))
    ed_sent = sum(1 for rs in sentences.values() if any(r.explicit_definite for r in rs))
    men = men_suffix_nps(records)
    return CorpusStats(
        n_records=n,
        n_sentences=n_sent,
        by_split=by_split,
        explicit_plural_count=ep,
        explicit_definite_count=ed,
        explicit_plural_rate=ep / n if n else None,
        explicit_definite_rate=ed / n if n else None,
        explicit_plural_sentence_rate=ep_sent / n_sent if n_sent else None,
        explicit_definite_sentence_rate=ed_sent / n_sent if n_sent else None,
        men_count=men.count,
        men_singular_rate=men.singular_rate,
        men_indefinite_rate=men.indefinite_rate,
    )


def parse_ratios(text: str) -> tuple:
    """Parse "8:1:1" into a positive integer triple."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"ratios must be train:dev:test, got {text!r}")
    ratios = tuple(int(p) for p in parts)
    if any(r <= 0 for r in ratios):
        raise ValueError(f"ratios must be positive, got {text!r}")
    return ratios


def split_dataset(records: Iterable[AnnotatedNP], ratios=(8, 1, 1), seed=0) -> list:
    """Assign train/dev/test splits, grouping records by sentence.

    All records of one sentence land in the same split (context windows
    would otherwise leak test-side sentences into training). Sentence groups
    are ordered by a seeded hash of the sentence id, so the assignment is
    independent of file order, then allocated greedily to whichever split
    is furthest below its proportional record-count target. With one record
    per sentence the resulting sizes are within one of exact proportions.
    """
    records = list(records)
    if not records:
        return []
    groups = defaultdict(list)
    for r in records:
        groups[r.sent_id].append(r)
    ordered = sorted(groups, key=lambda sid: (stable_rank(seed, sid), sid))
    total = len(records)
    denom = sum(ratios)
    names = ("train", "dev", "test")
    targets = {name: total * r / denom for name, r in zip(names, ratios)}
    assigned = Counter()
    assignment = {}
    for sid in ordered:
        name = max(names, key=lambda s: (targets[s] - assigned[s], -names.index(s)))
        assignment[sid] = name
        assigned[name] += len(groups[sid])
    return [replace(r, split=assignment[r.sent_id]) for r in records]
