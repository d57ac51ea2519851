"""Shared domain types and the line-oriented (JSONL) file formats.

Every corpus artifact is UTF-8, one JSON object per line, so multi-million
pair corpora can be streamed without loading whole files. Token indices are
0-based and spans are half-open [start, end). Chinese text arrives
pre-segmented (space-separated tokens) and is never re-segmented here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Iterable, Iterator, Optional


class CorpusFormatError(ValueError):
    """Malformed or invariant-violating corpus input, with its location."""

    def __init__(self, message, path=None, line=None):
        loc = ""
        if path is not None:
            loc += str(path)
        if line is not None:
            loc += f":{line}"
        super().__init__(f"{loc}: {message}" if loc else message)
        self.path = path
        self.line = line


class Plurality(Enum):
    SINGULAR = "singular"
    PLURAL = "plural"


class Definiteness(Enum):
    DEFINITE = "definite"
    INDEFINITE = "indefinite"


SPLITS = ("train", "dev", "test", "unsplit")

EN_SIDE = "en"
ZH_SIDE = "zh"


@dataclass(frozen=True)
class NPSpan:
    """A noun-phrase token span within one side of a sentence pair."""

    side: str
    start: int
    end: int
    head: int
    node_path: tuple = ()
    is_pronoun: bool = False
    is_conjunction: bool = False
    is_proper: bool = False

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValueError(f"bad span [{self.start},{self.end})")
        if not (self.start <= self.head < self.end):
            raise ValueError(f"head {self.head} outside span [{self.start},{self.end})")

    def __len__(self):
        return self.end - self.start

    def contains(self, other: "NPSpan") -> bool:
        return self.start <= other.start and other.end <= self.end

    def properly_contains(self, other: "NPSpan") -> bool:
        return self.contains(other) and (self.start, self.end) != (other.start, other.end)


@dataclass(frozen=True)
class Span:
    """Minimal (start, end, head) triple kept on dataset records.

    The full NPSpan carries syntactic flags the dataset file format does not
    persist; records store this reduced form so that serialization round
    trips are bit-exact.
    """

    start: int
    end: int
    head: int

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValueError(f"bad span [{self.start},{self.end})")
        if not (self.start <= self.head < self.end):
            raise ValueError(f"head {self.head} outside span [{self.start},{self.end})")

    @classmethod
    def of(cls, np_span: NPSpan) -> "Span":
        return cls(np_span.start, np_span.end, np_span.head)


@dataclass(frozen=True)
class ParallelSentence:
    """One aligned sentence pair with tokens, POS tags and bracketed trees."""

    id: str
    doc_id: str
    position: int
    en_tokens: tuple
    en_pos: tuple
    en_tree: str
    zh_tokens: tuple
    zh_pos: tuple
    zh_tree: str

    def validate(self):
        if self.position < 0:
            raise ValueError(f"sentence {self.id}: negative position")
        for side, toks, pos, tree in (
            (EN_SIDE, self.en_tokens, self.en_pos, self.en_tree),
            (ZH_SIDE, self.zh_tokens, self.zh_pos, self.zh_tree),
        ):
            if len(toks) != len(pos):
                raise ValueError(
                    f"sentence {self.id}: {side} has {len(toks)} tokens "
                    f"but {len(pos)} POS tags"
                )
            leaves = _leaf_count(tree)
            if leaves != len(toks):
                raise ValueError(
                    f"sentence {self.id}: {side} tree has {leaves} leaves "
                    f"but {len(toks)} tokens"
                )

    def tokens(self, side: str) -> tuple:
        return self.en_tokens if side == EN_SIDE else self.zh_tokens

    def pos(self, side: str) -> tuple:
        return self.en_pos if side == EN_SIDE else self.zh_pos


@dataclass(frozen=True)
class AlignmentSet:
    """Directional word links (i, j) for one sentence pair.

    direction is "e2z" (source English) or "z2e" (source Chinese); i indexes
    the source sentence and j the target sentence.
    """

    direction: str
    links: frozenset

    def __post_init__(self):
        if self.direction not in ("e2z", "z2e"):
            raise ValueError(f"unknown direction {self.direction!r}")


@dataclass(frozen=True)
class AnnotatedNP:
    """A Chinese NP with projected plurality/definiteness annotation."""

    id: str
    sent_id: str
    zh_span: Span
    zh_text: str
    en_span: Span
    en_text: str
    plurality: Plurality
    definiteness: Definiteness
    explicit_plural: bool = False
    explicit_definite: bool = False
    men_suffix: bool = False
    split: str = "unsplit"

    def __post_init__(self):
        if self.split not in SPLITS:
            raise ValueError(f"unknown split {self.split!r}")

    def zh_span_tokens(self) -> list:
        return self.zh_text.split(" ")

    def head_token(self) -> str:
        return self.zh_span_tokens()[self.zh_span.head - self.zh_span.start]

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "sent_id": self.sent_id,
            "zh_span": asdict(self.zh_span),
            "zh_text": self.zh_text,
            "en_span": asdict(self.en_span),
            "en_text": self.en_text,
            "plurality": self.plurality.value,
            "definiteness": self.definiteness.value,
            "explicit_plural": self.explicit_plural,
            "explicit_definite": self.explicit_definite,
            "men_suffix": self.men_suffix,
            "split": self.split,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AnnotatedNP":
        return cls(
            id=obj["id"],
            sent_id=obj["sent_id"],
            zh_span=Span(**obj["zh_span"]),
            zh_text=obj["zh_text"],
            en_span=Span(**obj["en_span"]),
            en_text=obj["en_text"],
            plurality=Plurality(obj["plurality"]),
            definiteness=Definiteness(obj["definiteness"]),
            explicit_plural=bool(obj["explicit_plural"]),
            explicit_definite=bool(obj["explicit_definite"]),
            men_suffix=bool(obj["men_suffix"]),
            split=obj["split"],
        )


A1_ANSWERS = ("yes", "no", "none")


@dataclass(frozen=True)
class AssessmentRecord:
    """One human judgment on one item under protocol A1 or A2.

    A1 records carry the three yes/no/none answers and no direct labels;
    A2 records carry direct labels (or "none" for a skip) and no answers.
    """

    item_id: str
    annotator_id: str
    protocol: str
    np_ok: Optional[str] = None
    plurality_ok: Optional[str] = None
    definiteness_ok: Optional[str] = None
    plurality_label: Optional[str] = None
    definiteness_label: Optional[str] = None
    timestamp: int = 0

    def validate(self):
        if self.protocol not in ("A1", "A2"):
            raise ValueError(f"unknown protocol {self.protocol!r}")
        a1_fields = (self.np_ok, self.plurality_ok, self.definiteness_ok)
        a2_fields = (self.plurality_label, self.definiteness_label)
        if self.protocol == "A1":
            if any(f is not None for f in a2_fields):
                raise ValueError("A1 record carries direct labels")
            for f in a1_fields:
                if f not in A1_ANSWERS:
                    raise ValueError(f"A1 answer must be yes/no/none, got {f!r}")
        else:
            if any(f is not None for f in a1_fields):
                raise ValueError("A2 record carries yes/no answers")
            if self.plurality_label not in ("singular", "plural", "none"):
                raise ValueError(f"bad plurality label {self.plurality_label!r}")
            if self.definiteness_label not in ("definite", "indefinite", "none"):
                raise ValueError(f"bad definiteness label {self.definiteness_label!r}")

    def to_json(self) -> dict:
        obj = {
            "item_id": self.item_id,
            "annotator_id": self.annotator_id,
            "protocol": self.protocol,
        }
        if self.protocol == "A1":
            obj["np_ok"] = self.np_ok
            obj["plurality_ok"] = self.plurality_ok
            obj["definiteness_ok"] = self.definiteness_ok
        else:
            obj["plurality_label"] = self.plurality_label
            obj["definiteness_label"] = self.definiteness_label
        obj["timestamp"] = self.timestamp
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "AssessmentRecord":
        rec = cls(
            item_id=obj["item_id"],
            annotator_id=obj["annotator_id"],
            protocol=obj["protocol"],
            np_ok=obj.get("np_ok"),
            plurality_ok=obj.get("plurality_ok"),
            definiteness_ok=obj.get("definiteness_ok"),
            plurality_label=obj.get("plurality_label"),
            definiteness_label=obj.get("definiteness_label"),
            timestamp=obj.get("timestamp", 0),
        )
        rec.validate()
        return rec


def _leaf_count(tree_text: str) -> int:
    """Count leaf tokens of a bracketed tree without building it.

    A leaf is any atom that is not the first atom after an opening
    parenthesis (the first one is the constituent/POS label).
    """
    leaves = 0
    expecting_label = False
    i = 0
    n = len(tree_text)
    while i < n:
        c = tree_text[i]
        if c == "(":
            expecting_label = True
            i += 1
        elif c == ")":
            expecting_label = False
            i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < n and tree_text[j] not in "() \t\n\r":
                j += 1
            if expecting_label:
                expecting_label = False
            else:
                leaves += 1
            i = j
    return leaves


def _parse_sentence_line(obj: dict) -> ParallelSentence:
    sent = ParallelSentence(
        id=str(obj["id"]),
        doc_id=str(obj["doc_id"]),
        position=int(obj["position"]),
        en_tokens=tuple(obj["en_tokens"]),
        en_pos=tuple(obj["en_pos"]),
        en_tree=obj["en_tree"],
        zh_tokens=tuple(obj["zh_tokens"]),
        zh_pos=tuple(obj["zh_pos"]),
        zh_tree=obj["zh_tree"],
    )
    sent.validate()
    return sent


def read_corpus(path) -> Iterator[ParallelSentence]:
    """Stream ParallelSentence records from a JSONL corpus file.

    Yields records in file order. Every malformed line raises a
    CorpusFormatError naming the offending line; invariant violations
    (token/POS length mismatch, tree leaf mismatch, duplicate ids,
    duplicate (doc_id, position)) are rejected, never repaired.
    """
    seen_ids = set()
    seen_positions = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusFormatError(f"malformed JSON ({e.msg})", path, lineno) from e
            try:
                sent = _parse_sentence_line(obj)
            except (KeyError, TypeError, ValueError) as e:
                raise CorpusFormatError(str(e), path, lineno) from e
            if sent.id in seen_ids:
                raise CorpusFormatError(f"duplicate sentence id {sent.id!r}", path, lineno)
            key = (sent.doc_id, sent.position)
            if key in seen_positions:
                raise CorpusFormatError(
                    f"duplicate position {sent.position} in doc {sent.doc_id!r}", path, lineno
                )
            seen_ids.add(sent.id)
            seen_positions.add(key)
            yield sent


def write_corpus(sentences: Iterable[ParallelSentence], path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for sent in sentences:
            obj = {
                "id": sent.id,
                "doc_id": sent.doc_id,
                "position": sent.position,
                "en_tokens": list(sent.en_tokens),
                "en_pos": list(sent.en_pos),
                "en_tree": sent.en_tree,
                "zh_tokens": list(sent.zh_tokens),
                "zh_pos": list(sent.zh_pos),
                "zh_tree": sent.zh_tree,
            }
            f.write(json.dumps(obj, ensure_ascii=False) + "\n")
            count += 1
    return count


def write_dataset(records: Iterable[AnnotatedNP], path) -> int:
    """Write AnnotatedNP records one per line; returns the count written."""
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")
            count += 1
    return count


def read_dataset(path) -> Iterator[AnnotatedNP]:
    """Stream AnnotatedNP records, validating every line."""
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusFormatError(f"malformed JSON ({e.msg})", path, lineno) from e
            try:
                yield AnnotatedNP.from_json(obj)
            except (KeyError, TypeError, ValueError) as e:
                raise CorpusFormatError(str(e), path, lineno) from e


def write_records(records: Iterable[AssessmentRecord], path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            rec.validate()
            f.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")
            count += 1
    return count


def read_records(path) -> Iterator[AssessmentRecord]:
    """Stream AssessmentRecord lines; (item, annotator, protocol) must be unique."""
    seen = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusFormatError(f"malformed JSON ({e.msg})", path, lineno) from e
            try:
                rec = AssessmentRecord.from_json(obj)
            except (KeyError, TypeError, ValueError) as e:
                raise CorpusFormatError(str(e), path, lineno) from e
            key = (rec.item_id, rec.annotator_id, rec.protocol)
            if key in seen:
                raise CorpusFormatError(f"duplicate record {key}", path, lineno)
            seen.add(key)
            yield rec
