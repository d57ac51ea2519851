"""Directional word alignment: a built-in EM-trained lexical aligner plus
ingestion of externally produced Pharaoh-format alignment files.

The built-in model is the classic one: every target word is generated by
exactly one source word (or by NULL), alignment positions are uniform a
priori, and EM alternates expected link counts with renormalization. That
is enough at desk scale because downstream matching only needs whole-NP
overlap counts, and higher-quality external alignments can be imported in
Pharaoh format instead.

Conventions: a NULL token is prepended to the source side; links to NULL
are never emitted. English words are case-folded before lookup (sentence
initial capitalization otherwise fragments the lexicon); Chinese words are
compared exactly.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .corpus import AlignmentSet, ParallelSentence

NULL_TOKEN = "<NULL>"


class AlignmentFormatError(ValueError):
    pass


@dataclass
class AlignDiagnostics:
    """Mutable tally of decode-time anomalies."""

    oov_targets: int = 0


@dataclass
class TranslationTable:
    """Lexical translation probabilities t(target | source) for one direction.

    `t` maps source word -> {target word -> probability}; each row sums to 1
    over its support. The NULL source row is keyed by NULL_TOKEN.
    """

    direction: str
    t: dict
    src_vocab: set
    tgt_vocab: set
    ll_history: list = field(default_factory=list)
    skipped: int = 0

    def prob(self, src_word: str, tgt_word: str) -> float:
        return self.t.get(src_word, {}).get(tgt_word, 0.0)


def _fold(tokens) -> list:
    return [w.lower() for w in tokens]


def directional_tokens(pair: ParallelSentence, direction: str) -> tuple:
    """(source tokens, target tokens) for a pair, normalized for lookup."""
    if direction == "e2z":
        return _fold(pair.en_tokens), list(pair.zh_tokens)
    if direction == "z2e":
        return list(pair.zh_tokens), _fold(pair.en_tokens)
    raise ValueError(f"unknown direction {direction!r}")


def train_model1(
    corpus: Iterable[ParallelSentence],
    direction: str,
    iterations: int,
    seed: int = 0,
) -> TranslationTable:
    """Train the lexical translation table by EM.

    Initialization is uniform over each source word's co-occurrence support,
    so the run is fully deterministic given the input order; `seed` is
    accepted for interface stability but unused. Sentence pairs with an
    empty side are skipped and counted in `table.skipped`.

    `ll_history` holds iterations+1 corpus log-likelihood values: the one of
    the uniform init and one after each M-step. EM guarantees the sequence
    is non-decreasing.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    pairs = []
    skipped = 0
    for sent in corpus:
        src, tgt = directional_tokens(sent, direction)
        if not src or not tgt:
            skipped += 1
            continue
        pairs.append((src, tgt))
    if not pairs:
        raise ValueError("empty corpus: no usable sentence pairs")

    # Co-occurrence support; NULL co-occurs with every target word.
    cand = defaultdict(set)
    tgt_vocab = set()
    for src, tgt in pairs:
        tgt_vocab.update(tgt)
        for s in src:
            cand[s].update(tgt)
    cand[NULL_TOKEN] = set(tgt_vocab)

    t = {s: {w: 1.0 / len(ws) for w in sorted(ws)} for s, ws in cand.items()}

    def corpus_ll() -> float:
        ll = 0.0
        for src, tgt in pairs:
            srcs = [NULL_TOKEN] + src
            for w in tgt:
                denom = sum(t[s].get(w, 0.0) for s in srcs)
                ll += math.log(denom / len(srcs))
        return ll

    ll_history = [corpus_ll()]
    for _ in range(iterations):
        counts = defaultdict(lambda: defaultdict(float))
        for src, tgt in pairs:
            srcs = [NULL_TOKEN] + src
            for w in tgt:
                probs = [t[s].get(w, 0.0) for s in srcs]
                denom = sum(probs)
                for s, p in zip(srcs, probs):
                    if p > 0.0:
                        counts[s][w] += p / denom
        for s, row in counts.items():
            total = sum(row.values())
            t[s] = {w: c / total for w, c in row.items()}
        ll_history.append(corpus_ll())

    src_vocab = set(cand) - {NULL_TOKEN}
    return TranslationTable(
        direction=direction,
        t=t,
        src_vocab=src_vocab,
        tgt_vocab=tgt_vocab,
        ll_history=ll_history,
        skipped=skipped,
    )


def viterbi_align(
    table: TranslationTable,
    pair: ParallelSentence,
    diagnostics: Optional[AlignDiagnostics] = None,
) -> AlignmentSet:
    """Link each target word to its most probable source word.

    NULL competes in the argmax and wins ties (it sits before every real
    position); among real source words ties break toward the smallest index.
    Target words with zero probability under every source word count as OOV
    and link to NULL, emitting nothing.
    """
    src, tgt = directional_tokens(pair, table.direction)
    links = set()
    for j, w in enumerate(tgt):
        best_i = -1  # NULL
        best_p = table.prob(NULL_TOKEN, w)
        for i, s in enumerate(src):
            p = table.prob(s, w)
            if p > best_p:
                best_p = p
                best_i = i
        if best_p <= 0.0:
            if diagnostics is not None:
                diagnostics.oov_targets += 1
            continue
        if best_i >= 0:
            links.add((best_i, j))
    return AlignmentSet(direction=table.direction, links=frozenset(links))


def read_pharaoh(line: str, src_len: int, tgt_len: int, direction: str = "e2z") -> AlignmentSet:
    """Parse one Pharaoh line ("0-0 1-2 ...") into an AlignmentSet.

    Duplicate links collapse; indices outside [0, src_len) x [0, tgt_len)
    raise AlignmentFormatError naming the offending pair position.
    """
    links = set()
    for k, token in enumerate(line.split()):
        parts = token.split("-")
        if len(parts) != 2:
            raise AlignmentFormatError(f"malformed link token {token!r} at position {k}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise AlignmentFormatError(f"malformed link token {token!r} at position {k}")
        if not (0 <= i < src_len):
            raise AlignmentFormatError(
                f"source index {i} out of range [0,{src_len}) at position {k}"
            )
        if not (0 <= j < tgt_len):
            raise AlignmentFormatError(
                f"target index {j} out of range [0,{tgt_len}) at position {k}"
            )
        links.add((i, j))
    return AlignmentSet(direction=direction, links=frozenset(links))


def format_pharaoh(alignment: AlignmentSet) -> str:
    return " ".join(f"{i}-{j}" for i, j in sorted(alignment.links))


def read_pharaoh_file(path, pairs, direction: str):
    """Yield one AlignmentSet per corpus pair from a Pharaoh file.

    The file must be line-aligned with the corpus; a length mismatch is an
    error.
    """
    pairs = list(pairs)
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    if len(lines) != len(pairs):
        raise AlignmentFormatError(
            f"{path}: {len(lines)} alignment lines for {len(pairs)} corpus pairs"
        )
    for lineno, (line, pair) in enumerate(zip(lines, pairs), start=1):
        src, tgt = directional_tokens(pair, direction)
        try:
            yield read_pharaoh(line, len(src), len(tgt), direction)
        except AlignmentFormatError as e:
            raise AlignmentFormatError(f"{path}:{lineno}: {e}") from e


def write_table(table: TranslationTable, path) -> None:
    """Serialize as "src tgt prob" lines with a direction header."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"#direction {table.direction}\n")
        for s in sorted(table.t):
            for w in sorted(table.t[s]):
                f.write(f"{s} {w} {table.t[s][w]!r}\n")


def read_table(path) -> TranslationTable:
    t = defaultdict(dict)
    direction = None
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#direction"):
                direction = line.split()[1]
                continue
            parts = line.split(" ")
            if len(parts) != 3:
                raise AlignmentFormatError(f"{path}:{lineno}: expected 'src tgt prob'")
            s, w, p = parts
            t[s][w] = float(p)
    if direction is None:
        raise AlignmentFormatError(f"{path}: missing #direction header")
    src_vocab = set(t) - {NULL_TOKEN}
    tgt_vocab = {w for row in t.values() for w in row}
    return TranslationTable(direction=direction, t=dict(t), src_vocab=src_vocab, tgt_vocab=tgt_vocab)
