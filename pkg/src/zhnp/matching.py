"""Two-step NP matching over directional alignments, plus the
post-processing filters that decide which matched NPs enter the dataset.

Step one pairs every source NP with the target NP sharing the most aligned
words with it, independently per direction; step two keeps a pair only when
the two directions agree (mutual-best matching). Overlap is counted in link
tuples: a link (i, j) counts when i falls in the source span and j in the
target span.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import AlignmentSet, NPSpan


@dataclass(frozen=True)
class Pairing:
    """Best target NP for one source NP in one direction."""

    target: NPSpan
    overlap: int
    tie: bool


@dataclass(frozen=True)
class NPMatch:
    en_span: NPSpan
    zh_span: NPSpan
    overlap_e2z: int
    overlap_z2e: int
    tie_flag: bool

    def __post_init__(self):
        if self.overlap_e2z < 1 or self.overlap_z2e < 1:
            raise ValueError("a match requires at least one overlapping link per direction")

    def to_json(self) -> dict:
        def span_obj(s):
            return {
                "start": s.start,
                "end": s.end,
                "head": s.head,
                "is_pronoun": s.is_pronoun,
                "is_conjunction": s.is_conjunction,
                "is_proper": s.is_proper,
            }

        return {
            "en": span_obj(self.en_span),
            "zh": span_obj(self.zh_span),
            "overlap_e2z": self.overlap_e2z,
            "overlap_z2e": self.overlap_z2e,
            "tie_flag": self.tie_flag,
        }


def pair_nps(src_nps, tgt_nps, alignment: AlignmentSet) -> dict:
    """Map each source NP to the target NP with the most overlapping links.

    Source NPs with zero overlapping links are absent from the map. Among
    equal-overlap candidates the shorter target span wins, then the
    leftmost; such ties set the pairing's tie flag.
    """
    out = {}
    for src in src_nps:
        in_links = [(i, j) for (i, j) in alignment.links if src.start <= i < src.end]
        if not in_links:
            continue
        best = None
        best_count = 0
        n_best = 0
        for tgt in tgt_nps:
            count = sum(1 for (_, j) in in_links if tgt.start <= j < tgt.end)
            if count == 0:
                continue
            if count > best_count:
                best, best_count, n_best = tgt, count, 1
            elif count == best_count:
                n_best += 1
                if (len(tgt), tgt.start) < (len(best), best.start):
                    best = tgt
        if best is not None:
            out[src] = Pairing(target=best, overlap=best_count, tie=n_best > 1)
    return out


def match_nps(pairs_e2z: dict, pairs_z2e: dict) -> list:
    """Keep exactly the NP pairs that are each other's best in both directions."""
    matches = []
    for en, fwd in pairs_e2z.items():
        back = pairs_z2e.get(fwd.target)
        if back is not None and back.target == en:
            matches.append(
                NPMatch(
                    en_span=en,
                    zh_span=fwd.target,
                    overlap_e2z=fwd.overlap,
                    overlap_z2e=back.overlap,
                    tie_flag=fwd.tie or back.tie,
                )
            )
    matches.sort(key=lambda m: (m.en_span.start, m.en_span.end, m.zh_span.start))
    return matches


def post_filter(matches) -> list:
    """Apply the three dataset filters, in order.

    1. Drop matches whose en or zh span is an NP conjunction (their matched
       constituents survive on their own).
    2. Keep-maximal: among the remaining matches, drop any whose en span is
       properly contained in another remaining match's en span, and likewise
       on the zh side.
    3. Drop matches whose en or zh span is a pronoun NP.

    Idempotent: survivors are contained in no match of the input set, so a
    second application removes nothing.
    """
    stage1 = [
        m for m in matches
        if not (m.en_span.is_conjunction or m.zh_span.is_conjunction)
    ]
    stage2 = [
        m for m in stage1
        if not any(
            other is not m
            and (
                other.en_span.properly_contains(m.en_span)
                or other.zh_span.properly_contains(m.zh_span)
            )
            for other in stage1
        )
    ]
    return [m for m in stage2 if not (m.en_span.is_pronoun or m.zh_span.is_pronoun)]


def match_sentence_pair(en_nps, zh_nps, align_e2z: AlignmentSet, align_z2e: AlignmentSet,
                        filtered: bool = True) -> list:
    """Full per-sentence matching: pair both directions, keep mutual, filter."""
    pairs_e2z = pair_nps(en_nps, zh_nps, align_e2z)
    pairs_z2e = pair_nps(zh_nps, en_nps, align_z2e)
    matches = match_nps(pairs_e2z, pairs_z2e)
    return post_filter(matches) if filtered else matches
