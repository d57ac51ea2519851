import random

import pytest

from zhnp.corpus import AlignmentSet, NPSpan
from zhnp.matching import NPMatch, match_nps, pair_nps, post_filter

# ------------------------------------------------------------------ helpers


def span(side, start, end, **flags):
    return NPSpan(side=side, start=start, end=end, head=start, **flags)


def aset(direction, links):
    return AlignmentSet(direction=direction, links=frozenset(links))


def random_spans(rng, side, sent_len, max_nps):
    spans = set()
    for _ in range(rng.randint(1, max_nps)):
        start = rng.randrange(sent_len)
        end = rng.randint(start + 1, sent_len)
        spans.add((start, end))
    return [span(side, s, e) for s, e in sorted(spans)]


def random_links(rng, src_len, tgt_len):
    n = rng.randint(0, src_len * tgt_len // 2)
    return frozenset(
        (rng.randrange(src_len), rng.randrange(tgt_len)) for _ in range(n)
    )


# ------------------------------------------------------------- brute oracle
# Independent mutual-best oracle: enumerate every (source NP, target NP)
# pair, count overlapping links one by one, take both argmaxes, keep the
# mutual pairs.


def oracle_best(src_np, tgt_nps, links):
    counts = []
    for tgt in tgt_nps:
        c = 0
        for i, j in links:
            if src_np.start <= i < src_np.end and tgt.start <= j < tgt.end:
                c += 1
        if c > 0:
            counts.append((tgt, c))
    if not counts:
        return None
    top = max(c for _, c in counts)
    candidates = [t for t, c in counts if c == top]
    best = min(candidates, key=lambda t: (len(t), t.start))
    return best


def oracle_mutual(en_nps, zh_nps, links_e2z, links_z2e):
    pairs = set()
    for en in en_nps:
        zh = oracle_best(en, zh_nps, links_e2z)
        if zh is None:
            continue
        back = oracle_best(zh, en_nps, links_z2e)
        if back == en:
            pairs.add(((en.start, en.end), (zh.start, zh.end)))
    return pairs


class TestPairNps:
    def test_dominant_overlap(self):
        src = [span("en", 0, 2)]
        tgts = [span("zh", 0, 2), span("zh", 2, 3)]
        pairs = pair_nps(src, tgts, aset("e2z", {(0, 0), (1, 1)}))
        assert pairs[src[0]].target == tgts[0]
        assert pairs[src[0]].overlap == 2
        assert not pairs[src[0]].tie

    def test_no_links_unpaired(self):
        src = [span("en", 0, 1)]
        pairs = pair_nps(src, [span("zh", 0, 1)], aset("e2z", set()))
        assert pairs == {}

    def test_tie_breaks_to_smaller_then_leftmost(self):
        src = [span("en", 0, 1)]
        tgts = [span("zh", 0, 1), span("zh", 2, 3)]
        pairs = pair_nps(src, tgts, aset("e2z", {(0, 0), (0, 2)}))
        # Overlap 1 each; equal length, so leftmost wins and the tie is flagged.
        assert pairs[src[0]].target == tgts[0]
        assert pairs[src[0]].overlap == 1
        assert pairs[src[0]].tie


class TestMatchNps:
    def test_mutual_pair_kept(self):
        en, zh = span("en", 0, 1), span("zh", 0, 1)
        pairs_e2z = pair_nps([en], [zh], aset("e2z", {(0, 0)}))
        pairs_z2e = pair_nps([zh], [en], aset("z2e", {(0, 0)}))
        [match] = match_nps(pairs_e2z, pairs_z2e)
        assert (match.en_span, match.zh_span) == (en, zh)
        assert match.overlap_e2z == match.overlap_z2e == 1

    def test_asymmetric_pair_rejected(self):
        e1, e2 = span("en", 0, 1), span("en", 1, 2)
        z1 = span("zh", 0, 2)
        # e1 -> z1 forward, but z1's best is e2.
        pairs_e2z = pair_nps([e1], [z1], aset("e2z", {(0, 0)}))
        pairs_z2e = pair_nps([z1], [e1, e2], aset("z2e", {(0, 1), (1, 1)}))
        assert pairs_z2e[z1].target == e2
        assert match_nps(pairs_e2z, pairs_z2e) == []

    def test_empty_maps(self):
        assert match_nps({}, {}) == []

    def test_injective_both_sides(self):
        rng = random.Random(23)
        for _ in range(100):
            en_nps = random_spans(rng, "en", rng.randint(2, 12), 6)
            zh_nps = random_spans(rng, "zh", rng.randint(2, 12), 6)
            links_e2z = random_links(rng, 12, 12)
            links_z2e = random_links(rng, 12, 12)
            matches = match_nps(
                pair_nps(en_nps, zh_nps, aset("e2z", links_e2z)),
                pair_nps(zh_nps, en_nps, aset("z2e", links_z2e)),
            )
            assert len({m.en_span for m in matches}) == len(matches)
            assert len({m.zh_span for m in matches}) == len(matches)

    def test_oracle_equivalence_random(self):
        rng = random.Random(41)
        for _ in range(200):
            en_len, zh_len = rng.randint(2, 20), rng.randint(2, 20)
            en_nps = random_spans(rng, "en", en_len, 8)
            zh_nps = random_spans(rng, "zh", zh_len, 8)
            links_e2z = random_links(rng, en_len, zh_len)
            links_z2e = random_links(rng, zh_len, en_len)
            matches = match_nps(
                pair_nps(en_nps, zh_nps, aset("e2z", links_e2z)),
                pair_nps(zh_nps, en_nps, aset("z2e", links_z2e)),
            )
            got = {((m.en_span.start, m.en_span.end), (m.zh_span.start, m.zh_span.end))
                   for m in matches}
            assert got == oracle_mutual(en_nps, zh_nps, links_e2z, links_z2e)


def make_match(en, zh):
    return NPMatch(en_span=en, zh_span=zh, overlap_e2z=1, overlap_z2e=1, tie_flag=False)


class TestPostFilter:
    def test_conjunction_dropped_constituents_kept(self):
        # "Zhangsan and Lisi" matched as a whole and per constituent.
        conj_en = span("en", 0, 3, is_conjunction=True, is_proper=True)
        conj_zh = span("zh", 0, 3, is_conjunction=True, is_proper=True)
        parts = [
            make_match(span("en", 0, 1, is_proper=True), span("zh", 0, 1, is_proper=True)),
            make_match(span("en", 2, 3, is_proper=True), span("zh", 2, 3, is_proper=True)),
        ]
        survivors = post_filter([make_match(conj_en, conj_zh)] + parts)
        assert survivors == parts

    def test_keep_maximal(self):
        # "Lisi's book" with "Lisi" and "book" all matched: keep the whole NP.
        whole = make_match(span("en", 0, 3), span("zh", 0, 3))
        lisi = make_match(span("en", 0, 1), span("zh", 0, 1))
        book = make_match(span("en", 2, 3), span("zh", 2, 3))
        assert post_filter([whole, lisi, book]) == [whole]

    def test_pronoun_matches_removed(self):
        he = make_match(span("en", 0, 1, is_pronoun=True), span("zh", 0, 1, is_pronoun=True))
        dog = make_match(span("en", 2, 4), span("zh", 2, 3))
        assert post_filter([he, dog]) == [dog]

    def test_containment_checked_per_side(self):
        # zh spans are disjoint, en spans nest: the contained one goes.
        small = make_match(span("en", 0, 1), span("zh", 0, 1))
        big = make_match(span("en", 0, 2), span("zh", 2, 3))
        assert post_filter([small, big]) == [big]

    def test_idempotent_on_random_inputs(self):
        rng = random.Random(7)
        for _ in range(200):
            matches = []
            used_en, used_zh = set(), set()
            for _ in range(rng.randint(0, 8)):
                e = (rng.randrange(8), rng.randrange(8))
                z = (rng.randrange(8), rng.randrange(8))
                if e[0] >= e[1] or z[0] >= z[1] or e in used_en or z in used_zh:
                    continue
                used_en.add(e)
                used_zh.add(z)
                matches.append(make_match(
                    span("en", e[0], e[1],
                         is_pronoun=rng.random() < 0.2,
                         is_conjunction=rng.random() < 0.2),
                    span("zh", z[0], z[1], is_pronoun=rng.random() < 0.2),
                ))
            once = post_filter(matches)
            assert post_filter(once) == once

    def test_no_shared_tokens_after_filtering_laminar_spans(self):
        # Spans extracted from trees are nested or disjoint; generate laminar
        # families and check survivors never overlap on either side.
        rng = random.Random(13)

        def laminar(side, lo, hi, depth, out):
            out.append((lo, hi))
            if hi - lo <= 1 or depth >= 3:
                return
            mid = rng.randint(lo + 1, hi - 1)
            if rng.random() < 0.7:
                laminar(side, lo, mid, depth + 1, out)
            if rng.random() < 0.7:
                laminar(side, mid, hi, depth + 1, out)

        for _ in range(100):
            en_spans, zh_spans = [], []
            laminar("en", 0, 10, 0, en_spans)
            laminar("zh", 0, 10, 0, zh_spans)
            n = min(len(en_spans), len(zh_spans))
            matches = [
                make_match(span("en", *en_spans[i]), span("zh", *zh_spans[i]))
                for i in range(n)
            ]
            survivors = post_filter(matches)
            for a in survivors:
                for b in survivors:
                    if a is b:
                        continue
                    assert min(a.en_span.end, b.en_span.end) <= max(a.en_span.start, b.en_span.start)
                    assert min(a.zh_span.end, b.zh_span.end) <= max(a.zh_span.start, b.zh_span.start)


class TestNPMatchValidation:
    def test_zero_overlap_rejected(self):
        with pytest.raises(ValueError):
            NPMatch(en_span=span("en", 0, 1), zh_span=span("zh", 0, 1),
                    overlap_e2z=0, overlap_z2e=1, tie_flag=False)
