import random

import pytest

from zhnp.trees import (
    ParseTree,
    TreeParseError,
    extract_nps,
    head_token,
    parse_tree,
    print_tree,
)


class TestParse:
    def test_minimal_np(self):
        tree = parse_tree("(NP (DT the) (NN dog))")
        assert tree.label == "NP"
        assert [l.leaf for l in tree.leaves()] == ["the", "dog"]
        assert [l.index for l in tree.leaves()] == [0, 1]

    def test_dogs_are_intelligent(self):
        text = "(S (NP (NNS Dogs)) (VP (VBP are) (ADJP (JJ intelligent))) (. .))"
        tree = parse_tree(text)
        assert [l.leaf for l in tree.leaves()] == ["Dogs", "are", "intelligent", "."]
        nps = extract_nps(tree, ["NNS", "VBP", "JJ", "."], "en")
        assert len(nps) == 1
        assert (nps[0].start, nps[0].end) == (0, 1)

    def test_unbalanced_raises_at_end(self):
        with pytest.raises(TreeParseError, match="unbalanced"):
            parse_tree("(NP (DT the")

    def test_empty_constituent_rejected(self):
        with pytest.raises(TreeParseError, match="empty constituent"):
            parse_tree("(NP () (NN dog))")

    def test_trailing_content_rejected(self):
        with pytest.raises(TreeParseError, match="trailing"):
            parse_tree("(NP (NN dog)) extra")

    def test_empty_input_rejected(self):
        with pytest.raises(TreeParseError):
            parse_tree("   ")

    def test_label_free_root_wrapper(self):
        tree = parse_tree("( (S (NN dog)))")
        assert tree.label == ""
        assert [l.leaf for l in tree.leaves()] == ["dog"]

    def test_print_parse_identity(self):
        texts = [
            "(NP (DT the) (NN dog))",
            "(S (NP (NNS Dogs)) (VP (VBP are) (ADJP (JJ intelligent))) (. .))",
            "(IP (NP (PN 我)) (VP (VV 看) (NP (DNP (NP (NR 李四)) (DEG 的)) (NP (NN 书)))) (PU 。))",
        ]
        for text in texts:
            tree = parse_tree(text)
            assert parse_tree(print_tree(tree)) == tree
            assert print_tree(parse_tree(print_tree(tree))) == print_tree(tree)

    def test_print_parse_identity_random_trees(self):
        rng = random.Random(5)
        labels = ["S", "NP", "VP", "PP"]
        tags = ["NN", "DT", "VB", "IN"]
        words = ["a", "b", "c", "dd"]

        def build(depth):
            if depth >= 3 or rng.random() < 0.4:
                return ParseTree(label=rng.choice(tags), leaf=rng.choice(words))
            return ParseTree(
                label=rng.choice(labels),
                children=[build(depth + 1) for _ in range(rng.randint(1, 3))],
            )

        for _ in range(50):
            root = ParseTree(label="TOP", children=[build(0), build(0)])
            for i, leaf in enumerate(root.leaves()):
                leaf.index = i
            assert parse_tree(print_tree(root)) == root


class TestExtract:
    def test_possessive_nested_spans(self):
        # "Lisi 's book": the whole NP and the inner possessor NP.
        tree = parse_tree("(NP (NP (NNP Lisi)) (POS 's) (NN book))")
        nps = extract_nps(tree, ["NNP", "POS", "NN"], "en")
        assert [(s.start, s.end) for s in nps] == [(0, 3), (0, 1)]
        outer, inner = nps
        assert outer.is_proper and inner.is_proper
        assert not outer.is_conjunction

    def test_conjunction_flag(self):
        tree = parse_tree("(NP (NP (NNP Zhangsan)) (CC and) (NP (NNP Lisi)))")
        nps = extract_nps(tree, ["NNP", "CC", "NNP"], "en")
        assert [(s.start, s.end) for s in nps] == [(0, 3), (0, 1), (2, 3)]
        assert nps[0].is_conjunction
        assert not nps[1].is_conjunction and not nps[2].is_conjunction

    def test_no_np_empty(self):
        tree = parse_tree("(S (VP (VB go)))")
        assert extract_nps(tree, ["VB"], "en") == []

    def test_pronoun_flag_single_token_only(self):
        tree = parse_tree("(S (NP (PRP he)) (VP (VBD slept) (NP (PRP$ my) (NN mom))))")
        nps = extract_nps(tree, ["PRP", "VBD", "PRP$", "NN"], "en")
        by_span = {(s.start, s.end): s for s in nps}
        assert by_span[(0, 1)].is_pronoun
        assert not by_span[(2, 4)].is_pronoun  # multi-token span with PRP$ inside

    def test_chinese_pronoun_and_proper_flags(self):
        tree = parse_tree("(IP (NP (PN 我)) (VP (VV 喜欢) (NP (NR 张三))))")
        nps = extract_nps(tree, ["PN", "VV", "NR"], "zh")
        by_span = {(s.start, s.end): s for s in nps}
        assert by_span[(0, 1)].is_pronoun
        assert by_span[(2, 3)].is_proper

    def test_unary_chain_deduped(self):
        tree = parse_tree("(NP (NP (NP (NN dog))))")
        nps = extract_nps(tree, ["NN"], "en")
        assert len(nps) == 1
        assert nps[0].node_path == ()  # highest node kept

    def test_sorted_and_laminar(self):
        tree = parse_tree(
            "(S (NP (NP (DT the) (NN dog)) (PP (IN of) (NP (NN war)))) (VP (VBD ran)))"
        )
        pos = ["DT", "NN", "IN", "NN", "VBD"]
        nps = extract_nps(tree, pos, "en")
        spans = [(s.start, s.end) for s in nps]
        assert spans == sorted(spans, key=lambda t: (t[0], -(t[1] - t[0])))
        for a in nps:
            for b in nps:
                overlap = max(a.start, b.start) < min(a.end, b.end)
                nested = a.contains(b) or b.contains(a)
                assert not overlap or nested

    def test_leaf_pos_mismatch_rejected(self):
        tree = parse_tree("(NP (NN dog))")
        with pytest.raises(ValueError):
            extract_nps(tree, ["NN", "NN"], "en")


class TestHead:
    def test_rightmost_noun(self):
        assert head_token(0, 3, ["DT", "JJ", "NN"]) == 2

    def test_men_example(self):
        # "大人们 会 告诉 你": span is just the first token.
        assert head_token(0, 1, ["NN", "VV", "VV", "PN"]) == 0

    def test_no_noun_falls_back_to_last(self):
        assert head_token(0, 1, ["CD"]) == 0
        assert head_token(1, 3, ["NN", "CD", "JJ"]) == 2

    def test_head_always_inside_span(self):
        rng = random.Random(3)
        tags = ["NN", "DT", "CD", "VV", "NR", "JJ"]
        for _ in range(100):
            n = rng.randint(1, 8)
            pos = [rng.choice(tags) for _ in range(n)]
            start = rng.randrange(n)
            end = rng.randint(start + 1, n)
            assert start <= head_token(start, end, pos) < end
