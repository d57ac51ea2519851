import random

import pytest

from zhnp.align import (
    NULL_TOKEN,
    AlignDiagnostics,
    AlignmentFormatError,
    TranslationTable,
    format_pharaoh,
    read_pharaoh,
    read_pharaoh_file,
    read_table,
    train_model1,
    viterbi_align,
    write_table,
)
from zhnp.corpus import AlignmentSet, ParallelSentence


def pair(en, zh, id="s1", position=0):
    return ParallelSentence(
        id=id, doc_id="d", position=position,
        en_tokens=tuple(en), en_pos=tuple("NN" for _ in en),
        en_tree="(S " + " ".join(f"(NN {w})" for w in en) + ")" if en else "(S)",
        zh_tokens=tuple(zh), zh_pos=tuple("NN" for _ in zh),
        zh_tree="(IP " + " ".join(f"(NN {w})" for w in zh) + ")" if zh else "(IP)",
    )


def table(direction, probs):
    t = {}
    for (s, w), p in probs.items():
        t.setdefault(s, {})[w] = p
    return TranslationTable(
        direction=direction, t=t,
        src_vocab=set(t) - {NULL_TOKEN},
        tgt_vocab={w for row in t.values() for w in row},
    )


class TestTraining:
    def test_forced_mass_single_pair(self):
        result = train_model1([pair(["a"], ["x"])], "e2z", iterations=1)
        assert result.prob("a", "x") == pytest.approx(1.0)

    def test_iterations_zero_rejected(self):
        with pytest.raises(ValueError, match="iterations"):
            train_model1([pair(["a"], ["x"])], "e2z", iterations=0)

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError, match="empty corpus"):
            train_model1([], "e2z", iterations=1)

    def test_empty_side_skipped_and_counted(self):
        result = train_model1(
            [pair(["a"], ["x"]), pair(["b"], [], id="s2", position=1)],
            "e2z", iterations=1,
        )
        assert result.skipped == 1

    def test_rows_normalize_after_every_m_step(self, toy_corpus):
        result = train_model1(toy_corpus[:50], "e2z", iterations=3)
        for s, row in result.t.items():
            assert sum(row.values()) == pytest.approx(1.0, abs=1e-6)
            assert all(0.0 <= p <= 1.0 + 1e-12 for p in row.values())

    def test_log_likelihood_non_decreasing_random_corpora(self):
        rng = random.Random(17)
        vocab_src = ["a", "b", "c", "d", "e"]
        vocab_tgt = ["u", "v", "w", "x", "y"]
        for trial in range(5):
            corpus = []
            for i in range(30):
                n = rng.randint(1, 5)
                m = rng.randint(1, 5)
                corpus.append(pair(
                    [rng.choice(vocab_src) for _ in range(n)],
                    [rng.choice(vocab_tgt) for _ in range(m)],
                    id=f"s{i}", position=i,
                ))
            result = train_model1(corpus, "e2z", iterations=8)
            history = result.ll_history
            assert len(history) == 9
            for before, after in zip(history, history[1:]):
                assert after >= before - 1e-9

    def test_training_is_deterministic(self, toy_corpus):
        a = train_model1(toy_corpus[:40], "e2z", iterations=4)
        b = train_model1(toy_corpus[:40], "e2z", iterations=4)
        assert a.t == b.t

    def test_english_is_case_folded(self):
        result = train_model1(
            [pair(["The", "dog"], ["狗"]), pair(["the", "dog"], ["狗"], id="s2", position=1)],
            "e2z", iterations=2,
        )
        assert "the" in result.src_vocab
        assert "The" not in result.src_vocab


class TestViterbi:
    def test_argmax_link(self):
        t = table("e2z", {("a", "x"): 0.9, ("b", "x"): 0.1})
        aset = viterbi_align(t, pair(["a", "b"], ["x"]))
        assert aset.links == frozenset({(0, 0)})

    def test_null_mass_omits_link(self):
        t = table("e2z", {(NULL_TOKEN, "x"): 0.9, ("a", "x"): 0.1})
        aset = viterbi_align(t, pair(["a"], ["x"]))
        assert aset.links == frozenset()

    def test_tie_breaks_to_smallest_index(self):
        t = table("e2z", {("a", "x"): 0.5, ("b", "x"): 0.5})
        aset = viterbi_align(t, pair(["a", "b"], ["x"]))
        assert aset.links == frozenset({(0, 0)})

    def test_oov_target_counted(self):
        t = table("e2z", {("a", "x"): 1.0})
        diag = AlignDiagnostics()
        aset = viterbi_align(t, pair(["a"], ["zzz"]), diag)
        assert aset.links == frozenset()
        assert diag.oov_targets == 1


class TestPharaoh:
    def test_basic_line(self):
        aset = read_pharaoh("0-0 1-2", 2, 3)
        assert aset.links == frozenset({(0, 0), (1, 2)})

    def test_empty_line(self):
        assert read_pharaoh("", 2, 3).links == frozenset()

    def test_out_of_range_source(self):
        with pytest.raises(AlignmentFormatError, match="source index 5"):
            read_pharaoh("5-0", 2, 3)

    def test_out_of_range_target(self):
        with pytest.raises(AlignmentFormatError, match="target index 9"):
            read_pharaoh("0-9", 2, 3)

    def test_malformed_token(self):
        with pytest.raises(AlignmentFormatError, match="malformed"):
            read_pharaoh("0-0 xy", 2, 3)

    def test_duplicates_collapse(self):
        assert read_pharaoh("0-0 0-0", 1, 1).links == frozenset({(0, 0)})

    def test_format_read_roundtrip(self):
        rng = random.Random(9)
        for _ in range(50):
            links = frozenset(
                (rng.randrange(6), rng.randrange(7))
                for _ in range(rng.randint(0, 10))
            )
            aset = AlignmentSet(direction="e2z", links=links)
            assert read_pharaoh(format_pharaoh(aset), 6, 7).links == links

    def test_file_length_mismatch(self, tmp_path):
        path = tmp_path / "a.e2z"
        path.write_text("0-0\n0-0\n")
        with pytest.raises(AlignmentFormatError, match="alignment lines"):
            list(read_pharaoh_file(path, [pair(["a"], ["x"])], "e2z"))


class TestTableIO:
    def test_roundtrip(self, tmp_path):
        trained = train_model1(
            [pair(["a", "b"], ["x", "y"]), pair(["a"], ["x"], id="s2", position=1)],
            "e2z", iterations=3,
        )
        path = tmp_path / "t.e2z"
        write_table(trained, path)
        loaded = read_table(path)
        assert loaded.direction == "e2z"
        assert loaded.t == trained.t

    def test_missing_header_rejected(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("a x 1.0\n")
        with pytest.raises(AlignmentFormatError, match="direction"):
            read_table(path)
