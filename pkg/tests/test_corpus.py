import json

import pytest
from hypothesis import given, strategies as st

from zhnp.corpus import (
    AnnotatedNP,
    AssessmentRecord,
    CorpusFormatError,
    Definiteness,
    ParallelSentence,
    Plurality,
    Span,
    read_corpus,
    read_dataset,
    read_records,
    write_corpus,
    write_dataset,
    write_records,
)


def make_sentence(**overrides):
    fields = dict(
        id="s1",
        doc_id="d1",
        position=0,
        en_tokens=("the", "dog", "ran"),
        en_pos=("DT", "NN", "VBD"),
        en_tree="(S (NP (DT the) (NN dog)) (VP (VBD ran)))",
        zh_tokens=("狗", "跑", "了"),
        zh_pos=("NN", "VV", "AS"),
        zh_tree="(IP (NP (NN 狗)) (VP (VV 跑) (AS 了)))",
    )
    fields.update(overrides)
    return ParallelSentence(**fields)


def write_lines(path, lines):
    with open(path, "w", encoding="utf-8") as f:
        for line in lines:
            f.write(line + "\n")


def sentence_line(**overrides):
    obj = {
        "id": "s1", "doc_id": "d1", "position": 0,
        "en_tokens": ["the", "dog", "ran"],
        "en_pos": ["DT", "NN", "VBD"],
        "en_tree": "(S (NP (DT the) (NN dog)) (VP (VBD ran)))",
        "zh_tokens": ["狗", "跑", "了"],
        "zh_pos": ["NN", "VV", "AS"],
        "zh_tree": "(IP (NP (NN 狗)) (VP (VV 跑) (AS 了)))",
    }
    obj.update(overrides)
    return json.dumps(obj, ensure_ascii=False)


class TestReadCorpus:
    def test_roundtrip_single_sentence(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_lines(path, [sentence_line()])
        [sent] = list(read_corpus(path))
        assert sent.en_tokens == ("the", "dog", "ran")
        assert sent.zh_pos == ("NN", "VV", "AS")

    def test_pos_length_mismatch_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_lines(path, [sentence_line(en_pos=["DT", "NN"])])
        with pytest.raises(CorpusFormatError, match="s1"):
            list(read_corpus(path))

    def test_empty_file_is_empty_stream(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text("")
        assert list(read_corpus(path)) == []

    def test_malformed_line_names_line_number(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_lines(path, [sentence_line(), "{not json"])
        with pytest.raises(CorpusFormatError, match=":2"):
            list(read_corpus(path))

    def test_tree_leaf_count_must_match_tokens(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_lines(path, [sentence_line(en_tree="(S (NN dog))")])
        with pytest.raises(CorpusFormatError, match="leaves"):
            list(read_corpus(path))

    def test_duplicate_id_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_lines(path, [sentence_line(), sentence_line(position=1)])
        with pytest.raises(CorpusFormatError, match="duplicate sentence id"):
            list(read_corpus(path))

    def test_duplicate_position_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_lines(path, [sentence_line(), sentence_line(id="s2")])
        with pytest.raises(CorpusFormatError, match="duplicate position"):
            list(read_corpus(path))

    def test_write_then_read_is_identity(self, tmp_path):
        path = tmp_path / "c.jsonl"
        sents = [make_sentence(), make_sentence(id="s2", position=1)]
        assert write_corpus(sents, path) == 2
        assert list(read_corpus(path)) == sents


def make_record(**overrides):
    fields = dict(
        id="s1:0-1",
        sent_id="s1",
        zh_span=Span(0, 1, 0),
        zh_text="狗",
        en_span=Span(0, 2, 1),
        en_text="the dog",
        plurality=Plurality.SINGULAR,
        definiteness=Definiteness.DEFINITE,
    )
    fields.update(overrides)
    return AnnotatedNP(**fields)


class TestDataset:
    def test_zero_records_empty_file(self, tmp_path):
        path = tmp_path / "d.jsonl"
        assert write_dataset([], path) == 0
        assert path.read_text() == ""
        assert list(read_dataset(path)) == []

    def test_roundtrip_two_records(self, tmp_path):
        path = tmp_path / "d.jsonl"
        records = [make_record(), make_record(id="s1:2-3", zh_span=Span(2, 3, 2),
                                              zh_text="了", men_suffix=True,
                                              plurality=Plurality.PLURAL)]
        assert write_dataset(records, path) == 2
        assert list(read_dataset(path)) == records

    def test_unsplit_serialized_explicitly(self, tmp_path):
        path = tmp_path / "d.jsonl"
        write_dataset([make_record()], path)
        obj = json.loads(path.read_text())
        assert obj["split"] == "unsplit"

    def test_invalid_label_rejected(self, tmp_path):
        path = tmp_path / "d.jsonl"
        write_dataset([make_record()], path)
        broken = json.loads(path.read_text())
        broken["plurality"] = "both"
        path.write_text(json.dumps(broken, ensure_ascii=False) + "\n")
        with pytest.raises(CorpusFormatError):
            list(read_dataset(path))

    @given(
        st.builds(
            make_record,
            id=st.text("ab:0-9", min_size=1, max_size=12),
            zh_text=st.text(alphabet="狗猫书 ", min_size=1, max_size=8).map(str.strip).filter(bool),
            plurality=st.sampled_from(list(Plurality)),
            definiteness=st.sampled_from(list(Definiteness)),
            explicit_plural=st.booleans(),
            explicit_definite=st.booleans(),
            men_suffix=st.booleans(),
            split=st.sampled_from(["train", "dev", "test", "unsplit"]),
        )
    )
    def test_roundtrip_property(self, record):
        assert AnnotatedNP.from_json(record.to_json()) == record


class TestSpans:
    def test_bad_span_rejected(self):
        with pytest.raises(ValueError):
            Span(2, 2, 2)
        with pytest.raises(ValueError):
            Span(0, 2, 2)

    def test_negative_start_rejected(self):
        with pytest.raises(ValueError):
            Span(-1, 1, 0)


class TestAssessmentRecords:
    def test_a1_with_direct_labels_rejected(self):
        rec = AssessmentRecord(item_id="i", annotator_id="a", protocol="A1",
                               np_ok="yes", plurality_ok="yes", definiteness_ok="no",
                               plurality_label="plural")
        with pytest.raises(ValueError, match="direct labels"):
            rec.validate()

    def test_a2_with_yes_no_rejected(self):
        rec = AssessmentRecord(item_id="i", annotator_id="a", protocol="A2",
                               np_ok="yes", plurality_label="plural",
                               definiteness_label="definite")
        with pytest.raises(ValueError, match="yes/no"):
            rec.validate()

    def test_roundtrip_and_duplicate_detection(self, tmp_path):
        path = tmp_path / "r.jsonl"
        rec = AssessmentRecord(item_id="i", annotator_id="a", protocol="A2",
                               plurality_label="plural", definiteness_label="none",
                               timestamp=5)
        assert write_records([rec], path) == 1
        assert list(read_records(path)) == [rec]
        with open(path, "a", encoding="utf-8") as f:
            f.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")
        with pytest.raises(CorpusFormatError, match="duplicate record"):
            list(read_records(path))
