#!/usr/bin/env python3
"""Generate the bundled toy parallel corpus.

Each sentence pair comes from a hand-written template that declares its own
gold word alignments, the target Chinese NP span, and the expected labels.
Those declarations are written alongside the corpus so tests can use the
generator as an oracle for the projection pipeline: the pipeline must
reproduce the declared spans and labels exactly when run on the gold
alignments.

Usage: python scripts/make_toy_corpus.py [--out-dir data/toy] [--seed 11]
                                         [--docs 10] [--sentences 20]
"""

import argparse
import json
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from zhnp.corpus import read_corpus  # noqa: E402  (sanity check at the end)

NOUNS = [
    # en singular, en plural, zh, zh classifier
    ("dog", "dogs", "狗", "只"),
    ("cat", "cats", "猫", "只"),
    ("book", "books", "书", "本"),
    ("cup", "cups", "杯子", "个"),
    ("apple", "apples", "苹果", "个"),
    ("car", "cars", "车", "辆"),
    ("horse", "horses", "马", "匹"),
    ("house", "houses", "房子", "间"),
]

PERSON_NOUNS = [
    # en singular, en plural, zh (takes the 们 suffix)
    ("child", "children", "孩子"),
    ("friend", "friends", "朋友"),
    ("adult", "adults", "大人"),
    ("student", "students", "学生"),
    ("worker", "workers", "工人"),
]

NAMES = [("Zhangsan", "张三"), ("Lisi", "李四"), ("Wangwu", "王五"), ("Zhaoliu", "赵六")]

NUMBERS = [("two", "两"), ("three", "三"), ("four", "四"), ("five", "五")]

TRANS_VERBS = [("saw", "看到"), ("bought", "买"), ("found", "找到")]


def t_saw_a(rng):
    en_n, _, zh_n, clf = rng.choice(NOUNS)
    en_v, zh_v = rng.choice(TRANS_VERBS)
    return {
        "en_tokens": ["I", en_v, "a", en_n, "."],
        "en_pos": ["PRP", "VBD", "DT", "NN", "."],
        "en_tree": f"(S (NP (PRP I)) (VP (VBD {en_v}) (NP (DT a) (NN {en_n}))) (. .))",
        "zh_tokens": ["我", zh_v, "一", clf, zh_n, "。"],
        "zh_pos": ["PN", "VV", "CD", "M", "NN", "PU"],
        "zh_tree": f"(IP (NP (PN 我)) (VP (VV {zh_v}) (NP (QP (CD 一) (CLP (M {clf}))) (NN {zh_n}))) (PU 。))",
        "links_e2z": [(0, 0), (1, 1), (2, 2), (3, 4)],
        "links_z2e": [(0, 0), (1, 1), (2, 2), (4, 3)],
        "gold": {
            "zh_span": (2, 5, 4), "en_span": (2, 4),
            "plurality": "singular", "definiteness": "indefinite",
            "explicit_plural": True, "explicit_definite": False, "men_suffix": False,
        },
    }


def t_saw_number(rng):
    _, en_pl, zh_n, clf = rng.choice(NOUNS)
    num_en, num_zh = rng.choice(NUMBERS)
    en_v, zh_v = rng.choice(TRANS_VERBS)
    return {
        "en_tokens": ["I", en_v, num_en, en_pl, "."],
        "en_pos": ["PRP", "VBD", "CD", "NNS", "."],
        "en_tree": f"(S (NP (PRP I)) (VP (VBD {en_v}) (NP (CD {num_en}) (NNS {en_pl}))) (. .))",
        "zh_tokens": ["我", zh_v, num_zh, clf, zh_n, "。"],
        "zh_pos": ["PN", "VV", "CD", "M", "NN", "PU"],
        "zh_tree": f"(IP (NP (PN 我)) (VP (VV {zh_v}) (NP (QP (CD {num_zh}) (CLP (M {clf}))) (NN {zh_n}))) (PU 。))",
        "links_e2z": [(0, 0), (1, 1), (2, 2), (3, 4)],
        "links_z2e": [(0, 0), (1, 1), (2, 2), (4, 3)],
        "gold": {
            "zh_span": (2, 5, 4), "en_span": (2, 4),
            "plurality": "plural", "definiteness": "indefinite",
            "explicit_plural": True, "explicit_definite": False, "men_suffix": False,
        },
    }


def t_ran_away(rng):
    en_n, _, zh_n, _ = rng.choice(NOUNS)
    return {
        "en_tokens": ["The", en_n, "ran", "away", "."],
        "en_pos": ["DT", "NN", "VBD", "RB", "."],
        "en_tree": f"(S (NP (DT The) (NN {en_n})) (VP (VBD ran) (ADVP (RB away))) (. .))",
        "zh_tokens": [zh_n, "跑", "了", "。"],
        "zh_pos": ["NN", "VV", "AS", "PU"],
        "zh_tree": f"(IP (NP (NN {zh_n})) (VP (VV 跑) (AS 了)) (PU 。))",
        "links_e2z": [(1, 0), (2, 1)],
        "links_z2e": [(0, 1), (1, 2)],
        "gold": {
            "zh_span": (0, 1, 0), "en_span": (0, 2),
            "plurality": "singular", "definiteness": "definite",
            "explicit_plural": False, "explicit_definite": False, "men_suffix": False,
        },
    }


def t_generic(rng):
    _, en_pl, zh_n, _ = rng.choice(NOUNS)
    return {
        "en_tokens": [en_pl.capitalize(), "are", "intelligent", "."],
        "en_pos": ["NNS", "VBP", "JJ", "."],
        "en_tree": f"(S (NP (NNS {en_pl.capitalize()})) (VP (VBP are) (ADJP (JJ intelligent))) (. .))",
        "zh_tokens": [zh_n, "很", "聪明", "。"],
        "zh_pos": ["NN", "AD", "VA", "PU"],
        "zh_tree": f"(IP (NP (NN {zh_n})) (VP (AD 很) (VA 聪明)) (PU 。))",
        "links_e2z": [(0, 0), (2, 2)],
        "links_z2e": [(0, 0), (2, 2)],
        "gold": {
            "zh_span": (0, 1, 0), "en_span": (0, 1),
            "plurality": "plural", "definiteness": "indefinite",
            "explicit_plural": False, "explicit_definite": False, "men_suffix": False,
        },
    }


def t_all_ran(rng):
    _, en_pl, zh_n, _ = rng.choice(NOUNS)
    return {
        "en_tokens": ["The", en_pl, "ran", "away", "."],
        "en_pos": ["DT", "NNS", "VBD", "RB", "."],
        "en_tree": f"(S (NP (DT The) (NNS {en_pl})) (VP (VBD ran) (ADVP (RB away))) (. .))",
        "zh_tokens": [zh_n, "都", "跑", "了", "。"],
        "zh_pos": ["NN", "AD", "VV", "AS", "PU"],
        "zh_tree": f"(IP (NP (NN {zh_n})) (VP (AD 都) (VV 跑) (AS 了)) (PU 。))",
        "links_e2z": [(1, 0), (2, 2)],
        "links_z2e": [(0, 1), (2, 2)],
        "gold": {
            "zh_span": (0, 1, 0), "en_span": (0, 2),
            "plurality": "plural", "definiteness": "definite",
            "explicit_plural": False, "explicit_definite": False, "men_suffix": False,
        },
    }


def t_like_name(rng):
    en_name, zh_name = rng.choice(NAMES)
    return {
        "en_tokens": ["I", "like", en_name, "."],
        "en_pos": ["PRP", "VBP", "NNP", "."],
        "en_tree": f"(S (NP (PRP I)) (VP (VBP like) (NP (NNP {en_name}))) (. .))",
        "zh_tokens": ["我", "喜欢", zh_name, "。"],
        "zh_pos": ["PN", "VV", "NR", "PU"],
        "zh_tree": f"(IP (NP (PN 我)) (VP (VV 喜欢) (NP (NR {zh_name}))) (PU 。))",
        "links_e2z": [(0, 0), (1, 1), (2, 2)],
        "links_z2e": [(0, 0), (1, 1), (2, 2)],
        "gold": {
            "zh_span": (2, 3, 2), "en_span": (2, 3),
            "plurality": "singular", "definiteness": "definite",
            "explicit_plural": False, "explicit_definite": True, "men_suffix": False,
        },
    }


def t_possessive(rng):
    en_name, zh_name = rng.choice(NAMES)
    en_n, _, zh_n, _ = rng.choice(NOUNS)
    return {
        "en_tokens": ["I", "read", en_name, "'s", en_n, "."],
        "en_pos": ["PRP", "VBD", "NNP", "POS", "NN", "."],
        "en_tree": (
            f"(S (NP (PRP I)) (VP (VBD read) (NP (NP (NNP {en_name}) (POS 's)) "
            f"(NN {en_n}))) (. .))"
        ),
        "zh_tokens": ["我", "看", zh_name, "的", zh_n, "。"],
        "zh_pos": ["PN", "VV", "NR", "DEG", "NN", "PU"],
        "zh_tree": (
            f"(IP (NP (PN 我)) (VP (VV 看) (NP (DNP (NP (NR {zh_name})) (DEG 的)) "
            f"(NP (NN {zh_n})))) (PU 。))"
        ),
        "links_e2z": [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)],
        "links_z2e": [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)],
        "gold": {
            "zh_span": (2, 5, 4), "en_span": (2, 5),
            "plurality": "singular", "definiteness": "definite",
            "explicit_plural": False, "explicit_definite": True, "men_suffix": False,
        },
    }


def t_men_definite(rng):
    _, en_pl, zh_n = rng.choice(PERSON_NOUNS)
    return {
        "en_tokens": ["The", en_pl, "came", "back", "."],
        "en_pos": ["DT", "NNS", "VBD", "RB", "."],
        "en_tree": f"(S (NP (DT The) (NNS {en_pl})) (VP (VBD came) (ADVP (RB back))) (. .))",
        "zh_tokens": [zh_n + "们", "回来", "了", "。"],
        "zh_pos": ["NN", "VV", "AS", "PU"],
        "zh_tree": f"(IP (NP (NN {zh_n}们)) (VP (VV 回来) (AS 了)) (PU 。))",
        "links_e2z": [(1, 0), (2, 1)],
        "links_z2e": [(0, 1), (1, 2)],
        "gold": {
            "zh_span": (0, 1, 0), "en_span": (0, 2),
            "plurality": "plural", "definiteness": "definite",
            "explicit_plural": False, "explicit_definite": False, "men_suffix": True,
        },
    }


def t_men_indefinite(rng):
    _, en_pl, zh_n = rng.choice(PERSON_NOUNS)
    return {
        "en_tokens": [en_pl.capitalize(), "came", "back", "."],
        "en_pos": ["NNS", "VBD", "RB", "."],
        "en_tree": f"(S (NP (NNS {en_pl.capitalize()})) (VP (VBD came) (ADVP (RB back))) (. .))",
        "zh_tokens": [zh_n + "们", "回来", "了", "。"],
        "zh_pos": ["NN", "VV", "AS", "PU"],
        "zh_tree": f"(IP (NP (NN {zh_n}们)) (VP (VV 回来) (AS 了)) (PU 。))",
        "links_e2z": [(0, 0), (1, 1)],
        "links_z2e": [(0, 0), (1, 1)],
        "gold": {
            "zh_span": (0, 1, 0), "en_span": (0, 1),
            "plurality": "plural", "definiteness": "indefinite",
            "explicit_plural": False, "explicit_definite": False, "men_suffix": True,
        },
    }


def t_gemen(rng):
    return {
        "en_tokens": ["My", "buddy", "came", "back", "."],
        "en_pos": ["PRP$", "NN", "VBD", "RB", "."],
        "en_tree": "(S (NP (PRP$ My) (NN buddy)) (VP (VBD came) (ADVP (RB back))) (. .))",
        "zh_tokens": ["哥们", "回来", "了", "。"],
        "zh_pos": ["NN", "VV", "AS", "PU"],
        "zh_tree": "(IP (NP (NN 哥们)) (VP (VV 回来) (AS 了)) (PU 。))",
        "links_e2z": [(1, 0), (2, 1)],
        "links_z2e": [(0, 1), (1, 2)],
        "gold": {
            "zh_span": (0, 1, 0), "en_span": (0, 2),
            "plurality": "singular", "definiteness": "indefinite",
            "explicit_plural": False, "explicit_definite": False, "men_suffix": False,
        },
    }


def t_this(rng):
    en_n, _, zh_n, clf = rng.choice(NOUNS)
    return {
        "en_tokens": ["I", "want", "this", en_n, "."],
        "en_pos": ["PRP", "VBP", "DT", "NN", "."],
        "en_tree": f"(S (NP (PRP I)) (VP (VBP want) (NP (DT this) (NN {en_n}))) (. .))",
        "zh_tokens": ["我", "要", "这", clf, zh_n, "。"],
        "zh_pos": ["PN", "VV", "DT", "M", "NN", "PU"],
        "zh_tree": f"(IP (NP (PN 我)) (VP (VV 要) (NP (DP (DT 这) (CLP (M {clf}))) (NN {zh_n}))) (PU 。))",
        "links_e2z": [(0, 0), (1, 1), (2, 2), (3, 4)],
        "links_z2e": [(0, 0), (1, 1), (2, 2), (4, 3)],
        "gold": {
            "zh_span": (2, 5, 4), "en_span": (2, 4),
            "plurality": "singular", "definiteness": "definite",
            "explicit_plural": True, "explicit_definite": True, "men_suffix": False,
        },
    }


def t_those(rng):
    _, en_pl, zh_n, _ = rng.choice(NOUNS)
    return {
        "en_tokens": ["I", "want", "those", en_pl, "."],
        "en_pos": ["PRP", "VBP", "DT", "NNS", "."],
        "en_tree": f"(S (NP (PRP I)) (VP (VBP want) (NP (DT those) (NNS {en_pl}))) (. .))",
        "zh_tokens": ["我", "要", "那", "些", zh_n, "。"],
        "zh_pos": ["PN", "VV", "DT", "M", "NN", "PU"],
        "zh_tree": f"(IP (NP (PN 我)) (VP (VV 要) (NP (DP (DT 那) (CLP (M 些))) (NN {zh_n}))) (PU 。))",
        "links_e2z": [(0, 0), (1, 1), (2, 2), (3, 4)],
        "links_z2e": [(0, 0), (1, 1), (2, 2), (4, 3)],
        "gold": {
            "zh_span": (2, 5, 4), "en_span": (2, 4),
            "plurality": "plural", "definiteness": "definite",
            "explicit_plural": True, "explicit_definite": True, "men_suffix": False,
        },
    }


def t_cups_of_coffee(rng):
    num_en, num_zh = rng.choice(NUMBERS)
    return {
        "en_tokens": ["I", "drank", num_en, "cups", "of", "coffee", "."],
        "en_pos": ["PRP", "VBD", "CD", "NNS", "IN", "NN", "."],
        "en_tree": (
            f"(S (NP (PRP I)) (VP (VBD drank) (NP (NP (CD {num_en}) (NNS cups)) "
            f"(PP (IN of) (NP (NN coffee))))) (. .))"
        ),
        "zh_tokens": ["我", "喝", "了", num_zh, "杯", "咖啡", "。"],
        "zh_pos": ["PN", "VV", "AS", "CD", "M", "NN", "PU"],
        "zh_tree": (
            f"(IP (NP (PN 我)) (VP (VV 喝) (AS 了) (NP (QP (CD {num_zh}) (CLP (M 杯))) "
            f"(NN 咖啡))) (PU 。))"
        ),
        "links_e2z": [(0, 0), (1, 1), (2, 3), (3, 4), (5, 5)],
        "links_z2e": [(0, 0), (1, 1), (3, 2), (4, 3), (5, 5)],
        "gold": {
            "zh_span": (3, 6, 5), "en_span": (2, 6),
            "plurality": "plural", "definiteness": "indefinite",
            "explicit_plural": True, "explicit_definite": False, "men_suffix": False,
        },
    }


def t_some(rng):
    _, en_pl, zh_n, _ = rng.choice(NOUNS)
    en_v, zh_v = rng.choice(TRANS_VERBS)
    return {
        "en_tokens": ["I", en_v, "some", en_pl, "."],
        "en_pos": ["PRP", "VBD", "DT", "NNS", "."],
        "en_tree": f"(S (NP (PRP I)) (VP (VBD {en_v}) (NP (DT some) (NNS {en_pl}))) (. .))",
        "zh_tokens": ["我", zh_v, "了", "一些", zh_n, "。"],
        "zh_pos": ["PN", "VV", "AS", "CD", "NN", "PU"],
        "zh_tree": f"(IP (NP (PN 我)) (VP (VV {zh_v}) (AS 了) (NP (QP (CD 一些)) (NN {zh_n}))) (PU 。))",
        "links_e2z": [(0, 0), (1, 1), (2, 3), (3, 4)],
        "links_z2e": [(0, 0), (1, 1), (3, 2), (4, 3)],
        "gold": {
            "zh_span": (3, 5, 4), "en_span": (2, 4),
            "plurality": "plural", "definiteness": "indefinite",
            "explicit_plural": True, "explicit_definite": False, "men_suffix": False,
        },
    }


def t_sleeping(rng):
    en_n, _, zh_n, _ = rng.choice(NOUNS)
    return {
        "en_tokens": ["The", en_n, "is", "sleeping", "."],
        "en_pos": ["DT", "NN", "VBZ", "VBG", "."],
        "en_tree": f"(S (NP (DT The) (NN {en_n})) (VP (VBZ is) (VP (VBG sleeping))) (. .))",
        "zh_tokens": [zh_n, "在", "睡觉", "。"],
        "zh_pos": ["NN", "AD", "VV", "PU"],
        "zh_tree": f"(IP (NP (NN {zh_n})) (VP (AD 在) (VV 睡觉)) (PU 。))",
        "links_e2z": [(1, 0), (3, 2)],
        "links_z2e": [(0, 1), (2, 3)],
        "gold": {
            "zh_span": (0, 1, 0), "en_span": (0, 2),
            "plurality": "singular", "definiteness": "definite",
            "explicit_plural": False, "explicit_definite": False, "men_suffix": False,
        },
    }


# (template, sampling weight); weights skew toward singular NPs the way
# subtitle data does.
TEMPLATES = [
    (t_saw_a, 3),
    (t_saw_number, 2),
    (t_ran_away, 3),
    (t_generic, 1),
    (t_all_ran, 1),
    (t_like_name, 2),
    (t_possessive, 2),
    (t_men_definite, 1),
    (t_men_indefinite, 1),
    (t_gemen, 1),
    (t_this, 2),
    (t_those, 1),
    (t_cups_of_coffee, 1),
    (t_some, 1),
    (t_sleeping, 2),
]


def generate(out_dir, seed, docs, sentences_per_doc):
    rng = random.Random(seed)
    os.makedirs(out_dir, exist_ok=True)
    weighted = [t for t, w in TEMPLATES for _ in range(w)]
    corpus_path = os.path.join(out_dir, "corpus.jsonl")
    e2z_path = os.path.join(out_dir, "gold_alignments.e2z")
    z2e_path = os.path.join(out_dir, "gold_alignments.z2e")
    labels_path = os.path.join(out_dir, "gold_labels.jsonl")
    n = 0
    with open(corpus_path, "w", encoding="utf-8") as corpus_f, \
            open(e2z_path, "w", encoding="utf-8") as e2z_f, \
            open(z2e_path, "w", encoding="utf-8") as z2e_f, \
            open(labels_path, "w", encoding="utf-8") as labels_f:
        for d in range(docs):
            doc_id = f"d{d:02d}"
            for p in range(sentences_per_doc):
                sent_id = f"{doc_id}-s{p:03d}"
                template = rng.choice(weighted)
                entry = template(rng)
                corpus_f.write(json.dumps({
                    "id": sent_id,
                    "doc_id": doc_id,
                    "position": p,
                    "en_tokens": entry["en_tokens"],
                    "en_pos": entry["en_pos"],
                    "en_tree": entry["en_tree"],
                    "zh_tokens": entry["zh_tokens"],
                    "zh_pos": entry["zh_pos"],
                    "zh_tree": entry["zh_tree"],
                }, ensure_ascii=False) + "\n")
                e2z_f.write(" ".join(f"{i}-{j}" for i, j in sorted(entry["links_e2z"])) + "\n")
                z2e_f.write(" ".join(f"{i}-{j}" for i, j in sorted(entry["links_z2e"])) + "\n")
                start, end, head = entry["gold"]["zh_span"]
                en_start, en_end = entry["gold"]["en_span"]
                labels_f.write(json.dumps({
                    "sent_id": sent_id,
                    "zh_span": {"start": start, "end": end, "head": head},
                    "en_span": {"start": en_start, "end": en_end},
                    "zh_text": " ".join(entry["zh_tokens"][start:end]),
                    "plurality": entry["gold"]["plurality"],
                    "definiteness": entry["gold"]["definiteness"],
                    "explicit_plural": entry["gold"]["explicit_plural"],
                    "explicit_definite": entry["gold"]["explicit_definite"],
                    "men_suffix": entry["gold"]["men_suffix"],
                }, ensure_ascii=False) + "\n")
                n += 1
    # Round-trip validation: the reader enforces every corpus invariant.
    count = sum(1 for _ in read_corpus(corpus_path))
    assert count == n, f"round trip lost sentences: {count} != {n}"
    print(f"wrote {n} sentence pairs to {out_dir}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default=os.path.join("data", "toy"))
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--docs", type=int, default=10)
    ap.add_argument("--sentences", type=int, default=20)
    args = ap.parse_args()
    generate(args.out_dir, args.seed, args.docs, args.sentences)


if __name__ == "__main__":
    main()
