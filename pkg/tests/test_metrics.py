import random
from fractions import Fraction

import pytest

from zhnp.metrics import (
    FOURWAY_CLASSES,
    ConfusionMatrix,
    EvaluationError,
    confusion,
    fourway_label,
    import_predictions,
    marginalize,
    merge_binary,
    metric_report,
    per_class_prf,
    prf,
    subset_eval,
)


def oracle_prf(counts, averaging):
    """Independent P/R/F computation with exact rational arithmetic."""
    n_classes = len(counts)
    total = sum(sum(row) for row in counts)
    per_class = []
    supports = []
    for k in range(n_classes):
        tp = Fraction(counts[k][k])
        fp = sum(Fraction(counts[g][k]) for g in range(n_classes)) - tp
        fn = sum(Fraction(c) for c in counts[k]) - tp
        p = tp / (tp + fp) if tp + fp else Fraction(0)
        r = tp / (tp + fn) if tp + fn else Fraction(0)
        f = 2 * p * r / (p + r) if p + r else Fraction(0)
        per_class.append((p, r, f))
        supports.append(tp + fn)
    if averaging == "macro":
        weights = [Fraction(1, n_classes)] * n_classes
    else:
        weights = [s / Fraction(total) for s in supports]
    return tuple(
        float(sum(w * v[i] for w, v in zip(weights, per_class)))
        for i in range(3)
    )


class TestConfusion:
    def test_perfect_diagonal(self):
        m = confusion(["s", "p"], ["s", "p"], ("s", "p"))
        assert m.counts == ((1, 0), (0, 1))

    def test_off_diagonal(self):
        m = confusion(["s"], ["p"], ("s", "p"))
        assert m.counts == ((0, 1), (0, 0))

    def test_unknown_label_named(self):
        with pytest.raises(EvaluationError, match="'x'"):
            confusion(["x"], ["s"], ("s", "p"))
        with pytest.raises(EvaluationError, match="unknown predicted"):
            confusion(["s"], ["x"], ("s", "p"))

    def test_length_mismatch(self):
        with pytest.raises(EvaluationError):
            confusion(["s"], [], ("s", "p"))

    def test_csv_shape(self):
        m = confusion(["s", "p"], ["s", "p"], ("s", "p"))
        lines = m.to_csv().strip().splitlines()
        assert lines[0] == "gold\\pred,s,p"
        assert lines[1] == "s,1,0"


class TestPRF:
    def test_two_by_two_against_rational_oracle(self):
        m = ConfusionMatrix(classes=("a", "b"), counts=((8, 2), (3, 7)))
        for averaging in ("macro", "weighted"):
            got = prf(m, averaging)
            want = oracle_prf([[8, 2], [3, 7]], averaging)
            assert got == pytest.approx(want, abs=1e-12)
        per = per_class_prf(m)
        assert per["a"]["precision"] == pytest.approx(8 / 11)
        assert per["a"]["recall"] == pytest.approx(0.8)

    def test_perfect_scores(self):
        m = ConfusionMatrix(classes=("a", "b"), counts=((5, 0), (0, 3)))
        assert prf(m, "macro") == pytest.approx((1.0, 1.0, 1.0))
        assert prf(m, "weighted") == pytest.approx((1.0, 1.0, 1.0))

    def test_absent_class_contributes_zero(self):
        m = ConfusionMatrix(classes=("a", "b", "c"), counts=((4, 0, 0), (0, 4, 0), (0, 0, 0)))
        macro_p, macro_r, macro_f = prf(m, "macro")
        assert macro_f == pytest.approx(2 / 3)
        assert metric_report(m)["zero_denominator"] is True

    def test_weighted_f_bounded_by_class_f(self):
        rng = random.Random(6)
        for _ in range(200):
            counts = tuple(
                tuple(rng.randint(0, 9) for _ in range(3)) for _ in range(3)
            )
            if sum(map(sum, counts)) == 0:
                continue
            m = ConfusionMatrix(classes=("a", "b", "c"), counts=counts)
            fs = [v["f1"] for v in per_class_prf(m).values()]
            _, _, wf = prf(m, "weighted")
            assert min(fs) - 1e-12 <= wf <= max(fs) + 1e-12

    def test_order_invariance(self):
        golds = ["a", "b", "a", "c", "b", "a"]
        preds = ["a", "a", "b", "c", "b", "a"]
        m1 = confusion(golds, preds, ("a", "b", "c"))
        order = [3, 0, 5, 2, 4, 1]
        m2 = confusion([golds[i] for i in order], [preds[i] for i in order], ("a", "b", "c"))
        assert m1 == m2


class TestMergeBinary:
    def test_pairing(self):
        assert fourway_label("definite", "plural") == "definite-plural"
        merged = merge_binary({"i1": "plural"}, {"i1": "definite"})
        assert merged == {"i1": "definite-plural"}

    def test_disjoint_ids_error(self):
        with pytest.raises(EvaluationError, match="mismatch"):
            merge_binary({"i1": "plural"}, {"i2": "definite"})

    def test_perfect_binaries_give_perfect_fourway(self):
        golds = {"i1": ("singular", "definite"), "i2": ("plural", "indefinite")}
        plur = {k: v[0] for k, v in golds.items()}
        defi = {k: v[1] for k, v in golds.items()}
        merged = merge_binary(plur, defi)
        gold4 = [fourway_label(d, p) for p, d in golds.values()]
        pred4 = [merged[k] for k in golds]
        m = confusion(gold4, pred4, FOURWAY_CLASSES)
        assert prf(m, "weighted")[2] == pytest.approx(1.0)

    def test_marginalization_recovers_binary_confusions(self):
        rng = random.Random(12)
        for _ in range(50):
            n = rng.randint(1, 40)
            plur_g = [rng.choice(("singular", "plural")) for _ in range(n)]
            defi_g = [rng.choice(("definite", "indefinite")) for _ in range(n)]
            plur_p = [rng.choice(("singular", "plural")) for _ in range(n)]
            defi_p = [rng.choice(("definite", "indefinite")) for _ in range(n)]
            gold4 = [fourway_label(d, p) for p, d in zip(plur_g, defi_g)]
            pred4 = [fourway_label(d, p) for p, d in zip(plur_p, defi_p)]
            m4 = confusion(gold4, pred4, FOURWAY_CLASSES)
            assert marginalize(m4, "plurality") == confusion(
                plur_g, plur_p, ("singular", "plural"))
            assert marginalize(m4, "definiteness") == confusion(
                defi_g, defi_p, ("definite", "indefinite"))


class TestSubsetEval:
    def test_all_explicit_leaves_implicit_undefined(self):
        out = subset_eval(["s", "p"], ["s", "p"], [True, True], ("s", "p"))
        assert out["implicit"] is None
        assert out["n_implicit"] == 0
        assert out["explicit"]["weighted"]["f1"] == pytest.approx(1.0)

    def test_mixed_perfect(self):
        out = subset_eval(["s", "p"], ["s", "p"], [True, False], ("s", "p"))
        # Each subset holds a single class, so support-weighted scores are
        # the perfect-prediction measure (macro averages in the absent class).
        assert out["explicit"]["weighted"]["f1"] == pytest.approx(1.0)
        assert out["implicit"]["weighted"]["f1"] == pytest.approx(1.0)

    def test_known_per_subset_errors(self):
        golds = ["s", "s", "p", "p", "s", "p"]
        preds = ["s", "p", "p", "p", "s", "s"]
        mask = [True, True, True, False, False, False]
        out = subset_eval(golds, preds, mask, ("s", "p"))
        # Explicit subset: golds s,s,p vs preds s,p,p -> accuracy 2/3.
        exp = out["explicit"]
        assert exp["n"] == 3
        assert exp["per_class"]["s"]["recall"] == pytest.approx(0.5)
        assert exp["per_class"]["p"]["recall"] == pytest.approx(1.0)
        # Implicit subset: golds p,s,p vs preds p,s,s.
        imp = out["implicit"]
        assert imp["per_class"]["p"]["recall"] == pytest.approx(0.5)
        assert imp["per_class"]["s"]["recall"] == pytest.approx(1.0)


class TestImportPredictions:
    def write(self, path, lines):
        with open(path, "w", encoding="utf-8") as f:
            f.write("\n".join(lines) + "\n")

    def test_three_valid_lines(self, tmp_path):
        path = tmp_path / "p.jsonl"
        self.write(path, [
            '{"id": "a", "task": "plurality", "label": "plural"}',
            '{"id": "b", "task": "plurality", "label": "singular", "scores": {"plural": 0.2}}',
            '{"id": "c", "task": "plurality", "label": "plural"}',
        ])
        preds = import_predictions(path)
        assert preds.task == "plurality"
        assert len(preds.labels) == 3
        assert preds.scores["b"] == {"plural": 0.2}

    def test_duplicate_id(self, tmp_path):
        path = tmp_path / "p.jsonl"
        self.write(path, [
            '{"id": "a", "task": "plurality", "label": "plural"}',
            '{"id": "a", "task": "plurality", "label": "singular"}',
        ])
        with pytest.raises(EvaluationError, match="duplicate id"):
            import_predictions(path)

    def test_unknown_label(self, tmp_path):
        path = tmp_path / "p.jsonl"
        self.write(path, ['{"id": "a", "task": "plurality", "label": "both"}'])
        with pytest.raises(EvaluationError, match="'both'"):
            import_predictions(path)

    def test_missing_field_located(self, tmp_path):
        path = tmp_path / "p.jsonl"
        self.write(path, ['{"id": "a", "task": "plurality"}'])
        with pytest.raises(EvaluationError, match=":1: missing field 'label'"):
            import_predictions(path)

    def test_task_mismatch(self, tmp_path):
        path = tmp_path / "p.jsonl"
        self.write(path, ['{"id": "a", "task": "definiteness", "label": "definite"}'])
        with pytest.raises(EvaluationError, match="does not match"):
            import_predictions(path, "plurality")
