import itertools

import numpy as np
import pytest

from manuseg.evaluate import (EvalCounts, aggregate, evaluate_corpus, fmeasure,
                              iou, match_lines, prf, read_boxes, write_boxes)
from manuseg.linedetect import LineBox


def best_assignment_tp(pred, gt, iou_min):
    # Exhaustive oracle: maximum one-to-one matching over all injections.
    if len(pred) > len(gt):
        return best_assignment_tp(gt, pred, iou_min)
    best = 0
    for subset in itertools.permutations(range(len(gt)), len(pred)):
        tp = sum(1 for pi, gi in enumerate(subset) if iou(pred[pi], gt[gi]) >= iou_min)
        best = max(best, tp)
    return best


class TestIou:
    def test_identical(self):
        b = LineBox(3, 4, 10, 10)
        assert iou(b, b) == 1.0

    def test_disjoint(self):
        assert iou(LineBox(0, 0, 5, 5), LineBox(10, 10, 5, 5)) == 0.0

    def test_half_overlap(self):
        assert iou(LineBox(0, 0, 10, 10), LineBox(5, 0, 10, 10)) == pytest.approx(1 / 3)

    def test_symmetric(self):
        a, b = LineBox(0, 0, 8, 4), LineBox(2, 1, 8, 4)
        assert iou(a, b) == iou(b, a)


class TestMatchLines:
    def test_identical_sets(self):
        boxes = [LineBox(0, i * 20, 100, 15) for i in range(5)]
        assert match_lines(boxes, boxes) == EvalCounts(5, 0, 0)

    def test_empty_pred(self):
        gt = [LineBox(0, i * 20, 100, 15) for i in range(7)]
        assert match_lines([], gt) == EvalCounts(0, 0, 7)

    def test_two_preds_one_gt(self):
        gt = [LineBox(0, 0, 100, 20)]
        pred = [LineBox(0, 0, 100, 20), LineBox(0, 2, 100, 20)]
        counts = match_lines(pred, gt)
        assert counts == EvalCounts(1, 1, 0)
        assert best_assignment_tp(pred, gt, 0.5) == 1

    def test_greedy_matches_oracle_on_jittered_lines(self):
        rng = np.random.default_rng(51)
        for _ in range(30):
            n = int(rng.integers(1, 5))
            gt = [LineBox(0, 40 * i, 200, 30) for i in range(n)]
            pred = [LineBox(int(rng.integers(0, 6)), 40 * i + int(rng.integers(-4, 5)),
                            200 - int(rng.integers(0, 10)), 30 + int(rng.integers(-4, 5)))
                    for i in range(n)]
            counts = match_lines(pred, gt)
            assert counts.tp == best_assignment_tp(pred, gt, 0.5)

    def test_greedy_never_beats_oracle(self):
        rng = np.random.default_rng(52)
        for _ in range(30):
            gt = [LineBox(*map(int, rng.integers(0, 30, 2)), *map(int, rng.integers(5, 30, 2)))
                  for _ in range(int(rng.integers(0, 4)))]
            pred = [LineBox(*map(int, rng.integers(0, 30, 2)), *map(int, rng.integers(5, 30, 2)))
                    for _ in range(int(rng.integers(0, 4)))]
            counts = match_lines(pred, gt, 0.3)
            assert counts.tp <= best_assignment_tp(pred, gt, 0.3)
            assert counts.tp + counts.fn == len(gt)
            assert counts.tp + counts.fp == len(pred)

    def test_swap_symmetry(self):
        rng = np.random.default_rng(53)
        gt = [LineBox(0, 40 * i, 200, 30) for i in range(3)]
        pred = [LineBox(0, 40 * i + int(rng.integers(-5, 6)), 190, 32) for i in range(4)]
        a = match_lines(pred, gt)
        b = match_lines(gt, pred)
        assert (a.tp, a.fp, a.fn) == (b.tp, b.fn, b.fp)

    def test_invalid_iou_min(self):
        with pytest.raises(ValueError):
            match_lines([], [], 0.0)


class TestPrf:
    def test_perfect(self):
        assert prf(EvalCounts(10, 0, 0)) == (1.0, 1.0, 1.0)

    def test_all_zero_convention(self):
        assert prf(EvalCounts(0, 0, 0)) == (0.0, 0.0, 0.0)

    def test_fmeasure_from_published_style_rates(self):
        # FM from P=0.8739, R=0.9157 rounds to 0.8943.
        assert fmeasure(0.8739, 0.9157) == pytest.approx(0.8943, abs=5e-4)

    def test_scale_free(self):
        base = prf(EvalCounts(6, 2, 3))
        assert prf(EvalCounts(18, 6, 9)) == pytest.approx(base)

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            EvalCounts(-1, 0, 0)


class TestAggregate:
    def test_single_document(self):
        assert aggregate([(0.5, 0.25, 0.333)]) == pytest.approx((0.5, 0.25, 0.333))

    def test_two_documents(self):
        assert aggregate([(1, 1, 1), (0, 0, 0)]) == pytest.approx((0.5, 0.5, 0.5))

    def test_matches_direct_summation(self):
        rng = np.random.default_rng(54)
        triples = [tuple(rng.random(3)) for _ in range(45)]
        means = aggregate(triples)
        for k in range(3):
            assert means[k] == pytest.approx(sum(t[k] for t in triples) / 45)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            aggregate([])

    def test_mean_fm_is_mean_of_per_doc_fm(self):
        docs = [("a", [LineBox(0, 0, 10, 10)], [LineBox(0, 0, 10, 10)]),
                ("b", [LineBox(0, 0, 10, 10), LineBox(50, 50, 10, 10)],
                 [LineBox(0, 0, 10, 10)])]
        report = evaluate_corpus(docs)
        assert report.mean_fmeasure == pytest.approx(
            (report.per_document[0].fmeasure + report.per_document[1].fmeasure) / 2)
        # and differs from FM of the mean P/R here
        assert report.mean_fmeasure != pytest.approx(
            fmeasure(report.mean_precision, report.mean_recall))


class TestBoxFiles:
    def test_round_trip(self, tmp_path):
        boxes = [LineBox(0, 1, 2, 3), LineBox(10, 20, 30, 40)]
        write_boxes(boxes, tmp_path / "b.txt")
        assert read_boxes(tmp_path / "b.txt") == boxes

    def test_comments_and_blanks_ignored(self, tmp_path):
        (tmp_path / "b.txt").write_text("# header\n\n1 2 3 4\n  \n# tail\n")
        assert read_boxes(tmp_path / "b.txt") == [LineBox(1, 2, 3, 4)]

    def test_malformed_rejected(self, tmp_path):
        (tmp_path / "b.txt").write_text("1 2 3\n")
        with pytest.raises(ValueError):
            read_boxes(tmp_path / "b.txt")

    def test_invalid_box_rejected(self, tmp_path):
        (tmp_path / "b.txt").write_text("0 0 0 5\n")
        with pytest.raises(ValueError):
            read_boxes(tmp_path / "b.txt")
