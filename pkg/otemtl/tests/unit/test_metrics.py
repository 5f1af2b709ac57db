import math
import unittest

from otemtl.core.errors import AlignmentError
from otemtl.core.types import SentenceRecord
from otemtl.data.stats import OverlapCategory
from otemtl.evaluation.errors import (FalsePositiveCategory, classify_false_positive,
                                      error_breakdown)
from otemtl.evaluation.metrics import PRF, gold_by_id, score, summarize_runs
from otemtl.evaluation.significance import (SIGNIFICANCE_LEVEL, compare_runs, paired_t_statistic,
                                            paired_t_test)
from otemtl.tests.fixtures import BATTERY, FOOD, IMAGES, NEG, NEU, OVERLAP_EXAMPLES, POS, triplet


class TestScore(unittest.TestCase):
    def test_one_of_two(self):
        """测试两个预测中一个正确"""
        pred = {"food": [FOOD.triplets[0], triplet((4, 4), (6, 6), POS)]}
        result = score(gold_by_id([FOOD]), pred)
        self.assertEqual((result.tp, result.fp, result.fn), (1, 1, 1))
        self.assertAlmostEqual(result.precision, 0.5)
        self.assertAlmostEqual(result.f1, 0.5)

    def test_gold_as_prediction(self):
        """测试以标注作为预测时F1为1"""
        gold = gold_by_id(OVERLAP_EXAMPLES)
        self.assertEqual(score(gold, gold).f1, 1.0)

    def test_empty_sides(self):
        """测试没有三元组时的指标"""
        empty = SentenceRecord("e", ["a"], [])
        self.assertEqual(score(gold_by_id([empty]), {"e": []}), PRF(0.0, 0.0, 0.0, 0, 0, 0))

    def test_duplicates_counted_once(self):
        """测试重复预测只计一次"""
        pred = {"food": [FOOD.triplets[0]] * 3}
        self.assertEqual(score(gold_by_id([FOOD]), pred).fp, 0)

    def test_alignment(self):
        """测试句子编号不一致"""
        with self.assertRaises(AlignmentError):
            score(gold_by_id([FOOD]), {"other": []})

    def test_summary_uses_mean_of_runs(self):
        """测试多次运行取指标平均和样本标准差"""
        runs = [PRF.from_counts(1, 1, 1), PRF.from_counts(2, 0, 0)]
        summary = summarize_runs(runs)
        self.assertAlmostEqual(summary.f1, 0.75)
        self.assertAlmostEqual(summary.f1_std, math.sqrt(0.125))
        with self.assertRaises(ValueError):
            summarize_runs([])


class TestErrorBreakdown(unittest.TestCase):
    def test_false_positive_precedence(self):
        """测试误报类别的优先级"""
        gold = list(FOOD.triplets)
        self.assertEqual(classify_false_positive(triplet((1, 1), (0, 0), NEG), gold),
                         FalsePositiveCategory.FALSE_SENTIMENT)
        self.assertEqual(classify_false_positive(triplet((2, 2), (0, 0), POS), gold),
                         FalsePositiveCategory.FALSE_ASPECT)
        self.assertEqual(classify_false_positive(triplet((4, 4), (5, 6), NEG), gold),
                         FalsePositiveCategory.FALSE_OPINION)
        self.assertEqual(classify_false_positive(triplet((3, 3), (5, 5), NEU), gold),
                         FalsePositiveCategory.OTHER)

    def test_breakdown(self):
        """测试误报与漏报的分解"""
        pred = {
            "food": [triplet((1, 1), (0, 0), NEG)],
            "images": list(IMAGES.triplets),
            "battery": [BATTERY.triplets[0]],
        }
        breakdown = error_breakdown(OVERLAP_EXAMPLES, pred)
        self.assertEqual(breakdown.fp_counts[FalsePositiveCategory.FALSE_SENTIMENT], 1)
        self.assertEqual(breakdown.total_fp, 1)
        self.assertEqual(breakdown.fn_counts[OverlapCategory.NORMAL], 2)
        self.assertEqual(breakdown.fn_counts[OverlapCategory.OPINION_OVERLAPPED], 1)
        self.assertEqual(breakdown.total_fn, 3)
        self.assertEqual(breakdown.to_dict()["false_positives"]["false_sentiment"], 1)


class TestSignificance(unittest.TestCase):
    def test_known_statistic(self):
        """测试已知样本的t统计量与p值"""
        result = paired_t_statistic([1, 2, 3, 4, 5], [0, 0, 0, 0, 0])
        self.assertAlmostEqual(result.t, 4.2426, places=4)
        self.assertEqual(result.df, 4)
        self.assertAlmostEqual(result.p_value, 0.0132, delta=5e-4)

    def test_symmetric(self):
        """测试交换样本后p值不变"""
        a, b = [0.61, 0.63, 0.60, 0.64], [0.60, 0.61, 0.61, 0.62]
        self.assertAlmostEqual(paired_t_test(a, b), paired_t_test(b, a))
        self.assertAlmostEqual(paired_t_statistic(a, b).t, -paired_t_statistic(b, a).t)

    def test_degenerate_differences(self):
        """测试差值全为零或恒定"""
        self.assertEqual(paired_t_test([0.5, 0.6], [0.5, 0.6]), 1.0)
        constant = paired_t_statistic([3.0, 4.0], [1.0, 2.0])
        self.assertEqual(constant.p_value, 0.0)
        self.assertTrue(math.isinf(constant.t) and constant.t > 0)

    def test_larger_mean_difference(self):
        """测试差值均值增大时t增大且p减小"""
        base = [0.60, 0.62, 0.61, 0.63, 0.59]
        noise = [0.004, -0.003, 0.001, -0.002, 0.0]
        results = [paired_t_statistic([b + shift + e for b, e in zip(base, noise)], base)
                   for shift in (0.001, 0.005, 0.01, 0.05)]
        for smaller, larger in zip(results, results[1:]):
            self.assertGreater(larger.t, smaller.t)
            self.assertLess(larger.p_value, smaller.p_value)

    def test_invalid_samples(self):
        """测试样本数量不足或长度不一致"""
        with self.assertRaises(ValueError):
            paired_t_test([1.0], [0.0])
        with self.assertRaises(ValueError):
            paired_t_test([1.0, 2.0], [0.0])

    def test_compare_runs(self):
        """测试两组运行的比较"""
        comparison = compare_runs([1, 2, 3, 4, 5], [0, 0, 0, 0, 0])
        self.assertEqual(comparison.level, SIGNIFICANCE_LEVEL)
        self.assertFalse(comparison.significant)
        self.assertTrue(compare_runs([1, 2, 3, 4, 5], [0] * 5, level=0.05).significant)
        self.assertEqual(comparison.to_dict()["mean_f1_a"], 3.0)


if __name__ == '__main__':
    unittest.main()
