import unittest

from otemtl.core.types import (DUPLICATE_TRIPLET, EMPTY_SENTENCE, SPAN_OUT_OF_RANGE,
                               SPAN_OVERLAP, DepType, SentenceRecord, Sentiment, Span, Tag,
                               Triplet, parse_tags, render_triplet, sorted_triplets,
                               validate_record)
from otemtl.tests.fixtures import BATTERY, IMAGES, triplet


class TestSpan(unittest.TestCase):
    def test_length_and_validity(self):
        """测试跨度长度与合法性"""
        span = Span(3, 5)
        self.assertEqual(span.length, 3)
        self.assertTrue(span.is_valid(6))
        self.assertFalse(span.is_valid(5))
        self.assertFalse(Span(2, 1).is_valid(5))
        self.assertFalse(Span(-1, 0).is_valid(5))

    def test_overlap(self):
        """测试跨度重叠判断"""
        self.assertTrue(Span(0, 2).overlaps(Span(2, 3)))
        self.assertFalse(Span(0, 1).overlaps(Span(2, 3)))


class TestLabels(unittest.TestCase):
    def test_sentiment_codes(self):
        """测试情感极性编码"""
        self.assertEqual([int(s) for s in (Sentiment.NEU, Sentiment.NEG, Sentiment.POS)], [0, 1, 2])
        self.assertEqual(Sentiment.parse("pos"), Sentiment.POS)
        with self.assertRaises(ValueError):
            Sentiment.parse("MIXED")

    def test_dep_type(self):
        """测试依存类型"""
        self.assertEqual(int(DepType.NO_DEP), 3)
        self.assertEqual(DepType.NO_DEP.label, "NO-DEP")
        self.assertEqual(DepType.from_sentiment(Sentiment.NEG), DepType.NEG)

    def test_parse_tags(self):
        """测试标签序列解析"""
        self.assertEqual(parse_tags("O B I"), (Tag.O, Tag.B, Tag.I))


class TestValidation(unittest.TestCase):
    def test_valid_record(self):
        """测试合法样本"""
        result = validate_record(BATTERY)
        self.assertTrue(result.ok)
        self.assertEqual(str(result), "ok")

    def test_out_of_range(self):
        """测试越界跨度"""
        record = SentenceRecord("r", ["a", "b"], [triplet((0, 0), (1, 2), Sentiment.POS)])
        self.assertEqual(validate_record(record).kinds(), [SPAN_OUT_OF_RANGE])

    def test_overlap_within_triplet(self):
        """测试三元组内部的方面与观点重叠"""
        record = SentenceRecord("r", ["a", "b", "c"], [triplet((0, 1), (1, 2), Sentiment.POS)])
        self.assertIn(SPAN_OVERLAP, validate_record(record).kinds())

    def test_duplicate_and_empty(self):
        """测试重复三元组与空句子"""
        t = triplet((0, 0), (1, 1), Sentiment.NEU)
        self.assertEqual(validate_record(SentenceRecord("r", ["a", "b"], [t, t])).kinds(),
                         [DUPLICATE_TRIPLET])
        self.assertEqual(validate_record(SentenceRecord("e", [], [])).kinds(), [EMPTY_SENTENCE])

    def test_violations_are_values(self):
        """测试校验不抛出异常"""
        record = SentenceRecord("r", ["a"], [triplet((0, 3), (0, 0), Sentiment.POS)])
        result = validate_record(record)
        self.assertFalse(result.ok)
        self.assertEqual(result.violations[0].triplet_index, 0)


class TestHelpers(unittest.TestCase):
    def test_render_triplet(self):
        """测试三元组文本渲染"""
        self.assertEqual(render_triplet(BATTERY.tokens, BATTERY.triplets[1]),
                         ["start up speed", "Great", "POS"])

    def test_sorted_triplets(self):
        """测试三元组排序与去重"""
        shuffled = [IMAGES.triplets[1], IMAGES.triplets[0], IMAGES.triplets[1]]
        self.assertEqual(sorted_triplets(shuffled), list(IMAGES.triplets))

    def test_record_stores_tuples(self):
        """测试样本字段转换为元组"""
        record = SentenceRecord("r", ["a", "b"], [])
        self.assertIsInstance(record.tokens, tuple)
        self.assertEqual(len(record), 2)
        self.assertEqual(hash(Triplet(Span(0, 0), Span(1, 1), Sentiment.POS)),
                         hash(Triplet(Span(0, 0), Span(1, 1), Sentiment.POS)))


if __name__ == '__main__':
    unittest.main()
