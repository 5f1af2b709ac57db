import os
import shutil
import tempfile
import unittest

import numpy as np

from otemtl.core.errors import EmbeddingError
from otemtl.data.vocab import (PAD, PAD_INDEX, UNK, UNK_INDEX, Vocabulary, build_vocab,
                               embedding_coverage, load_embeddings, random_embeddings)
from otemtl.tests.fixtures import BATTERY, FOOD, write_lines


class TestVocabulary(unittest.TestCase):
    def test_special_entries(self):
        """测试特殊词的固定位置"""
        vocab = Vocabulary(["a", "b", "a"])
        self.assertEqual(vocab.to_list(), [PAD, UNK, "a", "b"])
        self.assertEqual(vocab.index("zzz"), UNK_INDEX)
        self.assertEqual(vocab.encode(["b", "x"]).tolist(), [3, UNK_INDEX])

    def test_build_order_by_frequency(self):
        """测试词表按频次和字母序排列"""
        vocab = build_vocab([BATTERY, FOOD])
        # "Great" appears twice, the rest once
        self.assertEqual(vocab.token(2), "Great")
        self.assertEqual(vocab.to_list()[3:5], sorted(vocab.to_list()[3:])[:2])

    def test_min_count(self):
        """测试最小词频过滤"""
        vocab = build_vocab([BATTERY, FOOD], min_count=2)
        self.assertEqual(vocab.to_list(), [PAD, UNK, "Great"])

    def test_from_list(self):
        """测试从列表恢复词表"""
        vocab = Vocabulary(["x", "y"])
        self.assertEqual(Vocabulary.from_list(vocab.to_list()), vocab)
        with self.assertRaises(ValueError):
            Vocabulary.from_list(["x", "y"])


class TestEmbeddings(unittest.TestCase):
    def setUp(self):
        """测试前的准备工作"""
        self.test_dir = tempfile.mkdtemp()
        self.vocab = Vocabulary(["good", "bad", "food"])

    def tearDown(self):
        """测试后的清理工作"""
        shutil.rmtree(self.test_dir)

    def test_load_with_header(self):
        """测试加载带头部的词向量文件"""
        path = write_lines(os.path.join(self.test_dir, "vec.txt"), [
            "3 2",
            "good 1.0 2.0",
            "unseen 5.0 5.0",
            "food -1.0 0.5",
        ])
        matrix = load_embeddings(path, self.vocab, 2, rng=np.random.default_rng(0))
        self.assertEqual(matrix.shape, (5, 2))
        np.testing.assert_array_equal(matrix[PAD_INDEX], [0.0, 0.0])
        np.testing.assert_array_equal(matrix[self.vocab.index("good")], [1.0, 2.0])
        np.testing.assert_array_equal(matrix[self.vocab.index("food")], [-1.0, 0.5])
        bad = matrix[self.vocab.index("bad")]
        self.assertTrue(np.all(np.abs(bad) <= 0.1))

    def test_whitespace_separators(self):
        """测试制表符与连续空格分隔的向量行"""
        path = write_lines(os.path.join(self.test_dir, "vec.txt"), [
            "good\t1.0\t2.0",
            "food  -1.0   0.5 ",
        ])
        matrix = load_embeddings(path, self.vocab, 2)
        np.testing.assert_array_equal(matrix[self.vocab.index("good")], [1.0, 2.0])
        np.testing.assert_array_equal(matrix[self.vocab.index("food")], [-1.0, 0.5])

    def test_unk_row_stays_random(self):
        """测试文件中的<unk>向量不会被复制"""
        path = write_lines(os.path.join(self.test_dir, "vec.txt"), [
            f"{UNK} 7.0 7.0",
            "good 1.0 2.0",
        ])
        matrix = load_embeddings(path, self.vocab, 2, init_range=0.1)
        self.assertTrue(np.all(np.abs(matrix[UNK_INDEX]) <= 0.1))

    def test_wrong_dimension(self):
        """测试向量维度不一致"""
        path = write_lines(os.path.join(self.test_dir, "vec.txt"), ["good 1.0 2.0 3.0"])
        with self.assertRaises(EmbeddingError) as ctx:
            load_embeddings(path, self.vocab, 2)
        self.assertIn(":1:", str(ctx.exception))

    def test_non_numeric(self):
        """测试非数值向量"""
        path = write_lines(os.path.join(self.test_dir, "vec.txt"), ["good 1.0 abc"])
        with self.assertRaises(EmbeddingError):
            load_embeddings(path, self.vocab, 2)

    def test_missing_file(self):
        """测试词向量文件不存在"""
        with self.assertRaises(EmbeddingError):
            load_embeddings(os.path.join(self.test_dir, "none.txt"), self.vocab, 2)

    def test_coverage(self):
        """测试词向量覆盖率"""
        self.assertAlmostEqual(embedding_coverage(self.vocab, {2, 4}), 2 / 3)
        self.assertEqual(embedding_coverage(Vocabulary(), set()), 0.0)

    def test_random_embeddings(self):
        """测试随机初始化词向量"""
        matrix = random_embeddings(self.vocab, 3, np.random.default_rng(1), init_range=0.5)
        self.assertEqual(matrix.shape, (5, 3))
        self.assertTrue(np.all(matrix[PAD_INDEX] == 0.0))
        self.assertTrue(np.all(np.abs(matrix) <= 0.5))


if __name__ == '__main__':
    unittest.main()
