import unittest

import numpy as np

from otemtl.core.errors import ShapeError
from otemtl.numerics.gradients import numeric_gradient, relative_error
from otemtl.numerics.lstm import (LSTMWeights, lstm_backward, lstm_cell, lstm_cell_backward,
                                  lstm_forward)


def make_weights(rng, input_size=3, hidden=2):
    return LSTMWeights(rng.normal(scale=0.5, size=(4 * hidden, input_size)),
                       rng.normal(scale=0.5, size=(4 * hidden, hidden)),
                       rng.normal(scale=0.1, size=4 * hidden))


class TestLSTM(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(3)
        self.weights = make_weights(self.rng)
        self.xs = self.rng.normal(size=(5, 3))

    def test_forward_matches_cell(self):
        """测试序列前向与逐步单元计算一致"""
        hs, _ = lstm_forward(self.xs, self.weights)
        h, c = np.zeros(2), np.zeros(2)
        for t in range(5):
            h, c = lstm_cell(self.xs[t], h, c, self.weights)
            np.testing.assert_allclose(hs[t], h)

    def test_reverse_direction(self):
        """测试反向LSTM按位置索引输出"""
        backward, _ = lstm_forward(self.xs, self.weights, reverse=True)
        forward_on_reversed, _ = lstm_forward(self.xs[::-1].copy(), self.weights)
        np.testing.assert_allclose(backward, forward_on_reversed[::-1])

    def test_cell_gradients(self):
        """测试单步LSTM的梯度"""
        x, h, c = self.rng.normal(size=3), self.rng.normal(size=2), self.rng.normal(size=2)
        dh_up, dc_up = self.rng.normal(size=2), self.rng.normal(size=2)

        def loss():
            h_t, c_t = lstm_cell(x, h, c, self.weights)
            return float(h_t @ dh_up + c_t @ dc_up)

        dx, dh_prev, dc_prev, grads = lstm_cell_backward(dh_up, dc_up, x, h, c, self.weights)
        for analytic, tensor in ((dx, x), (dh_prev, h), (dc_prev, c),
                                 (grads["W_x"], self.weights.W_x),
                                 (grads["W_h"], self.weights.W_h),
                                 (grads["b"], self.weights.b)):
            self.assertLess(relative_error(analytic, numeric_gradient(loss, tensor)), 1e-6)

    def test_sequence_gradients(self):
        """测试时间反向传播的梯度"""
        for reverse in (False, True):
            upstream = self.rng.normal(size=(5, 2))
            loss = lambda: float(np.sum(lstm_forward(self.xs, self.weights, reverse)[0] * upstream))
            _, cache = lstm_forward(self.xs, self.weights, reverse)
            dxs, grads = lstm_backward(upstream, cache, self.weights)
            self.assertLess(relative_error(dxs, numeric_gradient(loss, self.xs)), 1e-6)
            for name in ("W_x", "W_h", "b"):
                numeric = numeric_gradient(loss, getattr(self.weights, name))
                self.assertLess(relative_error(grads[name], numeric), 1e-6, name)

    def test_zero_weights(self):
        """测试全零权重与状态时输出为零"""
        zero = LSTMWeights(np.zeros((8, 3)), np.zeros((8, 2)), np.zeros(8))
        h, c = lstm_cell(self.rng.normal(size=3), np.zeros(2), np.zeros(2), zero)
        np.testing.assert_array_equal(h, np.zeros(2))
        np.testing.assert_array_equal(c, np.zeros(2))

    def test_saturated_forget_gate(self):
        """测试遗忘门饱和时记忆单元保持不变"""
        bias = np.zeros(8)
        bias[2:4] = 50.0  # forget gate block
        weights = LSTMWeights(np.zeros((8, 3)), np.zeros((8, 2)), bias)
        c_prev = np.array([0.7, -1.3])
        _, c = lstm_cell(np.zeros(3), np.zeros(2), c_prev, weights)
        np.testing.assert_allclose(c, c_prev, rtol=1e-12)

    def test_shape_check(self):
        """测试权重形状校验"""
        with self.assertRaises(ShapeError):
            lstm_forward(self.rng.normal(size=(4, 5)), self.weights)
        with self.assertRaises(ShapeError):
            lstm_cell(self.xs[0], np.zeros(3), np.zeros(3), self.weights)


if __name__ == '__main__':
    unittest.main()
