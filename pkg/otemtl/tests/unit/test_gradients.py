import unittest

import numpy as np

from otemtl.core.errors import ShapeError
from otemtl.numerics.gradients import GradStore, gradient_check, numeric_gradient, relative_error


class TestGradStore(unittest.TestCase):
    def test_accumulate(self):
        """测试梯度累加"""
        grads = GradStore.zeros_like({"w": np.ones((2, 2)), "b": np.ones(2)})
        grads.accumulate("w", np.full((2, 2), 0.5))
        grads.accumulate("w", np.full((2, 2), 0.5))
        np.testing.assert_array_equal(grads["w"], np.ones((2, 2)))
        np.testing.assert_array_equal(grads["b"], np.zeros(2))

    def test_unknown_and_misshaped(self):
        """测试未知参数与形状不匹配"""
        grads = GradStore.zeros_like({"w": np.ones(3)})
        with self.assertRaises(KeyError):
            grads.accumulate("v", np.ones(3))
        with self.assertRaises(ShapeError):
            grads.accumulate("w", np.ones(4))

    def test_scale_and_merge(self):
        """测试梯度缩放与合并"""
        grads = GradStore.zeros_like({"w": np.ones(2)})
        grads.merge({"w": np.array([2.0, 4.0])}).scale(0.5)
        np.testing.assert_array_equal(grads["w"], [1.0, 2.0])


class TestFiniteDifferences(unittest.TestCase):
    def test_numeric_gradient_of_quadratic(self):
        """测试二次函数的数值梯度"""
        x = np.array([1.0, -2.0, 3.0])
        grad = numeric_gradient(lambda: float(np.sum(x ** 2)), x)
        np.testing.assert_allclose(grad, 2 * x, rtol=1e-6)
        # perturbation leaves the tensor unchanged
        np.testing.assert_array_equal(x, [1.0, -2.0, 3.0])

    def test_relative_error(self):
        """测试相对误差"""
        self.assertEqual(relative_error(np.zeros(3), np.zeros(3)), 0.0)
        self.assertAlmostEqual(relative_error(np.array([1.0]), np.array([3.0])), 0.5)

    def test_gradient_check_detects_wrong_gradient(self):
        """测试梯度检查发现错误的解析梯度"""
        params = {"x": np.array([0.5, 1.5]), "y": np.array([[2.0]])}
        loss = lambda: float(np.sum(params["x"] ** 3) + np.sum(params["y"]))
        good = {"x": 3 * params["x"] ** 2, "y": np.ones((1, 1))}
        bad = {"x": 2 * params["x"], "y": np.ones((1, 1))}
        self.assertLess(max(gradient_check(loss, params, good).values()), 1e-6)
        self.assertGreater(gradient_check(loss, params, bad)["x"], 1e-2)

    def test_gradient_check_subset(self):
        """测试对部分元素做梯度检查"""
        params = {"x": np.linspace(-1, 1, 20)}
        loss = lambda: float(np.sum(np.sin(params["x"])))
        errors = gradient_check(loss, params, {"x": np.cos(params["x"])}, max_entries=5,
                                rng=np.random.default_rng(1))
        self.assertLess(errors["x"], 1e-6)

    def test_missing_analytic_gradient(self):
        """测试缺少解析梯度"""
        with self.assertRaises(KeyError):
            gradient_check(lambda: 0.0, {"x": np.ones(1)}, {})


if __name__ == '__main__':
    unittest.main()
