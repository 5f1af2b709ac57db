import io
import json
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from otemtl.main import EXIT_DATA, EXIT_OK, EXIT_USAGE, run
from otemtl.tests.fixtures import FOOD, IMAGES, OVERLAP_EXAMPLES, TOY_CORPUS, write_jsonl


class TestWorkflow(unittest.TestCase):
    def setUp(self):
        """测试前的准备工作"""
        self.test_dir = tempfile.mkdtemp()
        self.out_dir = os.path.join(self.test_dir, "out")
        self.create_test_project()

    def create_test_project(self):
        """创建测试数据集与配置文件"""
        self.train_file = write_jsonl(self.path("train.jsonl"), TOY_CORPUS)
        self.val_file = write_jsonl(self.path("val.jsonl"), [FOOD, IMAGES])
        self.test_file = write_jsonl(self.path("test.jsonl"), OVERLAP_EXAMPLES)

        config = {
            "model": {"d_e": 6, "d_h": 5, "d_r": 4, "max_epochs": 2, "batch_size": 4},
            "data": {"train": self.train_file, "val": self.val_file, "test": self.test_file},
            "training": {"seeds": [0]},
            "output": {"out_dir": self.out_dir},
            "logging": {"log_level": "error", "show_progress": False},
        }
        self.config_file = self.path("config.json")
        with open(self.config_file, "w") as f:
            json.dump(config, f, indent=4)

    def tearDown(self):
        """测试后的清理工作"""
        shutil.rmtree(self.test_dir)

    def path(self, *parts):
        return os.path.join(self.test_dir, *parts)

    def cli(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            code = run(list(argv))
        return code, stdout.getvalue(), stderr.getvalue()

    def read_json(self, *parts):
        with open(os.path.join(*parts), encoding="utf-8") as f:
            return json.load(f)

    def test_full_workflow(self):
        """测试训练、预测与评估的完整流程"""
        code, out, err = self.cli("train", "-c", self.config_file)
        self.assertEqual(code, EXIT_OK, err)
        for name in ("checkpoint.json", "trainlog.json", "metrics.json", "resolved_config.json"):
            self.assertTrue(os.path.exists(os.path.join(self.out_dir, name)), name)
        log = self.read_json(self.out_dir, "trainlog.json")
        self.assertEqual(log["seed"], 0)
        self.assertEqual(len(log["epochs"]), 2)
        resolved = self.read_json(self.out_dir, "resolved_config.json")
        self.assertEqual(resolved["model"]["d_h"], 5)
        self.assertIn("precision", out)

        code, _, err = self.cli("predict", "-c", self.config_file, "--data", self.test_file)
        self.assertEqual(code, EXIT_OK, err)
        predictions = os.path.join(self.out_dir, "predictions.jsonl")
        with open(predictions, encoding="utf-8") as f:
            lines = [json.loads(line) for line in f]
        self.assertEqual([line["id"] for line in lines], [r.id for r in OVERLAP_EXAMPLES])
        self.assertTrue(all("predicted_triplets" in line for line in lines))

        code, _, err = self.cli("eval", "-c", self.config_file, "--pred", predictions)
        self.assertEqual(code, EXIT_OK, err)
        metrics = self.read_json(self.out_dir, "metrics.json")
        self.assertIn("error_breakdown", metrics)
        self.assertEqual(metrics["tp"] + metrics["fn"], 6)
        self.assertTrue(0.0 <= metrics["f1"] <= 1.0)

    def test_multi_seed_training(self):
        """测试多个种子训练并比较"""
        out_a = self.path("a")
        code, out, err = self.cli("train", "-c", self.config_file, "--seed", "0-1",
                                  "--max-epochs", "1", "-o", out_a)
        self.assertEqual(code, EXIT_OK, err)
        runs = self.read_json(out_a, "runs.json")
        self.assertEqual([run["seed"] for run in runs["runs"]], [0, 1])
        self.assertEqual(runs["mean"]["runs"], 2)
        self.assertIn("mean", self.read_json(out_a, "metrics.json"))
        self.assertIn("F1 std over 2 runs", out)

        runs_file = os.path.join(out_a, "runs.json")
        code, out, _ = self.cli("compare", "--runs-a", runs_file, "--runs-b", runs_file)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("not significant", out)

    def test_eval_gold_as_prediction(self):
        """测试以标注作为预测的评估"""
        code, out, err = self.cli("eval", "-o", self.out_dir, "--gold", self.test_file,
                                  "--pred", self.test_file, "--log-level", "error")
        self.assertEqual(code, EXIT_OK, err)
        metrics = self.read_json(self.out_dir, "metrics.json")
        self.assertEqual(metrics["f1"], 1.0)
        self.assertEqual(metrics["tp"], 6)

    def test_eval_html_report(self):
        """测试评估时生成HTML报告"""
        code, _, err = self.cli("eval", "-o", self.out_dir, "--gold", self.test_file,
                                "--pred", self.val_file, "--html", "--log-level", "error")
        # val and test cover different sentence ids
        self.assertEqual(code, EXIT_DATA, err)

        code, _, err = self.cli("eval", "-o", self.out_dir, "--gold", self.val_file,
                                "--pred", self.val_file, "--html", "--log-level", "error")
        self.assertEqual(code, EXIT_OK, err)
        self.assertTrue(os.path.exists(os.path.join(self.out_dir, "report.html")))

    def test_stats(self):
        """测试数据集统计命令"""
        code, out, _ = self.cli("stats", "--data", self.test_file, "--log-level", "error")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("# triplet w/ overlap", out)
        self.assertFalse(os.path.exists(os.path.join(self.out_dir, "stats.tsv")))

        code, _, _ = self.cli("stats", "--data", self.test_file, "--data", self.train_file,
                              "-o", self.out_dir, "--log-level", "error")
        self.assertEqual(code, EXIT_OK)
        with open(os.path.join(self.out_dir, "stats.tsv"), encoding="utf-8") as f:
            rows = f.read().splitlines()
        self.assertEqual(rows[1].split("\t"), ["test", "3", "6", "2", "4"])

    def test_gradcheck(self):
        """测试梯度检查命令"""
        code, out, err = self.cli("gradcheck", "--seed", "0", "--variant", "concat",
                                  "--log-level", "error")
        self.assertEqual(code, EXIT_OK, err)
        self.assertIn("max relative error", out)
        # only --variant and --l2-mode reach the micro model
        self.assertEqual(self.cli("gradcheck", "--lr", "0.1")[0], EXIT_USAGE)

    def test_exit_codes(self):
        """测试错误对应的退出码"""
        self.assertEqual(self.cli("train", "--no-such-flag")[0], EXIT_USAGE)
        self.assertEqual(self.cli()[0], EXIT_USAGE)
        self.assertEqual(self.cli("stats", "--data", self.path("missing.jsonl"),
                                  "--log-level", "error")[0], EXIT_DATA)
        self.assertEqual(self.cli("stats", "--data", self.test_file, "--seed", "x")[0], EXIT_USAGE)

        bad_config = self.path("bad.json")
        with open(bad_config, "w") as f:
            json.dump({"model": {"variant": "lstm"}}, f)
        self.assertEqual(self.cli("stats", "-c", bad_config, "--data", self.test_file)[0],
                         EXIT_USAGE)

        single = self.path("single.json")
        with open(single, "w") as f:
            json.dump({"runs": [{"seed": 0, "f1": 0.5}]}, f)
        self.assertEqual(self.cli("compare", "--runs-a", single, "--runs-b", single,
                                  "--log-level", "error")[0], EXIT_DATA)

        code, _, err = self.cli("train", "-o", self.out_dir, "--log-level", "error")
        self.assertEqual(code, EXIT_USAGE, err)
        self.assertIn("--train", err)

    def test_strict_mode(self):
        """测试严格模式下遇到非法行退出"""
        bad = self.path("bad.jsonl")
        with open(bad, "w") as f:
            f.write('{"id": "x", "tokens": ["a"], "triplets": [[[0, 0], [3, 3], "POS"]]}\n')
        self.assertEqual(self.cli("stats", "--data", bad, "--log-level", "error")[0], EXIT_OK)
        self.assertEqual(self.cli("stats", "--data", bad, "--strict", "--log-level", "error")[0],
                         EXIT_DATA)


if __name__ == '__main__':
    unittest.main()
