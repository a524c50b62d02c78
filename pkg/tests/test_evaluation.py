"""
Tests for outcome classification, interval estimates, decoder comparison and campaigns
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import itertools
import unittest

from syndrome_decoders import gf2
from syndrome_decoders.base_decoder import DecodeResult
from syndrome_decoders.campaign import run_campaign, run_cell, truncate_at_failures
from syndrome_decoders.channel import syndrome
from syndrome_decoders.css_code import builtin_code
from syndrome_decoders.decoder_factory import DECODER_KINDS, DecoderSpec
from syndrome_decoders.evaluation import (
    CSV_COLUMNS,
    Outcome,
    TrialRecord,
    TrialStats,
    classify,
    clopper_pearson,
    compare_report,
    upper_bound,
)
from syndrome_decoders.exceptions import ConsistencyError, ContractViolation
from syndrome_decoders.gf2 import BitVector


def kernel_vectors(code, max_weight):
    """Every nonzero x with h1·x = 0 up to max_weight"""
    for weight in range(1, max_weight + 1):
        for support in itertools.combinations(range(code.n), weight):
            x = BitVector.from_support(code.n, support)
            if syndrome(code, x).is_zero():
                yield x


def records(errors, trials, failures=0):
    """errors logical/failure records (failures of them non-converged) followed by successes"""
    out = [TrialRecord(Outcome.FAILURE, 20, 0, 1, 13, 0, False) for _ in range(failures)]
    out += [TrialRecord(Outcome.LOGICAL, 20, 0, 1, 13, 0, False) for _ in range(errors - failures)]
    out += [TrialRecord(Outcome.EXACT, 20, 0, 1, 13, 0, False) for _ in range(trials - errors)]
    return out


def stats(errors, trials, p_x=0.05, T=10, code="hgp:rep3", decoder="bp"):
    return TrialStats.from_records(
        records(errors, trials),
        code=code,
        decoder=decoder,
        schedule_kind="flooding",
        T=T,
        p_x=p_x,
        master_seed=1,
    )


class TestClassify(unittest.TestCase):
    """All four outcomes on the [[13,1,3]] code"""

    def setUp(self):
        self.code = builtin_code("hgp:rep3")
        self.x_true = BitVector.from_support(13, [2])

    def result(self, x_hat, converged=True):
        return DecodeResult(x_hat=x_hat, converged=converged)

    def test_exact(self):
        self.assertEqual(classify(self.code, self.x_true, self.result(self.x_true)), Outcome.EXACT)

    def test_degenerate(self):
        x_hat = self.x_true ^ self.code.g2.row(0)
        self.assertEqual(classify(self.code, self.x_true, self.result(x_hat)), Outcome.DEGENERATE)

    def test_logical(self):
        logical = next(x for x in kernel_vectors(self.code, 3) if not self.code.is_stabilizer(x))
        x_hat = self.x_true ^ logical
        self.assertEqual(classify(self.code, self.x_true, self.result(x_hat)), Outcome.LOGICAL)

    def test_failure_ignores_estimate(self):
        self.assertEqual(classify(self.code, self.x_true, self.result(self.x_true, False)), Outcome.FAILURE)

    def test_converged_estimate_must_match_syndrome(self):
        with self.assertRaises(ConsistencyError):
            classify(self.code, self.x_true, self.result(BitVector.zeros(13)))

    def test_length_checked(self):
        with self.assertRaises(ContractViolation):
            classify(self.code, BitVector.zeros(12), self.result(BitVector.zeros(13)))

    def test_low_weight_kernel_is_stabilizer(self):
        """Below the distance every undetectable error is harmless"""
        for x in kernel_vectors(self.code, 2):
            self.assertTrue(self.code.is_stabilizer(x))
            self.assertTrue(gf2.in_rowspace(self.code.g2, x))
        logicals = [x for x in kernel_vectors(self.code, 3) if not self.code.is_stabilizer(x)]
        self.assertTrue(logicals)
        self.assertTrue(all(x.weight() == 3 for x in logicals))


class TestStabilizerGroup(unittest.TestCase):
    """Membership and degeneracy checked against the full enumerated group of hgp:rep3"""

    @classmethod
    def setUpClass(cls):
        cls.code = builtin_code("hgp:rep3")
        rows = [cls.code.g2.row(i) for i in range(cls.code.g2.rows)]
        group = set()
        for mask in itertools.product([0, 1], repeat=len(rows)):
            element = BitVector.zeros(cls.code.n)
            for bit, row in zip(mask, rows):
                if bit:
                    element = element ^ row
            group.add(element)
        cls.group = group

    def test_group_size(self):
        self.assertEqual(len(self.group), 2 ** self.code.rank_g2)

    def test_membership_of_low_weight_kernel(self):
        for x in kernel_vectors(self.code, 3):
            self.assertEqual(self.code.is_stabilizer(x), x in self.group)

    def test_every_stabilizer_shift_is_degenerate(self):
        x_true = BitVector.from_support(self.code.n, [1, 7])
        for g in self.group:
            if g.is_zero():
                continue
            result = DecodeResult(x_hat=x_true ^ g, converged=True)
            self.assertEqual(classify(self.code, x_true, result), Outcome.DEGENERATE)
            self.assertTrue(self.code.is_stabilizer(g))


class TestIntervals(unittest.TestCase):
    def test_clopper_pearson_values(self):
        low, high = clopper_pearson(0, 10)
        self.assertEqual(low, 0.0)
        self.assertAlmostEqual(high, 0.3085, places=4)
        low, high = clopper_pearson(5, 10)
        self.assertAlmostEqual(low, 0.1871, places=4)
        self.assertAlmostEqual(high, 0.8129, places=4)
        low, high = clopper_pearson(10, 10)
        self.assertAlmostEqual(low, 0.6915, places=4)
        self.assertEqual(high, 1.0)

    def test_one_sided_bound(self):
        self.assertAlmostEqual(upper_bound(0, 100), 1 - 0.05 ** (1 / 100), places=9)
        self.assertEqual(upper_bound(4, 4), 1.0)

    def test_invalid_counts(self):
        with self.assertRaises(ContractViolation):
            clopper_pearson(3, 2)
        with self.assertRaises(ContractViolation):
            clopper_pearson(0, 0)


class TestTrialStats(unittest.TestCase):
    def test_counts_and_rates(self):
        cell = TrialStats.from_records(
            records(4, 20, failures=1),
            trials_requested=40,
            code="hgp:rep3",
            decoder="bp",
            schedule_kind="flooding",
            T=10,
            p_x=0.1,
            master_seed=3,
        )
        self.assertEqual((cell.exact, cell.logical, cell.failure), (16, 3, 1))
        self.assertEqual(cell.exact + cell.degenerate + cell.logical + cell.failure, cell.trials)
        self.assertAlmostEqual(cell.fer, 0.2)
        self.assertAlmostEqual(cell.fer_nonconv_only, 0.05)
        self.assertLessEqual(cell.fer_ci_low, cell.fer)
        self.assertLessEqual(cell.fer, cell.fer_ci_high)
        self.assertTrue(cell.stopped_early)
        self.assertEqual(list(cell.to_row()), CSV_COLUMNS)

    def test_empty_cell(self):
        with self.assertRaises(ContractViolation):
            stats(0, 0)

    def test_truncation(self):
        cell = records(3, 10)
        self.assertEqual(len(truncate_at_failures(cell, 2)), 2)
        self.assertEqual(len(truncate_at_failures(cell, None)), 10)
        self.assertEqual(len(truncate_at_failures(cell, 5)), 10)


class TestCompareReport(unittest.TestCase):
    def test_ratio_and_significance(self):
        report = compare_report([stats(10, 1000)], [stats(100, 1000)])
        self.assertEqual(len(report), 1)
        self.assertAlmostEqual(report[0].ratio, 0.1)
        self.assertEqual(report[0].bound, "exact")
        self.assertTrue(report[0].significant)

    def test_overlapping_intervals(self):
        report = compare_report([stats(10, 100)], [stats(12, 100)])
        self.assertFalse(report[0].significant)

    def test_zero_error_sides(self):
        upper = compare_report([stats(0, 100)], [stats(10, 100)])[0]
        self.assertEqual(upper.bound, "upper")
        self.assertAlmostEqual(upper.ratio, upper_bound(0, 100) / 0.1)
        lower = compare_report([stats(10, 100)], [stats(0, 100)])[0]
        self.assertEqual(lower.bound, "lower")
        both = compare_report([stats(0, 100)], [stats(0, 100)])[0]
        self.assertEqual(both.ratio, 1.0)

    def test_points_sorted(self):
        a = [stats(5, 100, p_x=0.1), stats(1, 100, p_x=0.05)]
        b = [stats(5, 100, p_x=0.1), stats(1, 100, p_x=0.05)]
        self.assertEqual([c.p_x for c in compare_report(a, b)], [0.05, 0.1])

    def test_mismatched_grids(self):
        with self.assertRaises(ContractViolation):
            compare_report([stats(1, 100, p_x=0.05)], [stats(1, 100, p_x=0.06)])
        with self.assertRaises(ContractViolation):
            compare_report([stats(1, 100)], [stats(1, 100, code="hgp:rep5")])


class TestCampaign(unittest.TestCase):
    def setUp(self):
        self.code = builtin_code("hgp:rep3")

    def test_noiseless_cells(self):
        edges = self.code.tanner_graph.edge_count
        for kind in DECODER_KINDS:
            (cell,) = run_campaign(self.code, DecoderSpec(kind=kind, T=10), [0.0], trials=5, master_seed=1)
            self.assertEqual(cell.fer, 0.0)
            self.assertEqual(cell.exact, 5)
            self.assertEqual(cell.mean_messages, edges)
            self.assertEqual(cell.mean_iterations, 1.0)
            self.assertEqual(cell.order_seed, 1)

    def test_grid_order(self):
        cells = run_campaign(self.code, DecoderSpec(kind="bp", T=20), [0.1, 0.02], trials=10, master_seed=4)
        self.assertEqual([c.p_x for c in cells], [0.1, 0.02])

    def test_repeatable(self):
        spec = DecoderSpec(kind="svns-bpgd", T=10)
        first = run_cell(self.code, spec, 0.1, trials=40, master_seed=9)
        self.assertEqual(first, run_cell(self.code, spec, 0.1, trials=40, master_seed=9))

    def test_thread_count_does_not_change_results(self):
        spec = DecoderSpec(kind="scns", T=10)
        single = run_cell(self.code, spec, 0.1, trials=30, master_seed=2, threads=1)
        pooled = run_cell(self.code, spec, 0.1, trials=30, master_seed=2, threads=2)
        self.assertEqual(single, pooled)

    def test_decimating_cell_across_thread_counts(self):
        spec = DecoderSpec(kind="svns-bpgd", T=10)
        cells = [run_cell(self.code, spec, 0.1, trials=48, master_seed=12, threads=t) for t in (1, 4, 8)]
        self.assertGreater(cells[0].mean_decimations, 0.0)
        self.assertEqual(cells[0], cells[1])
        self.assertEqual(cells[0], cells[2])

    def test_max_failures_stops_cell(self):
        spec = DecoderSpec(kind="bp", T=10)
        cell = run_cell(self.code, spec, 0.3, trials=200, master_seed=6, max_failures=3)
        self.assertEqual(cell.frame_errors, 3)
        self.assertLess(cell.trials, 200)
        self.assertTrue(cell.stopped_early)
        self.assertEqual(cell.trials_requested, 200)
        pooled = run_cell(self.code, spec, 0.3, trials=200, master_seed=6, threads=2, max_failures=3)
        self.assertEqual(cell, pooled)

    def test_cell_logged(self):
        with self.assertLogs("syndrome_decoders.campaign", level="INFO") as logs:
            run_cell(self.code, DecoderSpec(kind="bp", T=5), 0.05, trials=3, master_seed=0)
        self.assertIn("FER", logs.output[-1])

    def test_invalid_arguments(self):
        spec = DecoderSpec(kind="bp")
        with self.assertRaises(ContractViolation):
            run_cell(self.code, spec, 0.1, trials=0, master_seed=0)
        with self.assertRaises(ContractViolation):
            run_cell(self.code, spec, 0.1, trials=5, master_seed=0, threads=0)
        with self.assertRaises(ContractViolation):
            run_cell(self.code, spec, 0.1, trials=5, master_seed=0, max_failures=0)


if __name__ == "__main__":
    unittest.main()
