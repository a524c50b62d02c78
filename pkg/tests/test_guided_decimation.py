"""
Tests for BP-guided decimation over the three schedules
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import unittest
import numpy as np
from pydantic import ValidationError

from syndrome_decoders.base_decoder import BpParams, GdParams, Schedule
from syndrome_decoders.channel import NoiseModel, RngStream, sample_error, syndrome
from syndrome_decoders.css_code import builtin_code
from syndrome_decoders.exceptions import ContractViolation
from syndrome_decoders.flooding_decoder import FloodingDecoder
from syndrome_decoders.gf2 import BitVector
from syndrome_decoders.guided_decimation_decoder import (
    GuidedDecimationDecoder,
    clamp_value,
    decode_bpgd,
    select_decimation,
)
from syndrome_decoders.message_updates import DecoderInstrument
from syndrome_decoders.scns_decoder import ScnsDecoder
from syndrome_decoders.svns_decoder import SvnsDecoder


class TestDecimationChoice(unittest.TestCase):
    def test_largest_reliability_lowest_index(self):
        bias = np.array([1.0, -3.0, 3.0, 0.5])
        decimated = np.zeros(4, dtype=bool)
        self.assertEqual(select_decimation(bias, decimated), 1)
        decimated[1] = True
        self.assertEqual(select_decimation(bias, decimated), 2)
        np.testing.assert_array_equal(bias, [1.0, -3.0, 3.0, 0.5])

    def test_clamp_sign(self):
        self.assertEqual(clamp_value(2.0, 25.0), 25.0)
        self.assertEqual(clamp_value(-0.01, 25.0), -25.0)
        self.assertEqual(clamp_value(0.0, 25.0), 25.0)

    def test_params(self):
        with self.assertRaises(ValidationError):
            GdParams(clamp_llr=float("inf"))
        with self.assertRaises(ValidationError):
            GdParams(max_decimations=-1)


class TestGuidedDecimation(unittest.TestCase):
    def setUp(self):
        self.code = builtin_code("hgp:rep5")
        self.graph = self.code.tanner_graph
        self.noise = NoiseModel(p_x=0.08)
        self.params = BpParams(T=8)

    def inner_decoders(self):
        return [
            FloodingDecoder(self.code, self.noise, self.params),
            ScnsDecoder(self.code, self.noise, self.params, Schedule.draw("scns", self.graph.n_checks, 3)),
            SvnsDecoder(self.code, self.noise, self.params, Schedule.draw("svns", self.code.n, 3)),
        ]

    def syndromes(self, count=15):
        for trial in range(count):
            error = sample_error(self.noise, self.code.n, RngStream(master_seed=21, stream_id=trial))
            yield syndrome(self.code, error)

    def test_zero_syndrome_matches_inner(self):
        zero = BitVector.zeros(self.graph.n_checks)
        for inner in self.inner_decoders():
            result = GuidedDecimationDecoder(inner).decode(zero)
            self.assertEqual(result, inner.decode(zero))
            self.assertEqual(result.rounds, 1)
            self.assertEqual(result.decimations, 0)

    def test_round_bookkeeping(self):
        for inner in self.inner_decoders():
            decoder = GuidedDecimationDecoder(inner, GdParams(max_decimations=10))
            for s_x in self.syndromes():
                instrument = DecoderInstrument()
                result = decoder.decode(s_x, instrument)
                self.assertEqual(result.rounds, result.decimations + 1)
                self.assertLessEqual(result.decimations, 10)
                self.assertEqual(result.cn_to_vn_messages, result.iterations_used * self.graph.edge_count)
                self.assertEqual(instrument.decimations, result.decimations)
                self.assertLessEqual(result.iterations_used, result.rounds * self.params.T)
                if result.converged:
                    self.assertEqual(syndrome(self.code, result.x_hat), s_x)
                else:
                    self.assertEqual(result.decimations, 10)

    def test_no_decimation_budget_is_plain_bp(self):
        for inner in self.inner_decoders():
            decoder = GuidedDecimationDecoder(inner, GdParams(max_decimations=0))
            for s_x in self.syndromes(5):
                self.assertEqual(decoder.decode(s_x), inner.decode(s_x))

    def test_budget_above_n_rejected(self):
        inner = FloodingDecoder(self.code, self.noise, self.params)
        with self.assertRaises(ContractViolation):
            GuidedDecimationDecoder(inner, GdParams(max_decimations=self.code.n + 1))

    def test_clamp_above_clip_rejected(self):
        inner = FloodingDecoder(self.code, self.noise, self.params)
        with self.assertRaises(ContractViolation):
            GuidedDecimationDecoder(inner, GdParams(clamp_llr=40.0))
        wide = FloodingDecoder(self.code, self.noise, BpParams(T=8, llr_clip=40.0))
        decoder = GuidedDecimationDecoder(wide, GdParams(clamp_llr=40.0))
        for s_x in self.syndromes(3):
            self.assertEqual(decoder.decode(s_x).rounds, decoder.decode(s_x).decimations + 1)

    def test_warm_start_keeps_invariants(self):
        decoder = GuidedDecimationDecoder(
            FloodingDecoder(self.code, self.noise, self.params), GdParams(warm_start=True)
        )
        for s_x in self.syndromes():
            result = decoder.decode(s_x)
            self.assertEqual(result.rounds, result.decimations + 1)
            if result.converged:
                self.assertEqual(syndrome(self.code, result.x_hat), s_x)

    def test_decimation_logged(self):
        decoder = GuidedDecimationDecoder(FloodingDecoder(self.code, self.noise, BpParams(T=1)))
        s_x = syndrome(self.code, BitVector.from_support(self.code.n, range(0, self.code.n, 3)))
        with self.assertLogs("syndrome_decoders.guided_decimation_decoder", level="DEBUG") as logs:
            result = decoder.decode(s_x)
        self.assertEqual(len(logs.output), result.decimations)
        self.assertGreater(result.decimations, 0)


class TestFunctionalEntryPoint(unittest.TestCase):
    def test_inner_schedule_selects_decoder(self):
        code = builtin_code("hgp:rep3")
        noise = NoiseModel(p_x=0.05)
        s_x = syndrome(code, BitVector.from_support(code.n, [4]))
        for schedule in (None, Schedule.draw("scns", 6, 0), Schedule.draw("svns", 13, 0)):
            result = decode_bpgd(code, s_x, noise, BpParams(T=30), inner_schedule=schedule)
            self.assertEqual(result.rounds, result.decimations + 1)
            if result.converged:
                self.assertEqual(syndrome(code, result.x_hat), s_x)


if __name__ == "__main__":
    unittest.main()
