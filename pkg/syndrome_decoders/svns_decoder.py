"""
SVNS-BP: variable nodes are visited one at a time in a fixed order

For the current VN every incident CN message is recomputed from the latest
VN→CN messages, the bias is refreshed, and new extrinsic messages go out on
each incident edge before the next VN is visited.
"""

from typing import Optional
import numpy as np

from .base_decoder import BaseDecoder, BpParams, DecodeResult, Schedule
from .channel import NoiseModel
from .css_code import CssCode
from .exceptions import ContractViolation
from .gf2 import BitVector
from .message_updates import DecoderInstrument, EdgeMessages, fresh_check_messages, padded_messages


class SvnsDecoder(BaseDecoder):
    schedule_kind = "svns"

    def __init__(
        self,
        code: CssCode,
        noise: NoiseModel,
        params: Optional[BpParams] = None,
        schedule: Optional[Schedule] = None,
    ):
        super().__init__(code, noise, params)
        self.schedule = schedule or Schedule.natural("svns", code.n)
        if self.schedule.kind != "svns":
            raise ContractViolation(f"SvnsDecoder needs an svns schedule, got {self.schedule.kind!r}")
        self.schedule.validate_for(code.n)

    def _sweep(self, state: EdgeMessages, instrument: DecoderInstrument) -> None:
        graph = self.graph
        params = self.params
        llr_clip = params.llr_clip
        siblings = graph.sibling_matrix
        edge_sigma = state.edge_sigma
        priors = state.priors
        v_to_c = padded_messages(state.v_to_c)
        c_to_v = state.c_to_v.copy()
        bias = state.bias.copy()

        for v in self.schedule.order:
            edges = graph.var_edge_arrays[v]
            if edges.size:
                incoming = fresh_check_messages(edges, v_to_c, edge_sigma, siblings, params)
                c_to_v[edges] = incoming
                instrument.add_messages(edges.size)
                total = priors[v] + incoming.sum()
                v_to_c[edges] = np.clip(total - incoming, -llr_clip, llr_clip)
                bias[v] = min(max(total, -llr_clip), llr_clip)
            else:
                bias[v] = priors[v]
            instrument.add_vn_updates(1)

        state.v_to_c = v_to_c[:-1].copy()
        state.c_to_v = c_to_v
        state.bias = bias


def decode_svns(
    code: CssCode,
    s_x: BitVector,
    model: NoiseModel,
    params: Optional[BpParams] = None,
    schedule: Optional[Schedule] = None,
    instrument: Optional[DecoderInstrument] = None,
) -> DecodeResult:
    return SvnsDecoder(code, model, params, schedule).decode(s_x, instrument)
