"""
Flooding sum-product BP: all CN messages from the previous VN messages, then all VN messages
"""

from typing import Optional
import numpy as np

from .base_decoder import BaseDecoder, BpParams, DecodeResult
from .channel import NoiseModel
from .css_code import CssCode
from .gf2 import BitVector
from .message_updates import DecoderInstrument, EdgeMessages, flooding_check_pass


class FloodingDecoder(BaseDecoder):
    """Parallel schedule; emits exactly edge_count CN→VN messages per iteration"""

    schedule_kind = "flooding"

    def __init__(self, code: CssCode, noise: NoiseModel, params: Optional[BpParams] = None):
        super().__init__(code, noise, params)
        self.groups = self.graph.checks_by_degree()

    def _sweep(self, state: EdgeMessages, instrument: DecoderInstrument) -> None:
        graph = self.graph
        clip = self.params.llr_clip
        state.c_to_v = flooding_check_pass(state.v_to_c, state.sigma, self.groups, self.params)
        instrument.add_messages(graph.edge_count)

        totals = state.priors + np.bincount(graph.edge_var, weights=state.c_to_v, minlength=graph.n_vars)
        state.v_to_c = np.clip(totals[graph.edge_var] - state.c_to_v, -clip, clip)
        state.bias = np.clip(totals, -clip, clip)
        instrument.add_vn_updates(graph.n_vars)


def decode_flooding(
    code: CssCode,
    s_x: BitVector,
    model: NoiseModel,
    params: Optional[BpParams] = None,
    instrument: Optional[DecoderInstrument] = None,
) -> DecodeResult:
    return FloodingDecoder(code, model, params).decode(s_x, instrument)
