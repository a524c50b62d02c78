"""
BP-OSD-0: flooding BP, then an ordered-statistics solve when BP does not converge
"""

from typing import Any, Dict, Optional, Sequence
import logging
import numpy as np

from . import gf2
from .base_decoder import BpParams, DecodeResult
from .channel import NoiseModel
from .css_code import CssCode
from .flooding_decoder import FloodingDecoder
from .gf2 import BitMatrix, BitVector
from .message_updates import DecoderInstrument

logger = logging.getLogger(__name__)


def osd_zero(h1: BitMatrix, s_x: BitVector, bias: Sequence[float]) -> Optional[BitVector]:
    """Solution of h1·x = s_x supported on the most reliable independent columns, or None"""
    order = np.argsort(-np.abs(np.asarray(bias, dtype=float)), kind="stable")
    return gf2.solve_consistent(h1, s_x, [int(j) for j in order])


class BpOsdDecoder:
    schedule_kind = "flooding"

    def __init__(self, code: CssCode, noise: NoiseModel, params: Optional[BpParams] = None):
        self.code = code
        self.bp = FloodingDecoder(code, noise, params)
        self.decoder_name = "BpOsdDecoder"

    def decode(self, s_x: BitVector, instrument: Optional[DecoderInstrument] = None) -> DecodeResult:
        result, state = self.bp.run(self.bp.check_syndrome(s_x), instrument=instrument)
        if result.converged:
            return result
        solution = osd_zero(self.code.h1, s_x, state.bias)
        logger.debug(f"OSD-0 after {result.iterations_used} BP iterations: {'infeasible' if solution is None else 'solved'}")
        if solution is None:
            return result.model_copy(update={"osd_applied": True})
        return result.model_copy(update={"x_hat": solution, "converged": True, "osd_applied": True})

    def get_decoder_info(self) -> Dict[str, Any]:
        info = self.bp.get_decoder_info()
        info["decoder_name"] = self.decoder_name
        return info


def decode_bp_osd0(
    code: CssCode,
    s_x: BitVector,
    model: NoiseModel,
    params: Optional[BpParams] = None,
    instrument: Optional[DecoderInstrument] = None,
) -> DecodeResult:
    return BpOsdDecoder(code, model, params).decode(s_x, instrument)
