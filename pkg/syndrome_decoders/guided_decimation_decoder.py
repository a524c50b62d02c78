"""
BP-guided decimation around any BP schedule

Each round runs the inner decoder for up to T iterations. When a round fails
to reproduce the syndrome, the undecimated VN with the largest |bias| has its
prior clamped to ±clamp_llr and the next round starts. With a flooding inner
decoder this is plain BPGD; with SCNS or SVNS it is the sequential variant.
"""

from typing import Any, Dict, Optional
import logging
import numpy as np

from .base_decoder import BaseDecoder, BpParams, DecodeResult, GdParams, Schedule
from .channel import NoiseModel
from .css_code import CssCode
from .exceptions import ContractViolation
from .flooding_decoder import FloodingDecoder
from .gf2 import BitVector
from .message_updates import DecoderInstrument
from .scns_decoder import ScnsDecoder
from .svns_decoder import SvnsDecoder

logger = logging.getLogger(__name__)


def select_decimation(bias: np.ndarray, decimated: np.ndarray) -> int:
    """Most reliable undecimated VN; lowest index wins ties"""
    reliability = np.abs(bias)
    reliability[decimated] = -1.0
    return int(np.argmax(reliability))


def clamp_value(bias: float, clamp_llr: float) -> float:
    """Clamped prior for a decimated VN; a zero bias clamps toward no error"""
    return clamp_llr if bias >= 0 else -clamp_llr


class GuidedDecimationDecoder:
    """Decimation wrapper; counters and iterations accumulate across rounds"""

    def __init__(self, inner: BaseDecoder, gd: Optional[GdParams] = None):
        self.inner = inner
        self.gd = gd or GdParams()
        self.code = inner.code
        self.schedule_kind = inner.schedule_kind
        self.decoder_name = f"GuidedDecimation[{inner.decoder_name}]"
        self.max_decimations = self.gd.max_decimations if self.gd.max_decimations is not None else self.code.n
        if self.max_decimations > self.code.n:
            raise ContractViolation(f"max_decimations {self.max_decimations} exceeds n = {self.code.n}")
        if self.gd.clamp_llr > inner.params.llr_clip:
            raise ContractViolation(
                f"clamp_llr {self.gd.clamp_llr} exceeds llr_clip {inner.params.llr_clip}; priors are clipped to llr_clip"
            )

    def decode(self, s_x: BitVector, instrument: Optional[DecoderInstrument] = None) -> DecodeResult:
        syndrome_bits = self.inner.check_syndrome(s_x)
        instrument = instrument or DecoderInstrument()
        start = instrument.snapshot()
        priors = self.inner.priors.copy()
        decimated = np.zeros(self.code.n, dtype=bool)
        decimations = 0
        iterations = 0
        rounds = 0
        state = None

        while True:
            result, state = self.inner.run(
                syndrome_bits,
                priors=priors,
                state=state if self.gd.warm_start else None,
                instrument=instrument,
            )
            rounds += 1
            iterations += result.iterations_used
            if result.converged or decimations >= self.max_decimations or decimated.all():
                break

            i = select_decimation(state.bias, decimated)
            priors[i] = clamp_value(state.bias[i], self.gd.clamp_llr)
            decimated[i] = True
            decimations += 1
            instrument.add_decimation()
            logger.debug(f"decimated VN {i} (bias {state.bias[i]:.4f}) to {priors[i]:+.1f}")

        counts = instrument.since(start)
        return result.model_copy(
            update={
                "iterations_used": iterations,
                "cn_to_vn_messages": counts["cn_to_vn_messages"],
                "vn_updates": counts["vn_updates"],
                "auxiliary_cn_evaluations": counts["auxiliary_cn_evaluations"],
                "decimations": decimations,
                "rounds": rounds,
            }
        )

    def get_decoder_info(self) -> Dict[str, Any]:
        info = self.inner.get_decoder_info()
        info.update({"decoder_name": self.decoder_name, "gd": self.gd.model_dump()})
        return info


def decode_bpgd(
    code: CssCode,
    s_x: BitVector,
    model: NoiseModel,
    params: Optional[BpParams] = None,
    gd: Optional[GdParams] = None,
    inner_schedule: Optional[Schedule] = None,
    instrument: Optional[DecoderInstrument] = None,
) -> DecodeResult:
    """BPGD with the inner schedule's kind picking flooding, SCNS or SVNS rounds"""
    schedule = inner_schedule or Schedule(kind="flooding")
    if schedule.kind == "scns":
        inner = ScnsDecoder(code, model, params, schedule)
    elif schedule.kind == "svns":
        inner = SvnsDecoder(code, model, params, schedule)
    else:
        inner = FloodingDecoder(code, model, params)
    return GuidedDecimationDecoder(inner, gd).decode(s_x, instrument)
