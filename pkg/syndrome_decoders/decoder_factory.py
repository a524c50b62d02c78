"""
Decoder kinds and the DecoderSpec record that builds a decoder instance for a campaign
"""

from typing import Dict, Literal, Optional, Tuple, Union
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from .base_decoder import BpParams, GdParams, Schedule, ScheduleKind
from .channel import NoiseModel
from .css_code import CssCode
from .flooding_decoder import FloodingDecoder
from .guided_decimation_decoder import GuidedDecimationDecoder
from .message_updates import DEFAULT_ATANH_GUARD, DEFAULT_LLR_CLIP
from .osd_decoder import BpOsdDecoder
from .scns_decoder import ScnsDecoder
from .svns_decoder import SvnsDecoder

DecoderKind = Literal["bp", "scns", "svns", "bpgd", "scns-bpgd", "svns-bpgd", "bp-osd0"]

# kind -> (schedule kind, guided decimation, OSD-0 post-processing)
DECODER_KINDS: Dict[str, Tuple[ScheduleKind, bool, bool]] = {
    "bp": ("flooding", False, False),
    "scns": ("scns", False, False),
    "svns": ("svns", False, False),
    "bpgd": ("flooding", True, False),
    "scns-bpgd": ("scns", True, False),
    "svns-bpgd": ("svns", True, False),
    "bp-osd0": ("flooding", False, True),
}

AnyDecoder = Union[FloodingDecoder, ScnsDecoder, SvnsDecoder, GuidedDecimationDecoder, BpOsdDecoder]


class DecoderSpec(BaseModel):
    """One decoder column of an experiment grid"""

    model_config = ConfigDict(frozen=True)

    kind: DecoderKind
    T: int = Field(default=100, ge=1)
    order_seed: Optional[int] = Field(default=None, ge=0)
    llr_clip: float = Field(default=DEFAULT_LLR_CLIP, gt=0.0)
    atanh_guard: float = Field(default=DEFAULT_ATANH_GUARD, gt=0.0, lt=1.0)
    clamp_llr: float = Field(default=25.0, gt=0.0)
    max_decimations: Optional[int] = Field(default=None, ge=0)
    warm_start: bool = False
    reshuffle_schedule: bool = False

    @model_validator(mode="after")
    def _clamp_within_clip(self) -> Self:
        if self.uses_decimation and self.clamp_llr > self.llr_clip:
            raise ValueError(f"clamp_llr {self.clamp_llr} exceeds llr_clip {self.llr_clip}")
        return self

    @property
    def schedule_kind(self) -> ScheduleKind:
        return DECODER_KINDS[self.kind][0]

    @property
    def uses_decimation(self) -> bool:
        return DECODER_KINDS[self.kind][1]

    @property
    def uses_osd(self) -> bool:
        return DECODER_KINDS[self.kind][2]

    def bp_params(self) -> BpParams:
        return BpParams(T=self.T, llr_clip=self.llr_clip, atanh_guard=self.atanh_guard)

    def gd_params(self) -> GdParams:
        return GdParams(clamp_llr=self.clamp_llr, max_decimations=self.max_decimations, warm_start=self.warm_start)

    def with_defaults(self, master_seed: int) -> Self:
        """Fill order_seed from master_seed when unset"""
        if self.order_seed is not None:
            return self
        return self.model_copy(update={"order_seed": master_seed})


def schedule_for(spec: DecoderSpec, code: CssCode, trial: Optional[int] = None) -> Schedule:
    """Fixed per run; with reshuffle_schedule the trial index enters the draw"""
    kind = spec.schedule_kind
    size = code.tanner_graph.n_checks if kind == "scns" else code.n
    seed = spec.order_seed if spec.order_seed is not None else 0
    return Schedule.draw(kind, size, seed, trial if spec.reshuffle_schedule else None)


def build_decoder(
    spec: DecoderSpec, code: CssCode, noise: NoiseModel, schedule: Optional[Schedule] = None
) -> AnyDecoder:
    """Instantiate the decoder a spec names"""
    params = spec.bp_params()
    if spec.uses_osd:
        return BpOsdDecoder(code, noise, params)

    schedule = schedule or schedule_for(spec, code)
    if spec.schedule_kind == "scns":
        inner = ScnsDecoder(code, noise, params, schedule)
    elif spec.schedule_kind == "svns":
        inner = SvnsDecoder(code, noise, params, schedule)
    else:
        inner = FloodingDecoder(code, noise, params)

    if spec.uses_decimation:
        return GuidedDecimationDecoder(inner, spec.gd_params())
    return inner
