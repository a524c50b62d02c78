"""
Base Decoder Class for syndrome-domain sum-product decoding
Shared records (schedules, parameters, results) and the iteration driver
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Literal, Optional, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from .channel import NoiseModel
from .css_code import CssCode
from .exceptions import ContractViolation
from .gf2 import BitVector
from .message_updates import DEFAULT_ATANH_GUARD, DEFAULT_LLR_CLIP, DecoderInstrument, EdgeMessages

ScheduleKind = Literal["flooding", "scns", "svns"]


class Schedule(BaseModel):
    """Update order: CN permutation for scns, VN permutation for svns, empty for flooding"""

    model_config = ConfigDict(frozen=True)

    kind: ScheduleKind = "flooding"
    order: Tuple[int, ...] = ()
    order_seed: Optional[int] = Field(default=None, ge=0)

    @classmethod
    def draw(cls, kind: ScheduleKind, size: int, order_seed: int, trial: Optional[int] = None) -> Self:
        """Random permutation of 0..size-1 from order_seed (and the trial index when reshuffling)"""
        if kind == "flooding":
            return cls(kind=kind, order=(), order_seed=order_seed)
        seed = order_seed if trial is None else np.random.SeedSequence([order_seed, trial])
        order = np.random.default_rng(seed).permutation(size)
        return cls(kind=kind, order=tuple(int(i) for i in order), order_seed=order_seed)

    @classmethod
    def natural(cls, kind: ScheduleKind, size: int) -> Self:
        return cls(kind=kind, order=tuple(range(size)) if kind != "flooding" else ())

    def validate_for(self, size: int) -> None:
        if self.kind == "flooding":
            if self.order:
                raise ContractViolation("a flooding schedule carries no order")
            return
        if len(self.order) != size or sorted(self.order) != list(range(size)):
            raise ContractViolation(f"{self.kind} order is not a permutation of 0..{size - 1}")


class BpParams(BaseModel):
    """Iteration cap and numerical guards"""

    model_config = ConfigDict(frozen=True)

    T: int = Field(default=100, ge=1)
    llr_clip: float = Field(default=DEFAULT_LLR_CLIP, gt=0.0)
    atanh_guard: float = Field(default=DEFAULT_ATANH_GUARD, gt=0.0, lt=1.0)
    early_stop: bool = True


class GdParams(BaseModel):
    """
    Guided decimation settings; max_decimations None means n

    clamp_llr must not exceed the inner decoder's llr_clip, which bounds every prior.
    """

    model_config = ConfigDict(frozen=True)

    clamp_llr: float = Field(default=25.0, gt=0.0)
    max_decimations: Optional[int] = Field(default=None, ge=0)
    warm_start: bool = False

    @model_validator(mode="after")
    def _finite_clamp(self) -> Self:
        if not np.isfinite(self.clamp_llr):
            raise ValueError("clamp_llr must be finite")
        return self


class DecodeResult(BaseModel):
    """Standard result format for all decoders"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x_hat: BitVector
    converged: bool
    iterations_used: int = 0
    cn_to_vn_messages: int = 0
    decimations: int = 0
    osd_applied: bool = False
    vn_updates: int = 0
    auxiliary_cn_evaluations: int = 0
    rounds: int = 1
    bias: Tuple[float, ...] = ()

    def counters(self) -> Dict[str, Any]:
        return self.model_dump(exclude={"x_hat", "bias"})


class BaseDecoder(ABC):
    """Base class for all BP schedules; subclasses implement one full iteration"""

    schedule_kind: ScheduleKind = "flooding"

    def __init__(self, code: CssCode, noise: NoiseModel, params: Optional[BpParams] = None):
        self.code = code
        self.graph = code.tanner_graph
        self.noise = noise
        self.params = params or BpParams()
        self.decoder_name = self.__class__.__name__
        self.priors = np.full(code.n, np.clip(noise.channel_llr, -self.params.llr_clip, self.params.llr_clip))

    @abstractmethod
    def _sweep(self, state: EdgeMessages, instrument: DecoderInstrument) -> None:
        """Run one full iteration of the schedule on state"""
        pass

    def run(
        self,
        syndrome_bits: np.ndarray,
        priors: Optional[np.ndarray] = None,
        state: Optional[EdgeMessages] = None,
        instrument: Optional[DecoderInstrument] = None,
    ) -> Tuple[DecodeResult, EdgeMessages]:
        """
        Up to T iterations from fresh (or, when state is given, warm) messages

        Returns the result together with the final message state. Counters in
        the result cover this call only; the instrument keeps running totals.
        """
        instrument = instrument or DecoderInstrument()
        start = instrument.snapshot()
        priors = self.priors if priors is None else priors
        syndrome_bits = np.asarray(syndrome_bits, dtype=np.uint8)
        if state is None:
            state = EdgeMessages(self.graph, priors, syndrome_bits, self.params.llr_clip)
        else:
            state.refresh_from_priors(priors)

        matched = False
        iterations = 0
        for t in range(1, self.params.T + 1):
            self._sweep(state, instrument)
            instrument.end_iteration(state)
            iterations = t
            matched = np.array_equal(self.graph.syndrome_of(state.hard_decision()), syndrome_bits)
            if matched and self.params.early_stop:
                break

        counts = instrument.since(start)
        result = DecodeResult(
            x_hat=BitVector.from_array(state.hard_decision()),
            converged=matched,
            iterations_used=iterations,
            cn_to_vn_messages=counts["cn_to_vn_messages"],
            vn_updates=counts["vn_updates"],
            auxiliary_cn_evaluations=counts["auxiliary_cn_evaluations"],
            bias=tuple(state.bias.tolist()),
        )
        return result, state

    def check_syndrome(self, s_x: BitVector) -> np.ndarray:
        if s_x.len != self.graph.n_checks:
            raise ContractViolation(f"syndrome length {s_x.len} does not match h1 rows = {self.graph.n_checks}")
        return s_x.to_array()

    def decode(self, s_x: BitVector, instrument: Optional[DecoderInstrument] = None) -> DecodeResult:
        """Decode one X syndrome"""
        result, _ = self.run(self.check_syndrome(s_x), instrument=instrument)
        return result

    def get_decoder_info(self) -> Dict[str, Any]:
        """Get information about this decoder"""
        return {
            "decoder_name": self.decoder_name,
            "schedule_kind": self.schedule_kind,
            "code": self.code.name,
            "p_x": self.noise.p_x,
            "params": self.params.model_dump(),
        }
