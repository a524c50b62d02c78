"""
Independent Pauli-X channel, syndrome map, and per-trial random streams
"""

from typing import Union
import math
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from . import gf2
from .css_code import CssCode
from .exceptions import ContractViolation
from .gf2 import BitVector

SEED_LIMIT = 2 ** 64


class NoiseModel(BaseModel):
    """Each qubit independently suffers an X flip with probability p_x"""

    model_config = ConfigDict(frozen=True)

    p_x: float = Field(ge=0.0, lt=0.5)

    @property
    def channel_llr(self) -> float:
        """Prior LLR log((1 - p_x) / p_x); infinite when p_x = 0"""
        if self.p_x == 0.0:
            return math.inf
        return math.log((1.0 - self.p_x) / self.p_x)


class RngStream(BaseModel):
    """
    Counter-based stream: (master_seed, stream_id) fully determines the bits

    Backed by numpy's SeedSequence + PCG64, so streams with different ids are
    statistically independent and trial results do not depend on execution order.
    """

    model_config = ConfigDict(frozen=True)

    master_seed: int = Field(ge=0, lt=SEED_LIMIT)
    stream_id: int = Field(ge=0, lt=SEED_LIMIT)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.master_seed, self.stream_id])))


def sample_error(model: NoiseModel, n: int, rng: Union[RngStream, np.random.Generator]) -> BitVector:
    """Length-n vector with i.i.d. Bernoulli(p_x) entries"""
    if n < 1:
        raise ContractViolation("error length must be at least 1")
    generator = rng.generator() if isinstance(rng, RngStream) else rng
    draws = generator.random(n)
    return BitVector.from_array((draws < model.p_x).astype(np.uint8))


def syndrome(code: CssCode, x: BitVector) -> BitVector:
    """s_x = h1·x over GF(2)"""
    if x.len != code.n:
        raise ContractViolation(f"error length {x.len} does not match n = {code.n}")
    return gf2.mul_vec(code.h1, x)
