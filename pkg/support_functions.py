"""
Support Functions for the decoding simulation workflow
Run configuration, environment defaults, config files and result emission
"""

from typing import Any, Dict, List, Literal, Optional, Sequence
from datetime import datetime
from pathlib import Path
import json
import os
import sys

import pandas as pd
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

from syndrome_decoders.decoder_factory import DecoderSpec
from syndrome_decoders.evaluation import CSV_COLUMNS, TrialStats

ENV_THREADS = "QLDPC_THREADS"
ENV_LOG_LEVEL = "QLDPC_LOG_LEVEL"


class RunConfig(BaseModel):
    """Everything needed to rerun an experiment grid"""

    code: str
    decoders: List[DecoderSpec] = Field(min_length=1)
    p_values: List[float] = Field(min_length=1)
    iterations: List[int] = []
    trials: int = Field(ge=1)
    master_seed: int = Field(default=0, ge=0, lt=2 ** 64)
    threads: int = Field(default=1, ge=1)
    output: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    max_failures: Optional[int] = Field(default=None, ge=1)

    @field_validator("p_values")
    @classmethod
    def _p_in_range(cls, values: List[float]) -> List[float]:
        for p in values:
            if not 0.0 <= p < 0.5:
                raise ValueError(f"p_x = {p} outside [0, 0.5)")
        return values

    @field_validator("iterations")
    @classmethod
    def _positive_iterations(cls, values: List[int]) -> List[int]:
        if any(t < 1 for t in values):
            raise ValueError("iteration caps must be at least 1")
        return values

    def resolved(self) -> "RunConfig":
        """Copy with every decoder's order_seed filled in"""
        return self.model_copy(update={"decoders": [d.with_defaults(self.master_seed) for d in self.decoders]})

    def cells(self) -> List[DecoderSpec]:
        """Decoder specs expanded over the iteration grid"""
        specs = self.resolved().decoders
        if not self.iterations:
            return specs
        return [spec.model_copy(update={"T": t}) for spec in specs for t in self.iterations]


def environment_defaults() -> Dict[str, Any]:
    """Defaults from the environment (and a .env file, if present)"""
    load_dotenv()
    defaults: Dict[str, Any] = {}
    if os.getenv(ENV_THREADS):
        defaults["threads"] = int(os.environ[ENV_THREADS])
    if os.getenv(ENV_LOG_LEVEL):
        defaults["log_level"] = os.environ[ENV_LOG_LEVEL].upper()
    return defaults


def load_config_file(path: str) -> Dict[str, Any]:
    with open(path, "r") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: configuration must be a JSON object")
    return data


def parse_list(text: str, kind=float) -> List[Any]:
    """'0.01,0.05' -> [0.01, 0.05]"""
    return [kind(item.strip()) for item in text.split(",") if item.strip()]


def results_frame(stats: Sequence[TrialStats]) -> pd.DataFrame:
    return pd.DataFrame([s.to_row() for s in stats], columns=CSV_COLUMNS)


def emit_results(
    stats: Sequence[TrialStats],
    format: str = "csv",
    path: Optional[str] = None,
    config: Optional[RunConfig] = None,
) -> None:
    """
    Write the stats grid as CSV (fixed columns, one row per cell) or JSON

    JSON carries every TrialStats field per cell plus the resolved configuration.

    Args:
        stats: One TrialStats per (decoder, T, p_x) cell, written in the given order
        format: "csv" or "json"; anything else raises ValueError
        path: Output file; None or '-' writes to standard output
        config: Resolved run configuration embedded in JSON output (ignored for CSV)
    """
    if format == "csv":
        text = results_frame(stats).to_csv(index=False, lineterminator="\n")
    elif format == "json":
        document = {
            "generated_at": datetime.now().isoformat(),
            "config": config.resolved().model_dump() if config is not None else None,
            "columns": CSV_COLUMNS,
            "cells": [s.model_dump() for s in stats],
        }
        text = json.dumps(document, indent=2) + "\n"
    else:
        raise ValueError(f"unknown output format {format!r}")

    if path is None or path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text)
