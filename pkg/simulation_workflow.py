"""
Monte Carlo decoding workflow for QLDPC codes

Resolves a run configuration (defaults, environment, --config file, flags),
builds or loads the code, runs one campaign per decoder cell, and writes the
results grid as CSV or JSON. Progress is logged per cell to standard error.

    python simulation_workflow.py --code hgp:rep3 --decoder svns --p 0.05 \
        --iters 100 --trials 1000 --seed 7 --out run.csv
"""

from typing import Any, Dict, List, Optional, Sequence
import argparse
import logging
import sys

from pydantic import ValidationError

from support_functions import RunConfig, emit_results, environment_defaults, load_config_file, parse_list
from syndrome_decoders.campaign import run_campaign
from syndrome_decoders.css_code import CssCode, resolve_code
from syndrome_decoders.decoder_factory import DECODER_KINDS
from syndrome_decoders.evaluation import TrialStats
from syndrome_decoders.exceptions import DecoderError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

# flag -> DecoderSpec field, applied to every decoder
_DECODER_OVERRIDES = {
    "schedule_seed": "order_seed",
    "clamp_llr": "clamp_llr",
    "max_decimations": "max_decimations",
    "llr_clip": "llr_clip",
    "warm_start": "warm_start",
    "reshuffle": "reshuffle_schedule",
}


class SimulationWorkflow:
    """Runs every (decoder, T, p_x) cell of a configuration against one code"""

    def __init__(self, config: RunConfig, code: Optional[CssCode] = None):
        self.config = config.resolved()
        self.code = code or resolve_code(config.code)
        self.results: List[TrialStats] = []

    def run(self) -> List[TrialStats]:
        logger.info(
            f"code {self.code.name} {self.code.parameters()}: {len(self.config.cells())} decoder cell(s) "
            f"x {len(self.config.p_values)} p_x value(s), {self.config.trials} trials each"
        )
        self.results = []
        for spec in self.config.cells():
            self.results.extend(
                run_campaign(
                    self.code,
                    spec,
                    self.config.p_values,
                    self.config.trials,
                    self.config.master_seed,
                    threads=self.config.threads,
                    max_failures=self.config.max_failures,
                )
            )
        return self.results

    def write(self) -> None:
        emit_results(self.results, self.config.format, self.config.output, self.config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulation_workflow",
        description="Frame-error-rate campaigns for syndrome BP decoders on CSS codes",
    )
    parser.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    parser.add_argument("--code", help="builtin name (hgp:rep3, hgp:rep5, hgp:hamming7, css:steane) or manifest path")
    parser.add_argument("--decoder", help=f"comma list of decoder kinds: {', '.join(DECODER_KINDS)}")
    parser.add_argument("--p", help="comma list of X-flip probabilities")
    parser.add_argument("--iters", help="comma list of iteration caps T")
    parser.add_argument("--trials", type=int, help="trials per cell")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--threads", type=int, help="worker processes (default from QLDPC_THREADS or 1)")
    parser.add_argument("--out", help="output path ('-' for standard output)")
    parser.add_argument("--format", choices=["csv", "json"])
    parser.add_argument("--max-failures", type=int, help="stop a cell after this many frame errors")
    parser.add_argument("--schedule-seed", type=int, help="order seed for SCNS/SVNS (default: master seed)")
    parser.add_argument("--clamp-llr", type=float, help="decimation clamp magnitude")
    parser.add_argument("--max-decimations", type=int, help="decimation cap (default: n)")
    parser.add_argument("--llr-clip", type=float, help="message magnitude bound")
    parser.add_argument("--warm-start", action="store_true", default=None, help="keep messages across BPGD rounds")
    parser.add_argument("--reshuffle", action="store_true", default=None, help="redraw schedules per trial")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return parser


def resolve_config(args: argparse.Namespace, env: Dict[str, Any], parser: argparse.ArgumentParser) -> RunConfig:
    """
    Merge configuration sources: defaults < environment < --config file < flags

    Args:
        args: Parsed command line
        env: Values read from .env / the process environment (see environment_defaults)
        parser: Used to report a missing required setting as a usage error (exit code 2)

    Returns:
        Validated RunConfig; pydantic ValidationError if a merged value is out of range
    """
    merged: Dict[str, Any] = {}
    if "threads" in env:
        merged["threads"] = env["threads"]
    if args.config:
        merged.update(load_config_file(args.config))

    flags = {
        "code": args.code,
        "p_values": parse_list(args.p) if args.p else None,
        "iterations": parse_list(args.iters, int) if args.iters else None,
        "trials": args.trials,
        "master_seed": args.seed,
        "threads": args.threads,
        "output": args.out,
        "format": args.format,
        "max_failures": args.max_failures,
    }
    merged.update({key: value for key, value in flags.items() if value is not None})
    if args.decoder:
        merged["decoders"] = [{"kind": kind} for kind in parse_list(args.decoder, str)]

    overrides = {
        field: getattr(args, flag) for flag, field in _DECODER_OVERRIDES.items() if getattr(args, flag) is not None
    }
    if overrides:
        merged["decoders"] = [{**dict(spec), **overrides} for spec in merged.get("decoders", [])]

    for required, flag in (("trials", "--trials"), ("code", "--code"), ("p_values", "--p"), ("decoders", "--decoder")):
        if required not in merged:
            parser.error(f"{flag} is required (on the command line or in --config)")
    return RunConfig.model_validate(merged)


def configure_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Command-line entry point; returns the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        env = environment_defaults()
        configure_logging(args.log_level or env.get("log_level", "INFO"))
        config = resolve_config(args, env, parser)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)
    except (ValidationError, ValueError, OSError) as error:
        logger.error(f"invalid configuration: {error}")
        return 1

    try:
        workflow = SimulationWorkflow(config)
        workflow.run()
        workflow.write()
    except (DecoderError, ValidationError, OSError) as error:
        logger.error(f"{type(error).__name__}: {error}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
