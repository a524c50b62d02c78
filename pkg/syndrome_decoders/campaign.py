"""
Seeded Monte Carlo campaigns over p_x grids

Trial t of every cell draws its error from RngStream(master_seed, t), so all
decoders and thread counts see the same errors. Worker processes return
per-trial records and the reduction always runs in trial-index order, which
makes every statistic independent of the thread count.
"""

from multiprocessing import get_context
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging
import math

from .channel import NoiseModel, RngStream, sample_error, syndrome
from .css_code import CssCode
from .decoder_factory import DecoderSpec, build_decoder, schedule_for
from .evaluation import Outcome, TrialRecord, TrialStats, classify
from .exceptions import ContractViolation
from .message_updates import DecoderInstrument

logger = logging.getLogger(__name__)

_FRAME_ERRORS = (Outcome.LOGICAL, Outcome.FAILURE)

# per-process state installed by _init_worker
_worker: Dict[str, Any] = {}


def run_trials(
    code: CssCode,
    spec: DecoderSpec,
    p_x: float,
    master_seed: int,
    start: int,
    stop: int,
    strict: bool = False,
    max_failures: Optional[int] = None,
) -> List[TrialRecord]:
    """Trials start..stop-1 of one cell, in order; stops after the max_failures-th frame error"""
    noise = NoiseModel(p_x=p_x)
    decoder = None if spec.reshuffle_schedule else build_decoder(spec, code, noise)
    records = []
    failures = 0
    for trial in range(start, stop):
        error = sample_error(noise, code.n, RngStream(master_seed=master_seed, stream_id=trial))
        s_x = syndrome(code, error)
        trial_decoder = decoder or build_decoder(spec, code, noise, schedule_for(spec, code, trial))
        result = trial_decoder.decode(s_x, DecoderInstrument(strict=strict))
        outcome = classify(code, error, result)
        records.append(TrialRecord.of(outcome, result))
        if outcome in _FRAME_ERRORS:
            failures += 1
            if max_failures is not None and failures >= max_failures:
                break
    return records


def _init_worker(code: CssCode, spec: DecoderSpec, p_x: float, master_seed: int, strict: bool) -> None:
    _worker.update(code=code, spec=spec, p_x=p_x, master_seed=master_seed, strict=strict)


def _run_chunk(bounds: Tuple[int, int]) -> List[TrialRecord]:
    return run_trials(
        _worker["code"], _worker["spec"], _worker["p_x"], _worker["master_seed"], bounds[0], bounds[1], _worker["strict"]
    )


def _chunks(trials: int, threads: int) -> List[Tuple[int, int]]:
    size = max(1, math.ceil(trials / (threads * 4)))
    return [(start, min(start + size, trials)) for start in range(0, trials, size)]


def truncate_at_failures(records: Sequence[TrialRecord], max_failures: Optional[int]) -> List[TrialRecord]:
    """Prefix of records ending at the max_failures-th frame error"""
    if max_failures is None:
        return list(records)
    failures = 0
    for index, record in enumerate(records):
        if record.outcome in _FRAME_ERRORS:
            failures += 1
            if failures >= max_failures:
                return list(records[: index + 1])
    return list(records)


def run_cell(
    code: CssCode,
    spec: DecoderSpec,
    p_x: float,
    trials: int,
    master_seed: int,
    threads: int = 1,
    max_failures: Optional[int] = None,
    strict: bool = False,
) -> TrialStats:
    """
    One (decoder, T, p_x) cell

    Args:
        code: Code whose h1 is decoded
        spec: Decoder column; a missing order_seed defaults to master_seed
        p_x: Channel flip probability
        trials: Trials requested; fewer are run after a max-failures stop
        master_seed: Seeds the per-trial error streams and the default schedule
        threads: Worker processes; results do not depend on this value
        max_failures: Stop after this many frame errors (None runs every trial)
        strict: Raise NumericalError on non-finite decoder state

    Returns:
        TrialStats over the trials actually run
    """
    if trials < 1:
        raise ContractViolation("trials must be at least 1")
    if threads < 1:
        raise ContractViolation("threads must be at least 1")
    if max_failures is not None and max_failures < 1:
        raise ContractViolation("max_failures must be at least 1")
    spec = spec.with_defaults(master_seed)

    if threads == 1:
        records = run_trials(code, spec, p_x, master_seed, 0, trials, strict, max_failures)
    else:
        ctx = get_context("spawn")
        with ctx.Pool(
            processes=threads, initializer=_init_worker, initargs=(code, spec, p_x, master_seed, strict)
        ) as pool:
            records = [record for chunk in pool.imap(_run_chunk, _chunks(trials, threads)) for record in chunk]
        records = truncate_at_failures(records, max_failures)

    stats = TrialStats.from_records(
        records,
        trials_requested=trials,
        code=code.name,
        decoder=spec.kind,
        schedule_kind=spec.schedule_kind,
        order_seed=spec.order_seed,
        T=spec.T,
        p_x=p_x,
        master_seed=master_seed,
    )
    if stats.stopped_early:
        logger.info(f"{spec.kind} p_x={p_x}: max-failures stop after {stats.trials} of {trials} trials")
    logger.info(
        f"{code.name} {spec.kind} T={spec.T} p_x={p_x}: FER {stats.fer:.3e} "
        f"[{stats.fer_ci_low:.3e}, {stats.fer_ci_high:.3e}] over {stats.trials} trials, "
        f"mean messages {stats.mean_messages:.1f}, mean decimations {stats.mean_decimations:.4f}"
    )
    return stats


def run_campaign(
    code: CssCode,
    spec: DecoderSpec,
    p_values: Sequence[float],
    trials: int,
    master_seed: int,
    threads: int = 1,
    max_failures: Optional[int] = None,
    strict: bool = False,
) -> List[TrialStats]:
    """
    Per-p_x statistics for one decoder spec

    Args:
        p_values: Flip probabilities, one cell each
        (other arguments as in run_cell, applied to every cell)

    Returns:
        One TrialStats per p_x, in the order p_values is given
    """
    return [
        run_cell(code, spec, p_x, trials, master_seed, threads, max_failures, strict) for p_x in p_values
    ]
