"""
Outcome classification and per-cell statistics for decoding campaigns

A trial is a frame error when the decoder reports a logical error or fails to
converge; degenerate recovery (residual is an X-stabilizer) counts as success.
"""

from enum import Enum
from typing import Any, Dict, List, Literal, NamedTuple, Optional, Sequence, Tuple
from pydantic import BaseModel
from scipy.stats import beta

from . import gf2
from .base_decoder import DecodeResult
from .css_code import CssCode
from .exceptions import ConsistencyError, ContractViolation
from .gf2 import BitVector

CONFIDENCE = 0.95

CSV_COLUMNS = [
    "code",
    "decoder",
    "schedule_kind",
    "order_seed",
    "T",
    "p_x",
    "trials",
    "exact",
    "degenerate",
    "logical",
    "failure",
    "fer",
    "fer_ci_low",
    "fer_ci_high",
    "fer_nonconv_only",
    "mean_messages",
    "mean_decimations",
    "mean_iterations",
    "master_seed",
]


class Outcome(str, Enum):
    EXACT = "ExactRecovery"
    DEGENERATE = "DegenerateRecovery"
    LOGICAL = "LogicalError"
    FAILURE = "Failure"


def classify(code: CssCode, x_true: BitVector, result: DecodeResult) -> Outcome:
    """Compare the estimate against the true error up to X-stabilizers"""
    if x_true.len != code.n or result.x_hat.len != code.n:
        raise ContractViolation(f"vectors must have length n = {code.n}")
    if not result.converged:
        return Outcome.FAILURE
    residual = x_true ^ result.x_hat
    if residual.is_zero():
        return Outcome.EXACT
    if not gf2.mul_vec(code.h1, residual).is_zero():
        raise ConsistencyError("decoder reported convergence but its estimate violates the syndrome")
    if code.is_stabilizer(residual):
        return Outcome.DEGENERATE
    return Outcome.LOGICAL


def clopper_pearson(failures: int, trials: int, confidence: float = CONFIDENCE) -> Tuple[float, float]:
    """Exact two-sided binomial interval"""
    if trials < 1 or not 0 <= failures <= trials:
        raise ContractViolation(f"invalid binomial counts {failures}/{trials}")
    alpha = 1.0 - confidence
    low = 0.0 if failures == 0 else float(beta.ppf(alpha / 2, failures, trials - failures + 1))
    high = 1.0 if failures == trials else float(beta.ppf(1 - alpha / 2, failures + 1, trials - failures))
    return low, high


def upper_bound(failures: int, trials: int, confidence: float = CONFIDENCE) -> float:
    """One-sided Clopper-Pearson upper bound"""
    if failures == trials:
        return 1.0
    return float(beta.ppf(confidence, failures + 1, trials - failures))


class TrialRecord(NamedTuple):
    """What a campaign keeps from one trial"""

    outcome: Outcome
    messages: int
    decimations: int
    iterations: int
    vn_updates: int
    auxiliary_evaluations: int
    osd_applied: bool

    @classmethod
    def of(cls, outcome: Outcome, result: DecodeResult) -> "TrialRecord":
        return cls(
            outcome,
            result.cn_to_vn_messages,
            result.decimations,
            result.iterations_used,
            result.vn_updates,
            result.auxiliary_cn_evaluations,
            result.osd_applied,
        )


class TrialStats(BaseModel):
    """Aggregate of one (code, decoder, T, p_x) cell"""

    code: str
    decoder: str
    schedule_kind: str
    order_seed: Optional[int] = None
    T: int
    p_x: float
    master_seed: int
    trials: int
    exact: int = 0
    degenerate: int = 0
    logical: int = 0
    failure: int = 0
    fer: float = 0.0
    fer_ci_low: float = 0.0
    fer_ci_high: float = 1.0
    fer_nonconv_only: float = 0.0
    mean_messages: float = 0.0
    mean_decimations: float = 0.0
    mean_iterations: float = 0.0
    mean_vn_updates: float = 0.0
    mean_auxiliary_evaluations: float = 0.0
    osd_invocations: int = 0
    trials_requested: int = 0
    stopped_early: bool = False

    @classmethod
    def from_records(
        cls, records: Sequence[TrialRecord], trials_requested: Optional[int] = None, **identity: Any
    ) -> "TrialStats":
        trials = len(records)
        if trials < 1:
            raise ContractViolation("a cell needs at least one trial")
        counts = {outcome: 0 for outcome in Outcome}
        for record in records:
            counts[record.outcome] += 1
        errors = counts[Outcome.LOGICAL] + counts[Outcome.FAILURE]
        low, high = clopper_pearson(errors, trials)
        requested = trials_requested if trials_requested is not None else trials
        return cls(
            trials=trials,
            exact=counts[Outcome.EXACT],
            degenerate=counts[Outcome.DEGENERATE],
            logical=counts[Outcome.LOGICAL],
            failure=counts[Outcome.FAILURE],
            fer=errors / trials,
            fer_ci_low=low,
            fer_ci_high=high,
            fer_nonconv_only=counts[Outcome.FAILURE] / trials,
            mean_messages=sum(r.messages for r in records) / trials,
            mean_decimations=sum(r.decimations for r in records) / trials,
            mean_iterations=sum(r.iterations for r in records) / trials,
            mean_vn_updates=sum(r.vn_updates for r in records) / trials,
            mean_auxiliary_evaluations=sum(r.auxiliary_evaluations for r in records) / trials,
            osd_invocations=sum(1 for r in records if r.osd_applied),
            trials_requested=requested,
            stopped_early=trials < requested,
            **identity,
        )

    @property
    def frame_errors(self) -> int:
        return self.logical + self.failure

    def to_row(self) -> Dict[str, Any]:
        """The fixed CSV column set, in order"""
        data = self.model_dump()
        return {column: data[column] for column in CSV_COLUMNS}


class Comparison(BaseModel):
    """FER of decoder a relative to decoder b at one grid point"""

    p_x: float
    T: int
    fer_a: float
    fer_b: float
    ratio: float
    bound: Literal["exact", "upper", "lower"] = "exact"
    significant: bool


def compare_report(stats_a: Sequence[TrialStats], stats_b: Sequence[TrialStats]) -> List[Comparison]:
    """
    Per grid point: FER ratio a/b and whether the 95% intervals are disjoint

    A zero-error side is replaced by its one-sided upper bound, and the ratio is
    flagged as an upper (a has no errors) or lower (b has no errors) bound.
    """
    by_point_a = {(s.T, s.p_x): s for s in stats_a}
    by_point_b = {(s.T, s.p_x): s for s in stats_b}
    if set(by_point_a) != set(by_point_b) or len(by_point_a) != len(stats_a) or len(by_point_b) != len(stats_b):
        raise ContractViolation("statistics cover different (T, p_x) grids")
    if {s.code for s in stats_a} != {s.code for s in stats_b}:
        raise ContractViolation("statistics come from different codes")

    report = []
    for point in sorted(by_point_a):
        a, b = by_point_a[point], by_point_b[point]
        bound = "exact"
        if a.fer == b.fer:
            ratio = 1.0
        elif a.frame_errors == 0:
            ratio, bound = upper_bound(0, a.trials) / b.fer, "upper"
        elif b.frame_errors == 0:
            ratio, bound = a.fer / upper_bound(0, b.trials), "lower"
        else:
            ratio = a.fer / b.fer
        significant = a.fer_ci_high < b.fer_ci_low or b.fer_ci_high < a.fer_ci_low
        report.append(
            Comparison(
                T=point[0],
                p_x=point[1],
                fer_a=a.fer,
                fer_b=b.fer,
                ratio=ratio,
                bound=bound,
                significant=significant,
            )
        )
    return report
