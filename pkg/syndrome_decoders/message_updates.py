"""
Sum-product message rules shared by every schedule

cn_update / vn_update are the scalar rules; flooding_check_pass applies the CN
rule to every edge at once and fresh_check_messages to a chosen set of edges,
which is what the per-node schedules use. EdgeMessages holds the per-decode state and
DecoderInstrument counts what the schedules do with it.
"""

from typing import TYPE_CHECKING, Dict, Iterable, List, Optional, Sequence, Tuple
import math
import numpy as np

from .exceptions import NumericalError

if TYPE_CHECKING:
    from .css_code import TannerGraph

DEFAULT_LLR_CLIP = 30.0
DEFAULT_ATANH_GUARD = 1e-12


def clip(value: float, bound: float) -> float:
    if value > bound:
        return bound
    if value < -bound:
        return -bound
    return value


def cn_update(incoming: Iterable[float], syndrome_bit: int, params=None) -> float:
    """
    m_{c→v} = 2 (−1)^{s(c)} atanh(Π tanh(m_{u→c} / 2)) over the other neighbors u

    The product is held inside ±(1 − atanh_guard) and the result inside ±llr_clip;
    saturation is silent.
    """
    llr_clip = params.llr_clip if params is not None else DEFAULT_LLR_CLIP
    guard = params.atanh_guard if params is not None else DEFAULT_ATANH_GUARD
    product = -1.0 if syndrome_bit else 1.0
    for message in incoming:
        product *= math.tanh(0.5 * message)
    bound = 1.0 - guard
    product = clip(product, bound)
    return clip(2.0 * math.atanh(product), llr_clip)


def vn_update(prior: float, incoming: Sequence[float], params=None) -> Tuple[float, List[float]]:
    """Bias m_v = μ_v + Σ m_{c→v}; extrinsic m_{v→c} = m_v − m_{c→v}; all clipped"""
    llr_clip = params.llr_clip if params is not None else DEFAULT_LLR_CLIP
    bias = prior + sum(incoming)
    outgoing = [clip(bias - message, llr_clip) for message in incoming]
    return clip(bias, llr_clip), outgoing


def flooding_check_pass(
    v_to_c: np.ndarray,
    sigma: np.ndarray,
    groups: Sequence[Tuple[np.ndarray, np.ndarray]],
    params,
) -> np.ndarray:
    """All CN→VN messages from the current VN→CN messages (same rule as cn_update)"""
    c_to_v = np.zeros_like(v_to_c)
    bound = 1.0 - params.atanh_guard
    for checks, edges in groups:
        t = np.tanh(0.5 * v_to_c[edges])
        before = np.ones_like(t)
        after = np.ones_like(t)
        if t.shape[1] > 1:
            before[:, 1:] = np.cumprod(t[:, :-1], axis=1)
            after[:, :-1] = np.cumprod(t[:, :0:-1], axis=1)[:, ::-1]
        product = np.clip(sigma[checks][:, None] * before * after, -bound, bound)
        c_to_v[edges] = np.clip(2.0 * np.arctanh(product), -params.llr_clip, params.llr_clip)
    return c_to_v


def padded_messages(v_to_c: np.ndarray) -> np.ndarray:
    """Copy of v_to_c with one saturated slot appended for sibling_matrix padding"""
    buffer = np.empty(v_to_c.size + 1, dtype=float)
    buffer[:-1] = v_to_c
    buffer[-1] = np.inf
    return buffer


def fresh_check_messages(
    edges: np.ndarray,
    v_to_c: np.ndarray,
    edge_sigma: np.ndarray,
    sibling_matrix: np.ndarray,
    params,
) -> np.ndarray:
    """
    cn_update for each edge in `edges`, evaluated from the current messages

    v_to_c must be a padded buffer (see padded_messages) so that padding
    siblings contribute tanh(inf) = 1 to the product.
    """
    bound = 1.0 - params.atanh_guard
    t = np.tanh(0.5 * v_to_c[sibling_matrix[edges]])
    product = np.clip(edge_sigma[edges] * t.prod(axis=1), -bound, bound)
    return np.clip(2.0 * np.arctanh(product), -params.llr_clip, params.llr_clip)


class EdgeMessages:
    """
    Decoder state: v→c and c→v messages per edge, bias and prior per VN, sign per CN

    On initialization every v→c message and every bias equals the prior, and
    every c→v message is zero.
    """

    def __init__(self, graph: "TannerGraph", priors: np.ndarray, syndrome_bits: np.ndarray, llr_clip: float):
        self.graph = graph
        self.llr_clip = llr_clip
        self.syndrome_bits = np.asarray(syndrome_bits, dtype=np.uint8)
        self.sigma = np.where(self.syndrome_bits == 1, -1.0, 1.0)
        self.edge_sigma = self.sigma[graph.edge_check]
        self.priors = np.clip(np.asarray(priors, dtype=float), -llr_clip, llr_clip)
        self.bias = self.priors.copy()
        self.v_to_c = self.priors[graph.edge_var].copy()
        self.c_to_v = np.zeros(graph.edge_count, dtype=float)

    def refresh_from_priors(self, priors: np.ndarray) -> None:
        """Keep c→v messages, rebuild biases and v→c messages around new priors"""
        self.priors = np.clip(np.asarray(priors, dtype=float), -self.llr_clip, self.llr_clip)
        totals = self.priors + np.bincount(
            self.graph.edge_var, weights=self.c_to_v, minlength=self.graph.n_vars
        )
        self.v_to_c = np.clip(totals[self.graph.edge_var] - self.c_to_v, -self.llr_clip, self.llr_clip)
        self.bias = np.clip(totals, -self.llr_clip, self.llr_clip)

    def hard_decision(self) -> np.ndarray:
        return (self.bias < 0).astype(np.uint8)

    def all_finite(self) -> bool:
        return bool(
            np.isfinite(self.bias).all() and np.isfinite(self.v_to_c).all() and np.isfinite(self.c_to_v).all()
        )


class DecoderInstrument:
    """
    Counters for one decode call (or one multi-round call such as BPGD)

    cn_to_vn_messages counts assignments to stored c→v messages only;
    auxiliary_cn_evaluations counts fresh CN evaluations used solely to refresh
    a bias. A strict instrument raises NumericalError on any non-finite state.
    """

    def __init__(self, strict: bool = False, keep_history: bool = False):
        self.strict = strict
        self.keep_history = keep_history
        self.cn_to_vn_messages = 0
        self.auxiliary_cn_evaluations = 0
        self.vn_updates = 0
        self.decimations = 0
        self.history: List[Dict[str, int]] = []

    def add_messages(self, count: int) -> None:
        self.cn_to_vn_messages += count

    def add_auxiliary(self, count: int) -> None:
        self.auxiliary_cn_evaluations += count

    def add_vn_updates(self, count: int) -> None:
        self.vn_updates += count

    def add_decimation(self) -> None:
        self.decimations += 1

    def snapshot(self) -> Dict[str, int]:
        return {
            "cn_to_vn_messages": self.cn_to_vn_messages,
            "auxiliary_cn_evaluations": self.auxiliary_cn_evaluations,
            "vn_updates": self.vn_updates,
            "decimations": self.decimations,
        }

    def since(self, start: Dict[str, int]) -> Dict[str, int]:
        now = self.snapshot()
        return {key: now[key] - start.get(key, 0) for key in now}

    def end_iteration(self, state: Optional[EdgeMessages] = None) -> None:
        if self.strict and state is not None and not state.all_finite():
            raise NumericalError("non-finite message or bias after an iteration")
        if self.keep_history:
            self.history.append(self.snapshot())
