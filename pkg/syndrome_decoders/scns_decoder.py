"""
SCNS-BP: check nodes are visited one at a time in a fixed order

The current CN sends fresh messages to all its neighbors. Each neighbor then
rebuilds its bias from its prior, the message just received, and freshly
evaluated messages from every other incident CN; these refresh evaluations are
not stored and not counted as propagated messages.
"""

from typing import List, Optional
import numpy as np

from .base_decoder import BaseDecoder, BpParams, DecodeResult, Schedule
from .channel import NoiseModel
from .css_code import CssCode
from .exceptions import ContractViolation
from .gf2 import BitVector
from .message_updates import DecoderInstrument, EdgeMessages, fresh_check_messages, padded_messages


class ScnsDecoder(BaseDecoder):
    schedule_kind = "scns"

    def __init__(
        self,
        code: CssCode,
        noise: NoiseModel,
        params: Optional[BpParams] = None,
        schedule: Optional[Schedule] = None,
    ):
        super().__init__(code, noise, params)
        self.schedule = schedule or Schedule.natural("scns", self.graph.n_checks)
        if self.schedule.kind != "scns":
            raise ContractViolation(f"ScnsDecoder needs an scns schedule, got {self.schedule.kind!r}")
        self.schedule.validate_for(self.graph.n_checks)
        self._build_refresh_index()

    def _build_refresh_index(self) -> None:
        """Per check: the other edges of each neighbor, and which neighbor position owns them"""
        graph = self.graph
        self.check_vars: List[np.ndarray] = []
        self.refresh_edges: List[np.ndarray] = []
        self.refresh_owner: List[np.ndarray] = []
        for edges in graph.check_edges:
            others, owners = [], []
            for position, e in enumerate(edges):
                v = int(graph.edge_var[e])
                for other in graph.var_edges[v]:
                    if other != e:
                        others.append(other)
                        owners.append(position)
            self.check_vars.append(graph.edge_var[np.array(edges, dtype=np.int64)])
            self.refresh_edges.append(np.array(others, dtype=np.int64))
            self.refresh_owner.append(np.array(owners, dtype=np.int64))

    def _sweep(self, state: EdgeMessages, instrument: DecoderInstrument) -> None:
        graph = self.graph
        params = self.params
        llr_clip = params.llr_clip
        siblings = graph.sibling_matrix
        edge_sigma = state.edge_sigma
        v_to_c = padded_messages(state.v_to_c)
        c_to_v = state.c_to_v.copy()
        bias = state.bias.copy()

        for c in self.schedule.order:
            edges = graph.check_edge_arrays[c]
            if edges.size == 0:
                continue
            incoming = fresh_check_messages(edges, v_to_c, edge_sigma, siblings, params)
            c_to_v[edges] = incoming
            instrument.add_messages(edges.size)

            # other checks read only their own edges, untouched during this visit
            refresh = self.refresh_edges[c]
            refreshed = fresh_check_messages(refresh, v_to_c, edge_sigma, siblings, params)
            instrument.add_auxiliary(refresh.size)
            others = np.bincount(self.refresh_owner[c], weights=refreshed, minlength=edges.size)

            variables = self.check_vars[c]
            total = state.priors[variables] + incoming + others
            bias[variables] = np.clip(total, -llr_clip, llr_clip)
            v_to_c[edges] = np.clip(total - incoming, -llr_clip, llr_clip)
            instrument.add_vn_updates(edges.size)

        state.v_to_c = v_to_c[:-1].copy()
        state.c_to_v = c_to_v
        state.bias = bias


def decode_scns(
    code: CssCode,
    s_x: BitVector,
    model: NoiseModel,
    params: Optional[BpParams] = None,
    schedule: Optional[Schedule] = None,
    instrument: Optional[DecoderInstrument] = None,
) -> DecodeResult:
    return ScnsDecoder(code, model, params, schedule).decode(s_x, instrument)
