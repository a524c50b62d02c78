"""
Syndrome-domain BP decoders for quantum LDPC (CSS) codes

Modules:
1. gf2 / alist_io / css_code - bit-packed GF(2) algebra, alist files, CSS codes and Tanner graphs
2. channel - independent X-flip noise, syndromes and seeded per-trial random streams
3. flooding_decoder / scns_decoder / svns_decoder - sum-product BP under three schedules
4. guided_decimation_decoder - BPGD around any of the three schedules
5. osd_decoder - BP-OSD-0 baseline
6. evaluation / campaign - outcome classification, statistics and Monte Carlo campaigns
"""

from .base_decoder import BpParams, DecodeResult, GdParams, Schedule
from .campaign import run_campaign, run_cell
from .channel import NoiseModel, RngStream, sample_error, syndrome
from .css_code import CssCode, TannerGraph, builtin_code, hypergraph_product, make_css, resolve_code
from .decoder_factory import DecoderSpec, build_decoder
from .evaluation import Outcome, TrialStats, classify, clopper_pearson, compare_report
from .exceptions import (
    AlistParseError,
    CodeValidationError,
    ConsistencyError,
    ContractViolation,
    DecoderError,
    NumericalError,
)
from .flooding_decoder import FloodingDecoder, decode_flooding
from .gf2 import BitMatrix, BitVector
from .guided_decimation_decoder import GuidedDecimationDecoder, decode_bpgd
from .message_updates import DecoderInstrument, EdgeMessages, cn_update, vn_update
from .osd_decoder import BpOsdDecoder, decode_bp_osd0
from .scns_decoder import ScnsDecoder, decode_scns
from .svns_decoder import SvnsDecoder, decode_svns

__all__ = [
    "AlistParseError",
    "BitMatrix",
    "BitVector",
    "BpOsdDecoder",
    "BpParams",
    "CodeValidationError",
    "ConsistencyError",
    "ContractViolation",
    "CssCode",
    "DecodeResult",
    "DecoderError",
    "DecoderInstrument",
    "DecoderSpec",
    "EdgeMessages",
    "FloodingDecoder",
    "GdParams",
    "GuidedDecimationDecoder",
    "NoiseModel",
    "NumericalError",
    "Outcome",
    "RngStream",
    "Schedule",
    "ScnsDecoder",
    "SvnsDecoder",
    "TannerGraph",
    "TrialStats",
    "build_decoder",
    "builtin_code",
    "classify",
    "clopper_pearson",
    "cn_update",
    "compare_report",
    "decode_bp_osd0",
    "decode_bpgd",
    "decode_flooding",
    "decode_scns",
    "decode_svns",
    "hypergraph_product",
    "make_css",
    "resolve_code",
    "run_campaign",
    "run_cell",
    "sample_error",
    "syndrome",
    "vn_update",
]

__version__ = "0.1.0"
