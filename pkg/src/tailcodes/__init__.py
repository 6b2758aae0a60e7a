"""Permutation codes that correct stuck-at errors in rank-modulated tail labels.

Three constructions are provided: code A for up to ``t`` symbols stuck one
value low, code B for a burst of up to ``t`` consecutive values stuck at the
lowest, and code C for a single symbol stuck up to ``t`` values low when only
relative ranks are observed.
"""

from .channel import (
    PatternA,
    PatternB,
    PatternC,
    enumerate_patterns,
    inject,
    inject_a,
    inject_b,
    inject_c,
    random_pattern,
)
from .code_a import CodeParamsA, decode_a, encode_a
from .code_b import CodeParamsB, decode_b, encode_b
from .code_c import CodeParamsC, decode_c, encode_c, parity_checks
from .codec import Codec, make_codec
from .errors import DecodeError, ParamsError
from .oracle import VerificationReport, ambiguity_scan, exhaustive_verify, lemma_suite

__version__ = "0.1.0"

__all__ = [
    "CodeParamsA", "CodeParamsB", "CodeParamsC", "Codec", "DecodeError", "ParamsError",
    "PatternA", "PatternB", "PatternC", "VerificationReport", "ambiguity_scan",
    "decode_a", "decode_b", "decode_c", "encode_a", "encode_b", "encode_c",
    "enumerate_patterns", "exhaustive_verify", "inject", "inject_a", "inject_b", "inject_c",
    "lemma_suite", "make_codec", "parity_checks", "random_pattern",
]
