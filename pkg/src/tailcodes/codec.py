"""Uniform handle on the three codes, used by the oracle and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .code_a import CodeParamsA, decode_a, encode_a
from .code_b import CodeParamsB, decode_b, encode_b
from .code_c import CodeParamsC, decode_c, encode_c
from .errors import ParamsError

Params = Union[CodeParamsA, CodeParamsB, CodeParamsC]
MODELS = ("A", "B", "C")


@dataclass(frozen=True)
class Codec:
    model: str
    params: Params

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def t(self) -> int:
        return self.params.t

    @property
    def m(self) -> int:
        """Error threshold applied to patterns; only code A relies on one."""
        return self.params.m if self.model == "A" else 0

    @property
    def length(self) -> int:
        return self.params.length

    def descriptor(self) -> dict:
        return self.params.descriptor()

    def encode(self, perm: Sequence[int]) -> tuple[int, ...]:
        return _ENCODERS[self.model](perm, self.params)

    def decode(self, word: Sequence[int]) -> tuple[int, ...]:
        return _DECODERS[self.model](word, self.params)


_ENCODERS = {"A": encode_a, "B": encode_b, "C": encode_c}
_DECODERS = {"A": decode_a, "B": decode_b, "C": decode_c}


def make_codec(model: str, n: int, t: int, m: Optional[int] = None) -> Codec:
    """Build a codec; for model A a missing ``m`` means the least valid threshold."""
    model = model.upper()
    if model == "A":
        params = CodeParamsA.smallest_threshold(n, t) if m is None else CodeParamsA(n, t, m)
    elif model == "B":
        params = CodeParamsB(n, t)
    elif model == "C":
        params = CodeParamsC(n, t)
    else:
        raise ParamsError(f"unknown model {model!r}")
    return Codec(model, params)


def codec_from_descriptor(d: dict) -> Codec:
    return make_codec(d["model"], d["n"], d["t"], d.get("m"))


def sample_permutation(n: int, seed: int, index: int) -> tuple[int, ...]:
    """The ``index``-th seeded permutation; independent of how many others are drawn."""
    rng = np.random.default_rng([seed, index])
    return tuple(int(v) + 1 for v in rng.permutation(n))
