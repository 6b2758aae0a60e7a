"""Injection of the three stuck-at error models into permutations.

Model A: chosen symbols read one lower than written.
Model B: every symbol whose value lies in ``j..j+t1-1`` reads as ``j``.
Model C: one symbol drops by ``t1`` and, since only ranks are observed, every
larger symbol drops by one.

In all models symbols with value ``<= m`` are never disturbed.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass
from typing import Iterator, Optional, Sequence, Union

Word = tuple[int, ...]


@dataclass(frozen=True)
class PatternA:
    positions: tuple[int, ...] = ()
    m: int = 0
    seed: Optional[int] = None
    model = "A"


@dataclass(frozen=True)
class PatternB:
    j: int
    t1: int
    m: int = 0
    seed: Optional[int] = None
    model = "B"


@dataclass(frozen=True)
class PatternC:
    i1: int
    t1: int
    m: int = 0
    seed: Optional[int] = None
    model = "C"


Pattern = Union[PatternA, PatternB, PatternC]


def pattern_to_dict(pattern: Pattern) -> dict:
    d = {"model": pattern.model, **asdict(pattern)}
    if "positions" in d:
        d["positions"] = list(d["positions"])
    if d["seed"] is None:
        del d["seed"]
    return d


def pattern_from_dict(d: dict) -> Pattern:
    d = dict(d)
    model = d.pop("model")
    if model == "A":
        return PatternA(tuple(d.get("positions", ())), d.get("m", 0), d.get("seed"))
    if model == "B":
        return PatternB(d["j"], d["t1"], d.get("m", 0), d.get("seed"))
    if model == "C":
        return PatternC(d["i1"], d["t1"], d.get("m", 0), d.get("seed"))
    raise ValueError(f"unknown model {model!r}")


def pattern_to_json(pattern: Pattern) -> str:
    return json.dumps(pattern_to_dict(pattern), separators=(",", ":"))


def inject_a(perm: Sequence[int], pattern: PatternA) -> Word:
    out = list(perm)
    if len(set(pattern.positions)) != len(pattern.positions):
        raise ValueError("repeated position in pattern")
    for p in pattern.positions:
        if not 1 <= p <= len(out):
            raise ValueError(f"position {p} out of range 1..{len(out)}")
        if out[p - 1] <= max(pattern.m, 1):
            raise ValueError(f"symbol at position {p} has value {out[p - 1]}, cannot drop (m={pattern.m})")
        out[p - 1] -= 1
    return tuple(out)


def inject_b(perm: Sequence[int], pattern: PatternB) -> Word:
    j, t1 = pattern.j, pattern.t1
    if t1 < 1 or j < 1 or j + t1 - 1 > len(perm):
        raise ValueError(f"burst j={j}, t1={t1} invalid for length {len(perm)}")
    top = j + t1 - 1
    return tuple(j if j <= v <= top and v > pattern.m else v for v in perm)


def inject_c(perm: Sequence[int], pattern: PatternC) -> Word:
    i1, t1 = pattern.i1, pattern.t1
    if not 1 <= i1 <= len(perm):
        raise ValueError(f"position {i1} out of range 1..{len(perm)}")
    stuck = perm[i1 - 1]
    if stuck <= pattern.m:
        raise ValueError(f"symbol at position {i1} has value {stuck} <= m={pattern.m}")
    if t1 < 1 or stuck - t1 < 1:
        raise ValueError(f"drop t1={t1} invalid for value {stuck}")
    return tuple(
        stuck - t1 if p == i1 else (v - 1 if v > stuck else v)
        for p, v in enumerate(perm, start=1)
    )


def inject(perm: Sequence[int], pattern: Pattern) -> Word:
    if isinstance(pattern, PatternA):
        return inject_a(perm, pattern)
    if isinstance(pattern, PatternB):
        return inject_b(perm, pattern)
    return inject_c(perm, pattern)


def enumerate_patterns(model: str, perm: Sequence[int], t: int, m: int = 0,
                       min_errors: int = 0) -> Iterator[Pattern]:
    """Every admissible pattern of ``model`` on ``perm`` with at most ``t`` errors.

    For model A that is every set of at least ``min_errors`` and at most ``t``
    positions whose symbols exceed ``m`` (and 1, which has nowhere to drop).
    """
    n = len(perm)
    if model == "A":
        eligible = [p for p in range(1, n + 1) if perm[p - 1] > max(m, 1)]
        for size in range(min_errors, t + 1):
            for combo in itertools.combinations(eligible, size):
                yield PatternA(combo, m)
    elif model == "B":
        for t1 in range(max(1, min_errors), t + 1):
            for j in range(1, n - t1 + 2):
                if j + t1 - 1 > m:
                    yield PatternB(j, t1, m)
    elif model == "C":
        for i1 in range(1, n + 1):
            v = perm[i1 - 1]
            if v > m:
                for t1 in range(1, min(t, v - 1) + 1):
                    yield PatternC(i1, t1, m)
    else:
        raise ValueError(f"unknown model {model!r}")


def random_pattern(model: str, perm: Sequence[int], t: int, m: int = 0,
                   seed: Optional[int] = None) -> Pattern:
    """Draw one admissible pattern uniformly at random.

    Model A draws exactly ``min(t, eligible)`` positions.  Raises ValueError
    when no admissible pattern exists.
    """
    rng = random.Random(seed)
    if model == "A":
        eligible = [p for p in range(1, len(perm) + 1) if perm[p - 1] > max(m, 1)]
        if t > len(eligible):
            raise ValueError(f"only {len(eligible)} symbols exceed m={m}, need {t}")
        return PatternA(tuple(sorted(rng.sample(eligible, t))), m, seed)
    choices = list(enumerate_patterns(model, perm, t, m, min_errors=1))
    if not choices:
        raise ValueError(f"no admissible model-{model} pattern for t={t}, m={m}")
    pick = rng.choice(choices)
    return type(pick)(**{**asdict(pick), "seed": seed})
