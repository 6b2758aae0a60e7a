"""Code for one burst of at most ``t`` consecutive values stuck at the lowest (model B).

Data values are split into blocks of ``2t`` consecutive ranks twice, the
second split shifted by ``t``.  A burst leaves its unresolved ranks inside a
single block of at least one split, so the symbol-wise mod-``2t`` sum of the
block rankings of each split is enough to refill it.  Both sums are written
as ``t'`` base-``n`` digits plus a mod-``n`` checksum digit; each digit is the
number of data symbols in front of a dedicated redundancy value.  Redundancy
values are spaced ``t+1`` apart so a burst reaches at most one of them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import factorial, log2
from typing import Optional, Sequence

from .channel import enumerate_patterns, inject_b
from .code_a import from_digits, to_digits
from .errors import DecodeError, ParamsError
from .perm import check_permutation, is_permutation

Word = tuple[int, ...]


def redundancy_length(n: int, t: int) -> int:
    """Smallest t' with ``n**t' >= (2t)**(4t)``."""
    t_prime = 0
    while n ** t_prime < (2 * t) ** (4 * t):
        t_prime += 1
    return t_prime


@dataclass(frozen=True)
class CodeParamsB:
    n: int
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise ParamsError("t must be at least 1")
        for name, ok in self.constraints().items():
            if not ok:
                raise ParamsError(f"constraint violated: {name}")

    def constraints(self) -> dict[str, bool]:
        n, t = self.n, self.t
        tp = redundancy_length(n, t) if n >= 2 else 0
        return {
            "n >= 2t(t+1)": n >= 2 * t * (t + 1),
            "redundancy values positive": n + tp + 1 - (t + 1) * tp >= 1,
        }

    @property
    def t_prime(self) -> int:
        return redundancy_length(self.n, self.t)

    @property
    def length(self) -> int:
        return self.n + self.t_prime + 1

    @cached_property
    def redundancy_values(self) -> Word:
        """Value carrying digit ``i`` (1-based), the last one being the checksum."""
        tp, t = self.t_prime, self.t
        base = self.length - (t + 1) * (tp + 1)
        return tuple(base + (t + 1) * i for i in range(1, tp + 2))

    @cached_property
    def data_values(self) -> Word:
        skip = set(self.redundancy_values)
        return tuple(v for v in range(1, self.length + 1) if v not in skip)

    @cached_property
    def rank_of(self) -> dict[int, int]:
        return {v: k for k, v in enumerate(self.data_values, start=1)}

    @property
    def sum_range(self) -> int:
        return (2 * self.t) ** (4 * self.t)

    def descriptor(self) -> dict:
        return {"model": "B", "n": self.n, "t": self.t, "t_prime": self.t_prime}

    def lower_bound_ok(self) -> bool:
        return (self.t_prime + 1) * log2(self.n) >= log2(factorial(self.t))


def _blocks(n: int, t: int, shifted: bool) -> list[tuple[int, int]]:
    """Inclusive rank ranges of the blocks of one split."""
    start = t + 1 if shifted else 1
    return [(lo, min(lo + 2 * t - 1, n)) for lo in range(start, n + 1, 2 * t)]


def _block_of(rank: int, n: int, t: int, shifted: bool) -> Optional[int]:
    offset = rank - (t + 1 if shifted else 1)
    if offset < 0:
        return None
    return offset // (2 * t)


def _rankings(ranks: Sequence[int], n: int, t: int, shifted: bool) -> list[Word]:
    """Block rankings of a sequence of distinct ranks given in position order."""
    blocks = _blocks(n, t, shifted)
    found: list[list[int]] = [[] for _ in blocks]
    for r in ranks:
        b = _block_of(r, n, t, shifted)
        if b is not None:
            found[b].append(r - blocks[b][0] + 1)
    return [tuple(f) + (0,) * (2 * t - len(f)) for f in found]


def block_rankings(word: Sequence[int], t: int,
                   values: Optional[Sequence[int]] = None) -> tuple[list[Word], list[Word]]:
    """Block rankings of the unshifted and the shifted split.

    ``values`` lists the data alphabet in increasing order (default ``1..n``);
    its ``k``-th entry plays the role of rank ``k``.  Symbols outside it are
    ignored, and so are values absent from ``word`` (their slot reads 0).
    """
    values = tuple(range(1, len(word) + 1)) if values is None else tuple(values)
    rank_of = {v: k for k, v in enumerate(values, start=1)}
    ranks = [rank_of[v] for v in word if v in rank_of]
    n = len(values)
    return _rankings(ranks, n, t, False), _rankings(ranks, n, t, True)


def ranking_sums(rankings: tuple[list[Word], list[Word]], t: int) -> tuple[Word, Word]:
    mod = 2 * t
    return tuple(
        tuple(sum(col) % mod for col in zip(*side)) if side else (0,) * mod
        for side in rankings
    )


def declare_erasures(word: Sequence[int], t: int,
                     values: Optional[Sequence[int]] = None) -> tuple[list[int], list[int]]:
    """0-based indices of the blocks in each split holding a value missing from ``word``.

    The decoder additionally treats the repeated value as unresolved, since
    its true position is ambiguous.
    """
    values = tuple(range(1, len(word) + 1)) if values is None else tuple(values)
    n = len(values)
    present = set(word)
    ranks = [k for k, v in enumerate(values, start=1) if v not in present]
    out = []
    for shifted in (False, True):
        flagged = {_block_of(r, n, t, shifted) for r in ranks}
        flagged.discard(None)
        out.append(sorted(flagged))
    return out[0], out[1]


def _place(data: Sequence[int], digits: Sequence[int], labels: Sequence[int]) -> Word:
    slots: dict[int, list[int]] = {}
    for label, r in zip(labels, digits):
        slots.setdefault(r, []).append(label)
    out: list[int] = []
    for k in range(len(data) + 1):
        out.extend(slots.get(k, ()))
        if k < len(data):
            out.append(data[k])
    return tuple(out)


def encode_b(perm: Sequence[int], params: CodeParamsB) -> Word:
    sigma = check_permutation(perm)
    if len(sigma) != params.n:
        raise ValueError(f"expected length {params.n}, got {len(sigma)}")
    t, n = params.t, params.n
    r1, r2 = ranking_sums((_rankings(sigma, n, t, False), _rankings(sigma, n, t, True)), t)
    digits = to_digits(from_digits(r1 + r2, 2 * t), n, params.t_prime)
    digits += ((-sum(digits)) % n,)
    data = [params.data_values[s - 1] for s in sigma]
    return _place(data, digits, params.redundancy_values)


def _refill(data: Sequence[int], burst_value: Optional[int], unknown: list[int],
            sums: tuple[Word, Word], params: CodeParamsB) -> Word:
    """Ranks of the data symbols, filling those that read ``burst_value``.

    ``unknown`` holds the sorted ranks the burst made unreadable; their
    positions are the data symbols reading ``burst_value``.
    """
    n, t, mod = params.n, params.t, 2 * params.t
    rank_of = params.rank_of
    slots = [k for k, v in enumerate(data) if v == burst_value] if unknown else []
    if len(slots) != len(unknown):
        raise DecodeError("inconsistent", "stuck symbols and unresolved values disagree")
    ranks: list[Optional[int]] = [rank_of.get(v) for v in data]
    for k in slots:
        ranks[k] = None
    if any(r is None for k, r in enumerate(ranks) if k not in slots):
        raise DecodeError("inconsistent", "data symbol outside the data alphabet")

    if len(slots) == 1:
        ranks[slots[0]] = unknown[0]
    elif slots:
        lo, hi = unknown[0], unknown[-1]
        for shifted, total in zip((False, True), sums):
            b = _block_of(lo, n, t, shifted)
            if b is not None and b == _block_of(hi, n, t, shifted):
                break
        else:
            raise DecodeError("capacity", "burst spans blocks of both splits")
        known = [r for r in ranks if r is not None]
        others = [rk for i, rk in enumerate(_rankings(known, n, t, shifted)) if i != b]
        start, stop = _blocks(n, t, shifted)[b]
        size = stop - start + 1
        filled = [(total[e] - sum(rk[e] for rk in others)) % mod for e in range(mod)]
        if any(filled[size:]):
            raise DecodeError("inconsistent", "padding of the refilled block is not zero")
        filled = [f or mod for f in filled[:size]]
        members = [k for k, r in enumerate(ranks) if r is None or start <= r <= stop]
        if sorted(filled) != list(range(1, size + 1)) or len(members) != size:
            raise DecodeError("inconsistent", "refilled block is not a ranking")
        for k, rel in zip(members, filled):
            r = start + rel - 1
            if ranks[k] is None:
                ranks[k] = r
            elif ranks[k] != r:
                raise DecodeError("inconsistent", "refilled block contradicts known ranks")
    if not is_permutation(ranks):
        raise DecodeError("inconsistent", "repaired data is not a permutation")
    return tuple(ranks)


def _is_burst_of(word: Word, codeword: Word, t: int) -> bool:
    if word == codeword:
        return True
    return any(inject_b(codeword, p) == word
               for p in enumerate_patterns("B", codeword, t, 0, min_errors=2))


def decode_b(word: Sequence[int], params: CodeParamsB) -> Word:
    word = tuple(word)
    length, n, t, tp = params.length, params.n, params.t, params.t_prime
    if len(word) != length:
        raise DecodeError("malformed", f"expected length {length}, got {len(word)}")
    counts = Counter(word)
    if any(not 1 <= v <= length for v in counts):
        raise DecodeError("malformed", f"values must lie in 1..{length}")
    repeated = [v for v, c in counts.items() if c > 1]
    if len(repeated) > 1:
        raise DecodeError("capacity", "more than one burst")
    missing = [v for v in range(1, length + 1) if v not in counts]
    burst = repeated[0] if repeated else None
    originals = sorted(missing + repeated)
    if originals and (originals[-1] - originals[0] >= t or len(missing) != counts[burst] - 1):
        raise DecodeError("capacity", "stuck values do not form one burst of at most t")

    red_values = params.redundancy_values
    hit = [i for i, r in enumerate(red_values) if r in originals]
    where = {v: p for p, v in enumerate(word)}
    if hit:
        candidates = [p for p, v in enumerate(word) if v == burst]
    else:
        candidates = [None]

    unknown = sorted(params.rank_of[v] for v in originals if v in params.rank_of)
    solutions = []
    for cand in candidates:
        red_pos = [cand if i in hit else where[r] for i, r in enumerate(red_values)]
        is_red = [False] * length
        for p in red_pos:
            is_red[p] = True
        data = [v for p, v in enumerate(word) if not is_red[p]]
        prefix = [0] * (length + 1)
        for p in range(length):
            prefix[p + 1] = prefix[p] + (not is_red[p])
        digits = [prefix[p] for p in red_pos]
        if any(d >= n for d in digits) or sum(digits) % n:
            continue
        x = from_digits(digits[:tp], n)
        if x >= params.sum_range:
            continue
        flat = to_digits(x, 2 * t, 4 * t)
        try:
            sigma = _refill(data, burst, unknown, (flat[: 2 * t], flat[2 * t:]), params)
        except DecodeError:
            continue
        if sigma not in solutions:
            solutions.append(sigma)

    if len(solutions) > 1:
        solutions = [s for s in solutions if _is_burst_of(word, encode_b(s, params), t)]
    if len(solutions) != 1:
        raise DecodeError("inconsistent" if not solutions else "capacity",
                          f"{len(solutions)} consistent decodings")
    return solutions[0]
