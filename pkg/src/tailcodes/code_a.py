"""Code for up to ``t`` symbols stuck one value low (model A).

The parity of every Lehmer entry is protected by an erasure code; the
redundancy is written as ``t'`` base-``n`` digits, and digit ``r_i`` is stored
as the number of data symbols preceding the small value ``i``.  Data symbols
carry ``sigma(i) + t'``.  Values ``1..t'`` sit below the error threshold ``m``
and are never disturbed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb, log2
from typing import Sequence

from .errors import DecodeError, ParamsError
from .gf import BinaryErasureCode
from .perm import check_permutation, is_permutation, lehmer_encode

Word = tuple[int, ...]


def redundancy_length(n: int, t: int, m: int) -> int:
    """Smallest t' with ``n**t' >= (n-m)**t``, i.e. ceil(t log(n-m) / log n)."""
    t_prime = 0
    while n ** t_prime < (n - m) ** t:
        t_prime += 1
    return t_prime


@dataclass(frozen=True)
class CodeParamsA:
    n: int
    t: int
    m: int

    def __post_init__(self):
        if self.n < 2:
            raise ParamsError("n must be at least 2")
        if self.t < 0:
            raise ParamsError("t must be non-negative")
        if not 0 <= self.m < self.n:
            raise ParamsError(f"m must lie in 0..{self.n - 1}")
        for name, ok in self.constraints().items():
            if not ok:
                raise ParamsError(f"constraint violated: {name}")

    @classmethod
    def smallest_threshold(cls, n: int, t: int) -> "CodeParamsA":
        """Parameters with the least m satisfying m >= t'+2."""
        for m in range(0, n):
            if m < redundancy_length(n, t, m) + 2:
                continue
            try:
                return cls(n, t, m)
            except ParamsError:
                continue
        raise ParamsError(f"no threshold m < {n} admits t={t}")

    def constraints(self) -> dict[str, bool]:
        tp = redundancy_length(self.n, self.t, self.m)
        erasure = BinaryErasureCode(self.n - max(self.m - tp - 1, 0), self.t)
        return {
            "m >= t'+2": self.m >= tp + 2,
            "redundancy fits in t' base-n digits": erasure.size <= self.n ** tp,
        }

    @property
    def t_prime(self) -> int:
        return redundancy_length(self.n, self.t, self.m)

    @property
    def length(self) -> int:
        return self.n + self.t_prime

    @property
    def data_threshold(self) -> int:
        """Lehmer parities are kept for data values above this.

        A stuck symbol sits above ``m`` in the codeword, so its unchanged
        partner sits at codeword value ``m`` or above, i.e. data value
        ``m - t'`` or above.
        """
        return max(self.m - self.t_prime - 1, 0)

    @cached_property
    def erasure_code(self) -> BinaryErasureCode:
        return BinaryErasureCode(self.n - self.data_threshold, self.t)

    def descriptor(self) -> dict:
        return {"model": "A", "n": self.n, "t": self.t, "m": self.m,
                "t_prime": self.t_prime, "field_bits": self.erasure_code.field_bits}

    def lower_bound_ok(self) -> bool:
        """Redundancy is at least the sphere-packing count of error locations."""
        need = comb(self.n - self.m - self.t - 1, self.t) if self.n - self.m - self.t - 1 >= 0 else 1
        return self.t_prime * log2(self.n) >= log2(max(need, 1))


def b_projection(perm: Sequence[int], m: int) -> Word:
    """Parities of the Lehmer entries at positions whose value exceeds ``m``."""
    lehmer = lehmer_encode(perm)
    return tuple(c % 2 for c, v in zip(lehmer, perm) if v > m)


def estimate_sigma_hat(word: Sequence[int], value_bound: int | None = None) -> Word:
    """Undo every stuck chain except its lowest link.

    A run of stuck values ``v+1..v+k`` reads as ``v, v+1, .., v+k-1``: ``v``
    repeats and ``v+k`` goes missing.  Each missing value is matched with the
    largest repeated value below it and the values strictly between are bumped
    back up, leaving one decrement per chain.
    """
    word = tuple(word)
    bound = len(word) if value_bound is None else value_bound
    counts = Counter(word)
    if any(not 1 <= v <= bound for v in counts):
        raise DecodeError("malformed", f"values must lie in 1..{bound}")
    if any(c > 2 for c in counts.values()):
        raise DecodeError("malformed", "a value occurs more than twice")
    repeated = sorted(v for v, c in counts.items() if c == 2)
    missing = [v for v in range(1, bound + 1) if v not in counts]
    if len(missing) != len(repeated):
        raise DecodeError("malformed", "missing and repeated values do not pair up")
    bump = set()
    used = set()
    for gap in missing:
        below = [v for v in repeated if v < gap]
        if not below or below[-1] in used:
            raise DecodeError("malformed", f"no stuck chain ends at missing value {gap}")
        used.add(below[-1])
        bump.update(range(below[-1] + 1, gap))
    return tuple(v + 1 if v in bump else v for v in word)


def insert_redundancy(data: Sequence[int], digits: Sequence[int]) -> Word:
    """Place value ``i`` right after the ``digits[i-1]``-th data symbol.

    Equal digits put their values side by side in increasing order.
    """
    slots: dict[int, list[int]] = {}
    for i, r in enumerate(digits, start=1):
        if not 0 <= r <= len(data):
            raise ValueError(f"digit {r} out of range 0..{len(data)}")
        slots.setdefault(r, []).append(i)
    out: list[int] = []
    for k in range(len(data) + 1):
        out.extend(slots.get(k, ()))
        if k < len(data):
            out.append(data[k])
    return tuple(out)


def to_digits(value: int, base: int, count: int) -> Word:
    """Most-significant-first base-``base`` digits of ``value``."""
    digits = []
    for _ in range(count):
        value, d = divmod(value, base)
        digits.append(d)
    if value:
        raise ValueError(f"value does not fit in {count} base-{base} digits")
    return tuple(reversed(digits))


def from_digits(digits: Sequence[int], base: int) -> int:
    value = 0
    for d in digits:
        value = value * base + d
    return value


def encode_a(perm: Sequence[int], params: CodeParamsA) -> Word:
    sigma = check_permutation(perm)
    if len(sigma) != params.n:
        raise ValueError(f"expected length {params.n}, got {len(sigma)}")
    tp = params.t_prime
    bits = b_projection(sigma, params.data_threshold)
    digits = to_digits(params.erasure_code.redundancy(bits), params.n, tp)
    return insert_redundancy([v + tp for v in sigma], digits)


def decode_a(word: Sequence[int], params: CodeParamsA) -> Word:
    tp, n = params.t_prime, params.n
    word = tuple(word)
    if len(word) != params.length:
        raise DecodeError("malformed", f"expected length {params.length}, got {len(word)}")
    hat = estimate_sigma_hat(word, params.length)

    digits = []
    for i in range(1, tp + 1):
        where = [p for p, v in enumerate(hat) if v == i]
        if len(where) != 1:
            raise DecodeError("inconsistent", f"redundancy value {i} is not unique")
        digits.append(sum(1 for v in hat[: where[0]] if v > tp))
    if any(d >= n for d in digits):
        raise DecodeError("inconsistent", "redundancy digit out of range")
    stored = from_digits(digits, n)

    data = [v - tp for v in hat if v > tp]
    th = params.data_threshold
    tracked = [p for p, v in enumerate(data) if v > th]
    index = {p: k for k, p in enumerate(tracked)}
    seen: dict[int, int] = {}
    pairs = []
    for p, v in enumerate(data):
        if v in seen:
            pairs.append((seen[v], p))
        else:
            seen[v] = p
    if len(pairs) > params.t:
        raise DecodeError("capacity", f"{len(pairs)} stuck symbols exceed t={params.t}")
    if any(later not in index for _, later in pairs):
        raise DecodeError("inconsistent", "stuck symbol below the error threshold")

    observed = b_projection(data, th)
    erased = [index[later] for _, later in pairs]
    truth = params.erasure_code.recover(observed, erased, stored)
    for earlier, later in pairs:
        # The later copy's Lehmer parity flips only if the earlier copy was the stuck one.
        if observed[index[later]] != truth[index[later]]:
            data[earlier] += 1
        else:
            data[later] += 1
    if not is_permutation(data):
        raise DecodeError("inconsistent", "repaired data is not a permutation")
    return tuple(data)
