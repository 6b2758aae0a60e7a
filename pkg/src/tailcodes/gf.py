"""Arithmetic in GF(2^b) and Reed-Solomon erasure coding on top of it.

Two erasure codes live here:

* :func:`rs_redundancy` / :func:`rs_erasure_decode` form a systematic
  evaluation-style Reed-Solomon code over field symbols.
* :class:`BinaryErasureCode` protects a bit vector through the parity-check
  syndromes of a Reed-Solomon code whose code locators are the bit positions.
  Because the message is binary, even-index syndromes are squares of lower
  ones and need not be stored, which is what keeps the stored redundancy small
  enough to fit into a handful of permutation symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import DecodeError, ParamsError

# Primitive polynomials, indexed by degree.
PRIMITIVE_POLYS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

#: Marker for an erased symbol in :func:`rs_erasure_decode`.
ERASED = None


class GF2m:
    """The field GF(2^bits) with log/antilog tables."""

    def __init__(self, bits: int):
        if bits not in PRIMITIVE_POLYS:
            raise ParamsError(f"unsupported field size 2^{bits}")
        self.bits = bits
        self.q = 1 << bits
        self.poly = PRIMITIVE_POLYS[bits]
        self.exp = [0] * (2 * self.q)
        self.log = [0] * self.q
        x = 1
        for i in range(self.q - 1):
            self.exp[i] = x
            self.log[x] = i
            x <<= 1
            if x & self.q:
                x ^= self.poly
        for i in range(self.q - 1, 2 * self.q):
            self.exp[i] = self.exp[i - (self.q - 1)]

    def __repr__(self):
        return f"GF2m({self.bits})"

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(self.q - 1) - self.log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def solve(self, matrix: list[list[int]], rhs: list[int]) -> list[int]:
        """Solve a square non-singular linear system by Gauss-Jordan elimination."""
        size = len(rhs)
        rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
        for col in range(size):
            pivot = next((r for r in range(col, size) if rows[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("singular system")
            rows[col], rows[pivot] = rows[pivot], rows[col]
            scale = self.inv(rows[col][col])
            rows[col] = [self.mul(scale, v) for v in rows[col]]
            for r in range(size):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [v ^ self.mul(f, p) for v, p in zip(rows[r], rows[col])]
        return [row[size] for row in rows]


@lru_cache(maxsize=None)
def field(bits: int) -> GF2m:
    return GF2m(bits)


def bits_for(size: int) -> int:
    """Smallest b with 2^b >= size."""
    return max(1, (size - 1).bit_length())


@dataclass(frozen=True)
class RSConfig:
    """Systematic RS code with ``k`` message and ``t`` redundancy symbols over GF(q).

    Codeword symbol ``i`` (0-based) is the evaluation of the message
    polynomial at the field element ``i``; the first ``k`` evaluations are the
    message itself.
    """

    q: int
    k: int
    t: int

    def __post_init__(self):
        if self.q < 2 or self.q & (self.q - 1):
            raise ParamsError(f"field size {self.q} is not a power of two")
        if self.k < 1 or self.t < 0:
            raise ParamsError("need k >= 1 and t >= 0")
        if self.q < self.k + self.t + 1:
            raise ParamsError(f"q={self.q} < k+t+1={self.k + self.t + 1}")

    @property
    def gf(self) -> GF2m:
        return field(self.q.bit_length() - 1)


def _interpolate_at(gf: GF2m, xs: Sequence[int], ys: Sequence[int], x: int) -> int:
    """Evaluate at ``x`` the Lagrange interpolant through ``(xs, ys)``."""
    total = 0
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        num, den = 1, 1
        for j, xj in enumerate(xs):
            if j != i:
                num = gf.mul(num, x ^ xj)
                den = gf.mul(den, xi ^ xj)
        total ^= gf.mul(yi, gf.div(num, den))
    return total


def rs_redundancy(message: Sequence[int], cfg: RSConfig) -> tuple[int, ...]:
    if len(message) != cfg.k:
        raise ValueError(f"expected {cfg.k} message symbols, got {len(message)}")
    if any(not 0 <= m < cfg.q for m in message):
        raise ValueError(f"message symbols must lie in 0..{cfg.q - 1}")
    gf = cfg.gf
    xs = list(range(cfg.k))
    return tuple(_interpolate_at(gf, xs, message, x) for x in range(cfg.k, cfg.k + cfg.t))


def rs_erasure_decode(word: Sequence[Optional[int]], cfg: RSConfig) -> tuple[int, ...]:
    """Recover the message from a codeword with at most ``t`` :data:`ERASED` symbols."""
    n = cfg.k + cfg.t
    if len(word) != n:
        raise ValueError(f"expected {n} symbols, got {len(word)}")
    known = [(x, y) for x, y in enumerate(word) if y is not ERASED]
    if n - len(known) > cfg.t:
        raise DecodeError("capacity", f"{n - len(known)} erasures exceed t={cfg.t}")
    if all(y is not ERASED for y in word[: cfg.k]):
        return tuple(word[: cfg.k])
    xs = [x for x, _ in known[: cfg.k]]
    ys = [y for _, y in known[: cfg.k]]
    return tuple(_interpolate_at(cfg.gf, xs, ys, x) for x in range(cfg.k))


class BinaryErasureCode:
    """Correct up to ``t`` erasures at known positions of a length-``length`` bit vector.

    Bit ``i`` gets the code locator ``i + 1`` in GF(2^b) with ``2^b > length``.
    The redundancy is the syndrome vector ``S_j = sum_i x_i * loc_i^j`` for
    ``j < t``; ``S_0`` is a single parity bit and ``S_2j = S_j^2``, so only the
    parity bit and the odd-index syndromes are stored.  When storing the bits
    outright is cheaper, that is done instead.  The redundancy is exposed as a
    single integer in ``range(self.size)``.
    """

    def __init__(self, length: int, t: int):
        if length < 0 or t < 0:
            raise ParamsError("length and t must be non-negative")
        self.length = length
        self.t = t
        self.field_bits = bits_for(length + 1)
        self.gf = field(self.field_bits)
        self.odd = list(range(1, t, 2))
        syndrome_bits = (1 + len(self.odd) * self.field_bits) if t else 0
        self.raw = length <= syndrome_bits
        self.redundancy_bits = length if self.raw else syndrome_bits
        self.size = 1 << self.redundancy_bits

    def __repr__(self):
        return f"BinaryErasureCode(length={self.length}, t={self.t})"

    def _syndromes(self, bits: Sequence[int], upto: int) -> list[int]:
        gf = self.gf
        out = [0] * upto
        for i, bit in enumerate(bits):
            if bit:
                loc = i + 1
                for j in range(upto):
                    out[j] ^= gf.pow(loc, j)
        return out

    def redundancy(self, bits: Sequence[int]) -> int:
        if len(bits) != self.length:
            raise ValueError(f"expected {self.length} bits, got {len(bits)}")
        if self.raw:
            return _bits_to_int(bits)
        if not self.t:
            return 0
        synd = self._syndromes(bits, self.t)
        value = synd[0] & 1
        for j in self.odd:
            value = (value << self.field_bits) | synd[j]
        return value

    def _expand(self, value: int) -> list[int]:
        """Full syndrome list S_0..S_{t-1} from the stored integer."""
        stored = {}
        for j in reversed(self.odd):
            stored[j] = value & ((1 << self.field_bits) - 1)
            value >>= self.field_bits
        stored[0] = value & 1
        synd = [0] * self.t
        for j in range(self.t):
            if j in stored:
                synd[j] = stored[j]
            else:
                half = synd[j // 2]
                synd[j] = self.gf.mul(half, half)
        return synd

    def recover(self, bits: Sequence[int], erased: Sequence[int], value: int) -> tuple[int, ...]:
        """Fill the bits at 0-based indices ``erased`` using redundancy ``value``."""
        erased = sorted(set(erased))
        if len(erased) > self.t:
            raise DecodeError("capacity", f"{len(erased)} erasures exceed t={self.t}")
        if not 0 <= value < self.size:
            raise DecodeError("inconsistent", f"redundancy {value} out of range")
        if self.raw:
            truth = _int_to_bits(value, self.length)
            if any(truth[i] != b for i, b in enumerate(bits) if i not in erased):
                raise DecodeError("inconsistent", "stored bits disagree with unerased bits")
            return truth
        out = list(bits)
        if not erased:
            if self.t and self.redundancy(out) != value:
                raise DecodeError("inconsistent", "syndrome mismatch")
            return tuple(out)
        for i in erased:
            out[i] = 0
        target = [a ^ b for a, b in zip(self._expand(value), self._syndromes(out, self.t))]
        gf = self.gf
        size = len(erased)
        matrix = [[gf.pow(i + 1, j) for i in erased] for j in range(size)]
        solution = gf.solve(matrix, target[:size])
        if any(v not in (0, 1) for v in solution):
            raise DecodeError("inconsistent", "erasure solution is not binary")
        for i, v in zip(erased, solution):
            out[i] = v
        if self._syndromes(out, self.t) != self._expand(value):
            raise DecodeError("inconsistent", "syndrome mismatch after erasure fill")
        return tuple(out)


def _bits_to_int(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | (b & 1)
    return value


def _int_to_bits(value: int, length: int) -> tuple[int, ...]:
    return tuple((value >> (length - 1 - i)) & 1 for i in range(length))
