"""Code for a single symbol stuck up to ``t`` values low under rank readout (model C).

The decoder works on the inverse word: a stuck symbol turns into one unknown
entry plus one deleted entry a short distance to the right.  Four parity
checks over the ascent vector and the Lehmer vector of ``sigma^{-1}`` pick
the true inverse among the few candidate repairs.  The parities are packed
into ``t'`` distinct digits that become the positions of values ``n+1..n+t'``,
and a final value ``n+t'+1`` is placed so that the positions of all
redundancy values sum to 0 mod ``n+1``.  That sum tells the decoder whether
the error hit redundancy or data.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import log2
from typing import NamedTuple, Optional, Sequence

from .channel import enumerate_patterns, inject_c
from .errors import DecodeError, ParamsError
from .perm import (
    UNKNOWN,
    ascent_vector,
    check_permutation,
    count_arrangements,
    factorial_pack,
    factorial_unpack,
    inverse,
    is_permutation,
    lehmer_encode,
)

Word = tuple[int, ...]

#: Digits are shifted by this much so redundancy never sits in the first slots.
OFFSET = 5


class ParityChecks(NamedTuple):
    p1: int
    p2: int
    p3: int
    p4: int


@dataclass(frozen=True)
class CandidateReconstruction:
    choice: int     # position written into the unknown entry
    offset: int     # the other position goes back in at entry a + offset
    inverse: Word


def parity_moduli(t: int) -> tuple[int, int, int, int]:
    return 2, t + 2, t * t, 2 * t + 1


def parity_space(t: int) -> int:
    m1, m2, m3, m4 = parity_moduli(t)
    return m1 * m2 * m3 * m4


def redundancy_length(n: int, t: int) -> int:
    """Smallest t' with ``(n-5)(n-6)..(n-5-t'+1) >= 2(t+2)(2t+1)t^2``."""
    need, s = parity_space(t), n - OFFSET
    t_prime = 0
    while count_arrangements(s, t_prime) < need:
        t_prime += 1
        if t_prime > s:
            raise ParamsError(f"alphabet {s} too small for {need} parity values")
    return t_prime


@dataclass(frozen=True)
class CodeParamsC:
    n: int
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise ParamsError("t must be at least 1")
        for name, ok in self.constraints().items():
            if not ok:
                raise ParamsError(f"constraint violated: {name}")

    def constraints(self) -> dict[str, bool]:
        """What the construction needs: digits shifted past ``OFFSET`` stay within 6..n."""
        s = self.n - OFFSET
        ok = s >= 1 and count_arrangements(s, min(5, s)) >= parity_space(self.t)
        return {"t' <= 5": ok}

    def hypothesis_ok(self) -> bool:
        """The length condition n >= t+12 under which t' <= 5 is guaranteed."""
        return self.n >= self.t + 12

    @property
    def t_prime(self) -> int:
        return redundancy_length(self.n, self.t)

    @property
    def length(self) -> int:
        return self.n + self.t_prime + 1

    @property
    def alphabet(self) -> int:
        return self.n - OFFSET

    def descriptor(self) -> dict:
        return {"model": "C", "n": self.n, "t": self.t, "t_prime": self.t_prime}

    def lower_bound_ok(self) -> bool:
        return (self.t_prime + 1) * log2(self.n) >= log2(self.t)


def parity_checks(perm: Sequence[int], t: int) -> ParityChecks:
    """Parities of ``perm^{-1}``: weighted ascent sums and the Lehmer total."""
    if t < 1:
        raise ValueError("t must be at least 1")
    inv = inverse(check_permutation(perm))
    return _parities_of_inverse(inv, t)


def _parities_of_inverse(inv: Sequence[int], t: int) -> ParityChecks:
    m1, m2, m3, m4 = parity_moduli(t)
    b = ascent_vector(inv)
    ones = [j for j, bit in enumerate(b, start=1) if bit]
    return ParityChecks(
        len(ones) % m1,
        sum(ones) % m2,
        sum(j * (j + 1) // 2 for j in ones) % m3,
        sum(lehmer_encode(inv)) % m4,
    )


def pack_parities(p: ParityChecks, t: int) -> int:
    _, m2, m3, m4 = parity_moduli(t)
    return ((p.p1 * m2 + p.p2) * m3 + p.p3) * m4 + p.p4


def unpack_parities(value: int, t: int) -> ParityChecks:
    m1, m2, m3, m4 = parity_moduli(t)
    value, p4 = divmod(value, m4)
    value, p3 = divmod(value, m3)
    p1, p2 = divmod(value, m2)
    if p1 >= m1:
        raise ValueError(f"packed parity value out of range for t={t}")
    return ParityChecks(p1, p2, p3, p4)


def candidate_reconstructions(word_inv: Sequence[Optional[int]], t: int,
                              positions: Optional[tuple[int, int]] = None) -> list[CandidateReconstruction]:
    """All inverse words a single stuck symbol could have come from.

    ``word_inv`` is the inverse of the corrupted word with one UNKNOWN entry
    ``a``; ``positions`` are the two positions reading ``a`` (recomputed from
    ``word_inv`` when omitted: they are the positions missing from it).  For
    each choice ``c`` of the two and each drop ``x`` in ``1..t``, entry ``a``
    becomes ``c`` and the other position is inserted as entry ``a + x``.
    """
    inv = list(word_inv)
    unknown = [k for k, v in enumerate(inv) if v is UNKNOWN]
    if not unknown:
        return [CandidateReconstruction(0, 0, tuple(inv))]
    if len(unknown) > 1:
        raise ValueError("more than one unknown entry")
    a = unknown[0] + 1
    n = len(inv) + 1
    if positions is None:
        seen = set(inv)
        positions = tuple(p for p in range(1, n + 1) if p not in seen)
        if len(positions) != 2:
            raise ValueError("cannot infer the two repeated positions")
    out = []
    for c in positions:
        other = positions[1] if c == positions[0] else positions[0]
        fixed = inv[: a - 1] + [c] + inv[a:]
        for x in range(1, t + 1):
            if a + x > n:
                break
            cand = fixed[: a + x - 1] + [other] + fixed[a + x - 1:]
            out.append(CandidateReconstruction(c, x, tuple(cand)))
    return out


def checksum_position(perm: Sequence[int], n: int) -> int:
    """Smallest slot for value ``len(perm)+1`` making the redundancy positions sum to 0 mod n+1.

    Redundancy values are those above ``n``.  Slot ``q`` means the new value
    ends up at position ``q``; positions at or after ``q`` shift right.
    """
    red = [p for p, v in enumerate(perm, start=1) if v > n]
    base = sum(red)
    for q in range(1, len(perm) + 2):
        shifted = sum(1 for p in red if p >= q)
        if (base + shifted + q) % (n + 1) == 0:
            return q
    raise AssertionError("no checksum slot exists")  # excluded by the sweep argument


def encode_c(perm: Sequence[int], params: CodeParamsC) -> Word:
    sigma = check_permutation(perm)
    n, t, tp = params.n, params.t, params.t_prime
    if len(sigma) != n:
        raise ValueError(f"expected length {n}, got {len(sigma)}")
    digits = factorial_pack(pack_parities(parity_checks(sigma, t), t), params.alphabet, tp)
    slots = {r + OFFSET: n + i for i, r in enumerate(digits, start=1)}
    data = iter(sigma)
    body = [slots[p] if p in slots else next(data) for p in range(1, n + tp + 1)]
    q = checksum_position(body, n)
    return tuple(body[: q - 1] + [params.length] + body[q - 1:])


def _digits(word: Word, params: CodeParamsC, red_values: Sequence[int], checksum_pos: int) -> Word:
    """Read the digits back from where the redundancy values sit."""
    where = {v: p for p, v in enumerate(word, start=1)}
    out = []
    for v in red_values:
        p = where[v]
        out.append(p - (checksum_pos < p) - OFFSET)
    return tuple(out)


def _parities_from_digits(digits: Word, params: CodeParamsC) -> Optional[ParityChecks]:
    try:
        value = factorial_unpack(digits, params.alphabet)
    except ValueError:
        return None
    if value >= parity_space(params.t):
        return None
    return unpack_parities(value, params.t)


def _repair_data(data: Word, target: ParityChecks, t: int) -> list[Word]:
    """Permutations whose parities equal ``target`` and that explain ``data``."""
    counts = Counter(data)
    repeated = [v for v, c in counts.items() if c > 1]
    if not repeated:
        return [data] if is_permutation(data) and parity_checks(data, t) == target else []
    a = repeated[0]
    positions = tuple(p for p, v in enumerate(data, start=1) if v == a)
    out = []
    for cand in candidate_reconstructions(inverse(data), t, positions):
        if _parities_of_inverse(cand.inverse, t) == target:
            out.append(inverse(cand.inverse))
    return out


def decode_c(word: Sequence[int], params: CodeParamsC) -> Word:
    word = tuple(word)
    n, t, tp, length = params.n, params.t, params.t_prime, params.length
    if len(word) != length:
        raise DecodeError("malformed", f"expected length {length}, got {len(word)}")
    counts = Counter(word)
    if any(not 1 <= v <= length for v in counts):
        raise DecodeError("malformed", f"values must lie in 1..{length}")
    repeated = [v for v, c in counts.items() if c > 1]
    if not repeated:
        sigma = tuple(v for v in word if v <= n)
        if not is_permutation(word) or encode_c(sigma, params) != word:
            raise DecodeError("inconsistent", "error-free word is not a codeword")
        return sigma
    if len(repeated) > 1 or counts[repeated[0]] > 2:
        raise DecodeError("capacity", "more than one stuck symbol")
    a = repeated[0]
    i, i2 = (p for p, v in enumerate(word, start=1) if v == a)
    if max(counts) != length - 1:
        raise DecodeError("malformed", "a single stuck symbol leaves exactly the top value missing")

    if a > n:
        # Only redundancy moved; data values are untouched.
        return tuple(v for v in word if v <= n)

    where = {v: p for p, v in enumerate(word, start=1) if v != a}
    r = -sum(where[n + j] for j in range(1, tp + 1)) % (n + 1)
    hits = [h for h in (i, i2) if h % (n + 1) == r]

    if not hits:
        # The error is in the data; every redundancy value reads one lower.
        if a == n:
            raise DecodeError("inconsistent", "data error cannot produce value n twice")
        red = tuple(range(n, n + tp))
        digits = _digits(word, params, red, where[n + tp])
        target = _parities_from_digits(digits, params)
        if target is None:
            raise DecodeError("inconsistent", "redundancy digits do not encode parities")
        found = _repair_data(tuple(v for v in word if v < n), target, t)
        if len(found) != 1:
            raise DecodeError("inconsistent" if not found else "capacity",
                              f"{len(found)} parity-consistent repairs")
        return found[0]

    if len(hits) == 1:
        # A redundancy symbol got stuck at position hits[0]; the data is intact.
        return tuple(v for p, v in enumerate(word, start=1) if v <= n and p != hits[0])

    # Both copies sit on the checksum residue: the checksum symbol itself is
    # stuck, values n+1..n+t' are intact, and parities tell which copy it is.
    found = []
    for h in hits:
        sigma = tuple(v for p, v in enumerate(word, start=1) if v <= n and p != h)
        target = _parities_from_digits(_digits(word, params, range(n + 1, n + tp + 1), h), params)
        if target is not None and is_permutation(sigma) and parity_checks(sigma, t) == target:
            found.append(sigma)
    if len(found) > 1:
        found = [s for s in found if _is_error_of(word, encode_c(s, params), t)]
    if len(found) != 1:
        raise DecodeError("inconsistent" if not found else "capacity",
                          f"{len(found)} consistent checksum placements")
    return found[0]


def _is_error_of(word: Word, codeword: Word, t: int) -> bool:
    return any(inject_c(codeword, p) == word for p in enumerate_patterns("C", codeword, t))
