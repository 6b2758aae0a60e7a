"""Permutation machinery shared by the three stuck-at codes.

Everything here is 1-based: a permutation of length ``n`` is a tuple holding
each of ``1..n`` exactly once, and positions are counted from 1.
"""

from __future__ import annotations

from collections import Counter
from math import perm as falling_factorial
from typing import Iterable, Optional, Sequence

#: Marker stored in an inverse word for a value that occurs more than once.
UNKNOWN = None

Word = tuple[int, ...]


def is_permutation(word: Sequence[int]) -> bool:
    return len(word) > 0 and sorted(word) == list(range(1, len(word) + 1))


def check_permutation(word: Sequence[int]) -> Word:
    """Return ``word`` as a tuple, raising ValueError unless it is in S_n."""
    word = tuple(word)
    if not is_permutation(word):
        raise ValueError(f"not a permutation of 1..{len(word)}: {word!r}")
    return word


def lehmer_encode(word: Sequence[int]) -> Word:
    """Count, for each position, the earlier entries that are strictly larger.

    Works for any integer word, repeated values included.
    """
    word = tuple(word)
    if not word:
        raise ValueError("empty word")
    return tuple(
        sum(1 for earlier in word[:i] if earlier > value)
        for i, value in enumerate(word)
    )


def lehmer_decode(counts: Sequence[int]) -> Word:
    """Invert :func:`lehmer_encode` on the permutations of ``1..len(counts)``."""
    counts = tuple(counts)
    n = len(counts)
    for i, c in enumerate(counts):
        if not 0 <= c <= i:
            raise ValueError(f"Lehmer entry {c} at position {i + 1} out of range 0..{i}")
    remaining = list(range(1, n + 1))
    out = [0] * n
    # The last entry sees every other value before it, so it is pinned first.
    for i in range(n - 1, -1, -1):
        out[i] = remaining.pop(len(remaining) - 1 - counts[i])
    return tuple(out)


def inverse(word: Sequence[int], value_bound: Optional[int] = None) -> tuple[Optional[int], ...]:
    """Value-indexed positions of ``word``.

    Entry ``k`` of the result belongs to the ``k``-th smallest value present in
    ``word``; it holds that value's position, or :data:`UNKNOWN` when the value
    repeats.  Values of ``1..value_bound`` that never occur get no entry, so
    the result can be shorter than ``value_bound`` (see :func:`missing_values`).
    """
    word = tuple(word)
    if value_bound is not None and word and max(word) > value_bound:
        raise ValueError(f"value {max(word)} exceeds bound {value_bound}")
    positions: dict[int, Optional[int]] = {}
    for pos, value in enumerate(word, start=1):
        positions[value] = UNKNOWN if value in positions else pos
    return tuple(positions[v] for v in sorted(positions))


def missing_values(word: Sequence[int], value_bound: int) -> Word:
    present = set(word)
    return tuple(v for v in range(1, value_bound + 1) if v not in present)


def repeated_values(word: Sequence[int]) -> Word:
    return tuple(sorted(v for v, c in Counter(word).items() if c > 1))


def rank_word(values: Iterable[int]) -> Word:
    """Relabel distinct values by their rank (smallest becomes 1)."""
    values = tuple(values)
    order = {v: r for r, v in enumerate(sorted(values), start=1)}
    if len(order) != len(values):
        raise ValueError(f"values are not distinct: {values!r}")
    return tuple(order[v] for v in values)


def project(perm: Sequence[int], positions: Iterable[int]) -> Word:
    """Relative ranking of the entries of ``perm`` at ``positions``.

    Positions are 1-based and read in increasing order.
    """
    chosen = sorted(set(positions))
    if not chosen:
        raise ValueError("empty position set")
    if chosen[0] < 1 or chosen[-1] > len(perm):
        raise ValueError(f"positions out of range 1..{len(perm)}")
    return rank_word(perm[p - 1] for p in chosen)


def ascent_vector(word: Sequence[Optional[int]]) -> Word:
    """Bit ``i`` is 1 iff ``word[i] > word[i-1]``; the first bit is always 1."""
    word = tuple(word)
    if not word:
        raise ValueError("empty word")
    if any(v is UNKNOWN for v in word):
        raise ValueError("ascent vector undefined for a word with unknown entries")
    return (1,) + tuple(int(b > a) for a, b in zip(word, word[1:]))


def count_arrangements(s: int, t: int) -> int:
    """Number of ordered t-tuples of distinct symbols from an alphabet of size s."""
    return falling_factorial(s, t)


def factorial_pack(index: int, s: int, t: int) -> Word:
    """Map ``index`` to the ``index``-th (0-based, lexicographic) t-tuple of
    distinct symbols drawn from ``1..s``."""
    total = count_arrangements(s, t)
    if not 0 <= index < total:
        raise ValueError(f"index {index} outside 0..{total - 1}")
    unused = list(range(1, s + 1))
    out = []
    for i in range(t):
        block = count_arrangements(s - i - 1, t - i - 1)
        digit, index = divmod(index, block)
        out.append(unused.pop(digit))
    return tuple(out)


def factorial_unpack(symbols: Sequence[int], s: int) -> int:
    """Inverse of :func:`factorial_pack`."""
    t = len(symbols)
    if len(set(symbols)) != t or any(not 1 <= x <= s for x in symbols):
        raise ValueError(f"expected {t} distinct symbols from 1..{s}, got {tuple(symbols)!r}")
    unused = list(range(1, s + 1))
    index = 0
    for i, x in enumerate(symbols):
        digit = unused.index(x)
        unused.pop(digit)
        index += digit * count_arrangements(s - i - 1, t - i - 1)
    return index
