import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tailcodes.channel import PatternB, enumerate_patterns, inject_b
from tailcodes.code_b import (
    CodeParamsB,
    block_rankings,
    declare_erasures,
    decode_b,
    encode_b,
    ranking_sums,
    redundancy_length,
)
from tailcodes.errors import DecodeError, ParamsError

import reference as ref

SIGMA15 = (9, 1, 4, 2, 5, 14, 10, 3, 6, 13, 11, 7, 12, 8, 15)


def brute_rankings(perm, t, start):
    """Relative order of each 2t-block of values, read left to right."""
    out = []
    for lo in range(start, len(perm) + 1, 2 * t):
        block = [v for v in perm if lo <= v < lo + 2 * t]
        ranked = [v - lo + 1 for v in block]
        out.append(tuple(ranked) + (0,) * (2 * t - len(ranked)))
    return out


class TestParams:
    def test_redundancy_values_of_running_example(self):
        p = CodeParamsB(15, 2)
        assert p.t_prime == 5
        assert p.redundancy_values == (6, 9, 12, 15, 18, 21)
        assert p.data_values == (1, 2, 3, 4, 5, 7, 8, 10, 11, 13, 14, 16, 17, 19, 20)

    def test_boundary(self):
        p = CodeParamsB(12, 2)
        assert p.t_prime == ref.t_prime_b(12, 2) == 5
        assert p.length == 12 + p.t_prime + 1
        with pytest.raises(ParamsError):
            CodeParamsB(11, 2)

    @pytest.mark.parametrize("n, t", [(4, 1), (12, 2), (24, 3), (40, 4)])
    def test_t_prime_formula(self, n, t):
        assert redundancy_length(n, t) == ref.t_prime_b(n, t)

    def test_redundancy_spacing(self):
        p = CodeParamsB(24, 3)
        gaps = {b - a for a, b in zip(p.redundancy_values, p.redundancy_values[1:])}
        assert gaps == {4}
        assert p.redundancy_values[-1] == p.length


class TestRankings:
    def test_worked_blocks(self):
        s1, s2 = block_rankings(SIGMA15, 2)
        assert s1 == [(1, 4, 2, 3), (1, 2, 3, 4), (1, 2, 3, 4), (2, 1, 3, 0)]
        assert s2 == [(2, 3, 1, 4), (3, 4, 1, 2), (4, 3, 1, 2), (1, 0, 0, 0)]

    def test_worked_sums(self):
        r1, r2 = ranking_sums(block_rankings(SIGMA15, 2), 2)
        assert r1 == (1, 1, 3, 3)
        # (1+1+1+0) mod 4 in the third column.
        assert r2 == (2, 2, 3, 0)

    def test_identity(self):
        s1, s2 = block_rankings(tuple(range(1, 13)), 2)
        assert all(b == (1, 2, 3, 4) for b in s1)

    @given(st.integers(1, 3).flatmap(lambda t: st.tuples(st.just(t), st.permutations(range(1, 4 * t + 4)))))
    def test_matches_brute_force(self, args):
        t, perm = args
        s1, s2 = block_rankings(perm, t)
        assert s1 == brute_rankings(perm, t, 1)
        assert s2 == brute_rankings(perm, t, t + 1)


class TestErasures:
    def test_worked_word(self):
        word = inject_b(SIGMA15, PatternB(8, 3, 4))
        s1, s2 = declare_erasures(word, 3)
        assert s1 == [1]
        assert s2 == [0, 1]

    def test_error_free(self):
        assert declare_erasures(SIGMA15, 2) == ([], [])


class TestRoundTrip:
    @pytest.mark.parametrize("n, t", [(4, 1), (5, 1), (6, 1)])
    def test_exhaustive(self, n, t):
        params = CodeParamsB(n, t)
        for sigma in itertools.permutations(range(1, n + 1)):
            word = encode_b(sigma, params)
            assert sorted(word) == list(range(1, params.length + 1))
            for pattern in enumerate_patterns("B", word, t):
                assert decode_b(inject_b(word, pattern), params) == sigma

    def test_checksum(self):
        params = CodeParamsB(12, 2)
        rng = random.Random(3)
        for _ in range(50):
            sigma = tuple(rng.sample(range(1, 13), 12))
            word = encode_b(sigma, params)
            red = set(params.redundancy_values)
            digits = [sum(1 for v in word[:p] if v not in red) for p, v in enumerate(word) if v in red]
            assert sum(digits) % 12 == 0

    @settings(max_examples=30, deadline=None)
    @given(st.permutations(range(1, 25)))
    def test_t3_all_bursts(self, sigma):
        params = CodeParamsB(24, 3)
        word = encode_b(sigma, params)
        for pattern in enumerate_patterns("B", word, 3):
            assert decode_b(inject_b(word, pattern), params) == tuple(sigma)

    def test_two_bursts_rejected(self):
        params = CodeParamsB(12, 2)
        word = encode_b(tuple(range(1, 13)), params)
        seen = inject_b(inject_b(word, PatternB(1, 2)), PatternB(9, 2))
        with pytest.raises(DecodeError) as info:
            decode_b(seen, params)
        assert info.value.reason == "capacity"

    def test_malformed(self):
        params = CodeParamsB(12, 2)
        with pytest.raises(DecodeError):
            decode_b((1,) * 5, params)
        with pytest.raises(DecodeError):
            decode_b((99,) * params.length, params)
