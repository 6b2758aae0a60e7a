import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tailcodes.channel import PatternC, enumerate_patterns, inject_c
from tailcodes.code_c import (
    OFFSET,
    CodeParamsC,
    ParityChecks,
    candidate_reconstructions,
    checksum_position,
    decode_c,
    encode_c,
    pack_parities,
    parity_checks,
    parity_space,
    redundancy_length,
    unpack_parities,
)
from tailcodes.errors import DecodeError, ParamsError
from tailcodes.perm import UNKNOWN, inverse

import reference as ref

SIGMA = (9, 1, 4, 2, 5, 8, 3, 6, 7)


class TestParities:
    def test_running_example(self):
        # Six ascents in (1,1,1,0,1,1,1,0,0), so the count parity is even.
        assert parity_checks(SIGMA, 3) == ParityChecks(0, 4, 2, 0)

    @pytest.mark.parametrize("n, t", [(5, 1), (9, 2), (12, 3)])
    def test_identity(self, n, t):
        p = parity_checks(tuple(range(1, n + 1)), t)
        assert p.p1 == n % 2
        assert p.p2 == n * (n + 1) // 2 % (t + 2)
        assert p.p4 == 0

    @given(st.integers(1, 4), st.permutations(range(1, 10)))
    def test_matches_reference(self, t, perm):
        assert tuple(parity_checks(perm, t)) == ref.parities(perm, t)

    @given(st.integers(1, 5), st.data())
    def test_pack_round_trip(self, t, data):
        value = data.draw(st.integers(0, parity_space(t) - 1))
        assert pack_parities(unpack_parities(value, t), t) == value

    def test_bad_t(self):
        with pytest.raises(ValueError):
            parity_checks(SIGMA, 0)


class TestCandidates:
    def test_running_example(self):
        word_inv = (2, UNKNOWN, 7, 3, 8, 9, 6, 1)
        cands = candidate_reconstructions(word_inv, 3, (4, 5))
        picked = [c for c in cands if c.choice == 4 and c.offset == 3]
        assert picked[0].inverse == (2, 4, 7, 3, 5, 8, 9, 6, 1)
        assert inverse(picked[0].inverse) == SIGMA

    def test_error_free(self):
        cands = candidate_reconstructions((3, 1, 2), 2)
        assert len(cands) == 1 and cands[0].inverse == (3, 1, 2)

    def test_t1_at_most_two(self):
        word = inject_c(SIGMA, PatternC(5, 1))
        assert len(candidate_reconstructions(inverse(word), 1)) <= 2

    @given(st.permutations(range(1, 9)), st.data())
    def test_truth_is_listed(self, perm, data):
        t = data.draw(st.integers(1, 3))
        i1 = data.draw(st.sampled_from([p for p in range(1, 9) if perm[p - 1] > 1]))
        t1 = data.draw(st.integers(1, min(t, perm[i1 - 1] - 1)))
        word = inject_c(tuple(perm), PatternC(i1, t1))
        listed = {c.inverse for c in candidate_reconstructions(inverse(word), t)}
        assert ref.inverse_perm(perm) in listed


class TestChecksum:
    def test_no_redundancy(self):
        assert checksum_position(tuple(range(1, 8)), 7) == 8

    @given(st.integers(6, 12), st.integers(0, 5), st.data())
    def test_congruence(self, n, tp, data):
        slots = sorted(data.draw(st.sets(st.integers(1, n + tp), min_size=tp, max_size=tp)))
        red, rest = iter(range(n + 1, n + tp + 1)), iter(range(1, n + 1))
        perm = [next(red) if p in slots else next(rest) for p in range(1, n + tp + 1)]
        q = checksum_position(perm, n)
        placed = perm[: q - 1] + [n + tp + 1] + perm[q - 1:]
        assert sum(p for p, v in enumerate(placed, start=1) if v > n) % (n + 1) == 0


class TestParams:
    def test_n13_t1(self):
        p = CodeParamsC(13, 1)
        assert p.t_prime == 2 and p.alphabet == 13 - OFFSET
        assert p.hypothesis_ok()

    @pytest.mark.parametrize("n, t", [(13, 1), (13, 2), (14, 2), (16, 3), (30, 5)])
    def test_t_prime_formula(self, n, t):
        assert redundancy_length(n, t) == ref.t_prime_c(n, t) <= 5

    def test_rejected(self):
        with pytest.raises(ParamsError):
            CodeParamsC(7, 3)
        with pytest.raises(ParamsError):
            CodeParamsC(13, 0)

    def test_below_length_hypothesis(self):
        # Still constructible, but outside the guaranteed regime.
        assert not CodeParamsC(13, 2).hypothesis_ok()


class TestRoundTrip:
    @pytest.mark.parametrize("n, t", [(13, 1), (13, 2), (14, 1), (14, 2)])
    def test_sampled(self, n, t):
        params = CodeParamsC(n, t)
        rng = random.Random(n * 10 + t)
        for _ in range(150):
            sigma = tuple(rng.sample(range(1, n + 1), n))
            word = encode_c(sigma, params)
            assert sorted(word) == list(range(1, params.length + 1))
            for pattern in enumerate_patterns("C", word, t):
                assert decode_c(inject_c(word, pattern), params) == sigma

    def test_error_free(self):
        params = CodeParamsC(13, 1)
        sigma = tuple(range(13, 0, -1))
        assert decode_c(encode_c(sigma, params), params) == sigma

    def test_not_a_codeword(self):
        params = CodeParamsC(13, 1)
        with pytest.raises(DecodeError) as info:
            decode_c(tuple(range(1, params.length + 1)), params)
        assert info.value.reason == "inconsistent"

    def test_two_errors(self):
        params = CodeParamsC(13, 1)
        word = encode_c(tuple(range(1, 14)), params)
        twice = list(inject_c(word, PatternC(word.index(12) + 1, 1)))
        twice[twice.index(5)] = 4
        with pytest.raises(DecodeError):
            decode_c(tuple(twice), params)

    @settings(max_examples=20, deadline=None)
    @given(st.permutations(range(1, 21)))
    def test_t5(self, sigma):
        params = CodeParamsC(20, 5)
        word = encode_c(sigma, params)
        for pattern in enumerate_patterns("C", word, 5):
            assert decode_c(inject_c(word, pattern), params) == tuple(sigma)


def test_digits_stay_clear_of_offset():
    params = CodeParamsC(13, 2)
    for sigma in itertools.islice(itertools.permutations(range(1, 14)), 200):
        word = encode_c(sigma, params)
        for v in range(14, 14 + params.t_prime):
            assert word.index(v) + 1 > OFFSET
