"""Round-trip properties shared by all three codes, driven by hypothesis."""

from hypothesis import given, settings, strategies as st

from tailcodes.channel import enumerate_patterns, inject, random_pattern
from tailcodes.codec import make_codec

CODECS = {
    "A": [(7, 1), (8, 2), (10, 2)],
    "B": [(4, 1), (8, 1), (12, 2)],
    "C": [(13, 1), (14, 2), (18, 3)],
}


@st.composite
def codec_and_perm(draw):
    model = draw(st.sampled_from(sorted(CODECS)))
    n, t = draw(st.sampled_from(CODECS[model]))
    perm = tuple(draw(st.permutations(range(1, n + 1))))
    return make_codec(model, n, t), perm


class TestRoundTrip:
    @settings(max_examples=60, deadline=None)
    @given(codec_and_perm(), st.integers(0, 2 ** 32 - 1))
    def test_random_pattern(self, pair, seed):
        codec, perm = pair
        word = codec.encode(perm)
        pattern = random_pattern(codec.model, word, codec.t, codec.m, seed)
        assert codec.decode(inject(word, pattern)) == perm

    @settings(max_examples=15, deadline=None)
    @given(codec_and_perm())
    def test_every_pattern(self, pair):
        codec, perm = pair
        word = codec.encode(perm)
        for pattern in enumerate_patterns(codec.model, word, codec.t, codec.m):
            assert codec.decode(inject(word, pattern)) == perm

    @settings(max_examples=40, deadline=None)
    @given(codec_and_perm())
    def test_codeword_shape(self, pair):
        codec, perm = pair
        word = codec.encode(perm)
        assert sorted(word) == list(range(1, codec.length + 1))
        assert codec.decode(word) == perm
