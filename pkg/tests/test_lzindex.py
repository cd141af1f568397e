import random

import pytest
from hypothesis import given, strategies as st

from lzpm.lzindex import (
    Codebook, CompressedText, FormatError, LevelAncestor, PatternTrieTp,
    decompress, letter_at, lz78_parse, read_lzpm, write_lzpm,
)
from lzpm.textcore import PatternIndex, as_letters


def test_parse_abababa():
    cb, ct = lz78_parse("abababa")
    phrases = [cb.codeword(t) for t in ct.tokens]
    assert phrases == [as_letters(x) for x in ("a", "b", "ab", "aba")]


def test_parse_aaaa():
    cb, ct = lz78_parse("aaaa")
    phrases = [cb.codeword(t) for t in ct.tokens]
    assert phrases == [as_letters(x) for x in ("a", "aa", "a")]


def test_parse_single():
    cb, ct = lz78_parse("x")
    assert len(ct.tokens) == 1
    assert decompress(ct, cb) == as_letters("x")


def test_parse_empty_rejected():
    with pytest.raises(ValueError):
        lz78_parse("")


@given(st.text(alphabet="abc", min_size=1, max_size=400))
def test_roundtrip(s):
    cb, ct = lz78_parse(s)
    assert decompress(ct, cb) == as_letters(s)


def test_prefix_closure():
    cb, _ = lz78_parse("the quick brown fox jumps over the lazy dog" * 3)
    for v in range(1, len(cb)):
        assert cb.parents[v] < v
        assert cb.depths[v] == cb.depths[cb.parents[v]] + 1


def test_manual_tokens():
    cb = Codebook()
    a = cb.add(0, ord("a"))
    ct = CompressedText([a, a], cb)
    assert decompress(ct, cb) == as_letters("aa")


@pytest.mark.parametrize("seed", range(6))
def test_letter_at_matches_decompress(seed):
    rng = random.Random(seed)
    raw = [rng.randrange(3) for _ in range(rng.randint(1, 500))]
    cb, ct = lz78_parse(raw)
    la = LevelAncestor(cb.parents, cb.depths)
    flat = decompress(ct, cb)
    pos = 0
    for i, t in enumerate(ct.tokens, 1):
        for off in range(1, cb.depths[t] + 1):
            assert letter_at(ct, cb, la, i, off) == flat[pos]
            pos += 1


def test_letter_at_bounds():
    cb, ct = lz78_parse("abcabc")
    la = LevelAncestor(cb.parents, cb.depths)
    with pytest.raises(IndexError):
        letter_at(ct, cb, la, 1, 2)  # first codeword has length 1


class TestChunks:
    def _tp(self, text, pattern):
        cb, ct = lz78_parse(text)
        pidx = PatternIndex(pattern)
        return PatternTrieTp(cb, pidx), cb, ct

    def test_identical_chunks(self):
        tp, cb, ct = self._tp("abcabcabc", "abc")
        node = ct.tokens[-1]
        c = (node, cb.depths[node])
        assert tp.chunk_lcsuf(c, c) == cb.depths[node]

    def test_disjoint_alphabet(self):
        tp, cb, ct = self._tp("aaabbb", "ab")
        ca = (ct.tokens[0], 1)   # 'a'
        cbk = (ct.tokens[2], 1)  # 'b'
        assert tp.chunk_lcsuf(ca, cbk) == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_lcsuf_random(self, seed):
        rng = random.Random(seed)
        sigma = rng.choice((2, 3, 5))
        text = [rng.randrange(sigma) for _ in range(rng.randint(5, 800))]
        pattern = [rng.randrange(sigma) for _ in range(rng.randint(1, 40))]
        tp, cb, ct = self._tp(text, pattern)
        nodes = [v for v in range(1, len(tp.parents)) if tp.depths[v] >= 1]
        for _ in range(60):
            v1, v2 = rng.choice(nodes), rng.choice(nodes)
            l1 = rng.randint(1, tp.depths[v1])
            l2 = rng.randint(1, tp.depths[v2])
            s1, s2 = tp.chunk_text(v1, l1), tp.chunk_text(v2, l2)
            expect = 0
            while expect < min(l1, l2) and s1[-1 - expect] == s2[-1 - expect]:
                expect += 1
            assert tp.chunk_lcsuf((v1, l1), (v2, l2)) == expect
            assert tp.chunk_lcsuf((v1, l1), (v2, l2), verify=True) == expect

    @pytest.mark.parametrize("seed", range(8))
    def test_pattern_lcpref_random(self, seed):
        rng = random.Random(100 + seed)
        sigma = rng.choice((2, 3))
        text = [rng.randrange(sigma) for _ in range(rng.randint(5, 600))]
        pattern = tuple(rng.randrange(sigma) for _ in range(rng.randint(1, 50)))
        tp, cb, ct = self._tp(text, pattern)
        nodes = [v for v in range(1, len(tp.parents))]
        for _ in range(60):
            v = rng.choice(nodes)
            ln = rng.randint(1, tp.depths[v])
            ps = rng.randint(1, len(pattern))
            s = tp.chunk_text(v, ln)
            suffix = pattern[ps - 1:]
            expect = 0
            while expect < min(len(s), len(suffix)) and s[expect] == suffix[expect]:
                expect += 1
            assert tp.chunk_pattern_lcpref((v, ln), ps) == expect

    def _tp_with_path(self, path, pattern):
        cb = Codebook()
        node = 0
        for c in as_letters(path):
            node = cb.add(node, c)
        return PatternTrieTp(cb, PatternIndex(pattern)), node

    def test_prefix_factor_example(self):
        tp, node = self._tp_with_path("aabx", "abaab")
        assert tp.longest_prefix_factor((node, 4)) == (3, 3)

    def test_prefix_factor_whole_chunk(self):
        tp, node = self._tp_with_path("aab", "abaab")
        ln, pos = tp.longest_prefix_factor((node, 3))
        assert ln == 3 and pos == 3

    def test_prefix_factor_absent_letter(self):
        tp, node = self._tp_with_path("zzz", "abaab")
        assert tp.longest_prefix_factor((node, 3)) == (0, None)

    def test_suffix_factor_example(self):
        tp, node = self._tp_with_path("xaba", "abaab")
        ln, pos = tp.longest_suffix_factor((node, 4))
        assert ln == 3 and pos == 1

    def test_suffix_factor_absent_letter(self):
        tp, node = self._tp_with_path("abz", "abaab")
        assert tp.longest_suffix_factor((node, 3)) == (0, None)

    @pytest.mark.parametrize("seed", range(10))
    def test_factor_search_random(self, seed):
        rng = random.Random(200 + seed)
        sigma = rng.choice((2, 3))
        text = [rng.randrange(sigma + 1) for _ in range(rng.randint(5, 400))]
        pattern = tuple(rng.randrange(sigma) for _ in range(rng.randint(1, 30)))
        tp, cb, ct = self._tp(text, pattern)
        pset = {pattern[i:j] for i in range(len(pattern)) for j in range(i + 1, len(pattern) + 1)}
        nodes = list(range(1, len(tp.parents)))
        for _ in range(40):
            v = rng.choice(nodes)
            ln = rng.randint(1, tp.depths[v])
            s = tp.chunk_text(v, ln)
            best_pref = max((x for x in range(len(s) + 1) if s[:x] in pset or x == 0), default=0)
            best_suf = max((x for x in range(len(s) + 1) if s[len(s) - x:] in pset or x == 0), default=0)
            got_len, got_pos = tp.longest_prefix_factor((v, ln))
            assert got_len == best_pref
            if got_len:
                assert pattern[got_pos - 1:got_pos - 1 + got_len] == s[:got_len]
            got_len, got_pos = tp.longest_suffix_factor((v, ln))
            assert got_len == best_suf
            if got_len:
                assert pattern[got_pos - 1:got_pos - 1 + got_len] == s[len(s) - got_len:]


class TestLzpmFormat:
    def test_roundtrip(self):
        cb, ct = lz78_parse(b"mississippi river runs")
        blob = write_lzpm(cb, ct, 256)
        cb2, ct2, sigma = read_lzpm(blob)
        assert sigma == 256
        assert decompress(ct2, cb2) == decompress(ct, cb)

    def test_roundtrip_with_bare_final_phrase(self):
        cb, ct = lz78_parse("aaaa")  # ends with a bare existing codeword
        blob = write_lzpm(cb, ct, 256)
        cb2, ct2, _ = read_lzpm(blob)
        assert decompress(ct2, cb2) == as_letters("aaaa")

    def test_bad_magic(self):
        with pytest.raises(FormatError):
            read_lzpm(b"NOPE" + bytes(20))

    def test_bad_version(self):
        cb, ct = lz78_parse("ab")
        blob = bytearray(write_lzpm(cb, ct, 256))
        blob[4] = 9
        with pytest.raises(FormatError):
            read_lzpm(bytes(blob))

    def test_truncated(self):
        cb, ct = lz78_parse("abcd")
        blob = write_lzpm(cb, ct, 256)
        with pytest.raises(FormatError):
            read_lzpm(blob[:-3])

    def test_letter_out_of_alphabet(self):
        cb, ct = lz78_parse("ab")
        blob = write_lzpm(cb, ct, 1)  # sigma too small for letter 'b'
        with pytest.raises(FormatError):
            read_lzpm(blob)
