"""LZ78/LZW parsing and the compressed-text comparison machinery.

A compressed text is a codeword trie plus a token list. On top of that this
module provides letter access by (token, offset) through binary-lifting
level ancestors, and chunk comparisons (longest common suffix of two
root-path subwords, chunk-vs-pattern prefixes, longest chunk prefix/suffix
occurring in the pattern) through Karp-Rabin fingerprints over root-to-node
strings plus binary search.
"""

from __future__ import annotations

import struct

from .textcore import Letters, PatternIndex, as_letters

_FP_MOD1 = (1 << 61) - 1
_FP_MOD2 = (1 << 31) - 1
# fixed, documented fingerprint bases (seeded once; collisions ~2^-60 scale)
_FP_BASE1 = 1_203_983_111_556_987_331
_FP_BASE2 = 48_271


class Codebook:
    """The codeword trie. Node 0 is the empty root."""

    def __init__(self):
        self.parents = [0]
        self.letters = [-1]
        self.depths = [0]
        self.children: dict[tuple[int, int], int] = {}

    def add(self, parent: int, letter: int) -> int:
        node = len(self.parents)
        self.parents.append(parent)
        self.letters.append(letter)
        self.depths.append(self.depths[parent] + 1)
        self.children[(parent, letter)] = node
        return node

    def child(self, node: int, letter: int) -> int | None:
        return self.children.get((node, letter))

    def __len__(self):
        return len(self.parents)

    def codeword(self, node: int) -> Letters:
        out = []
        while node:
            out.append(self.letters[node])
            node = self.parents[node]
        return tuple(reversed(out))


class CompressedText:
    """Token list plus cumulative codeword lengths (absolute positions)."""

    def __init__(self, tokens: list[int], cb: Codebook):
        self.tokens = tokens
        boundary = [0]
        for t in tokens:
            if not 0 < t < len(cb):
                raise ValueError(f"invalid token {t}")
            boundary.append(boundary[-1] + cb.depths[t])
        self.boundary_prefix = boundary
        self.N = boundary[-1]

    def __len__(self):
        return len(self.tokens)


def lz78_parse(raw) -> tuple[Codebook, CompressedText]:
    """Greedy LZ78 parse: each phrase extends the longest known codeword by
    one letter; the final phrase may be a bare existing codeword."""
    letters = as_letters(raw)
    if not letters:
        raise ValueError("empty input")
    cb = Codebook()
    tokens = []
    node = 0
    for c in letters:
        nxt = cb.children.get((node, c))
        if nxt is not None:
            node = nxt
            continue
        tokens.append(cb.add(node, c))
        node = 0
    if node:
        tokens.append(node)
    return cb, CompressedText(tokens, cb)


def decompress(ct: CompressedText, cb: Codebook) -> Letters:
    out = []
    for t in ct.tokens:
        out.extend(cb.codeword(t))
    return tuple(out)


class LevelAncestor:
    """Binary-lifting jump tables; at_depth(v, d) is v's ancestor at depth d."""

    def __init__(self, parents: list[int], depths: list[int]):
        self.depths = depths
        n = len(parents)
        levels = max(1, max(depths).bit_length()) if n else 1
        self.up = up = [list(parents)]
        for j in range(1, levels):
            prev = up[j - 1]
            up.append([prev[prev[v]] for v in range(n)])

    def at_depth(self, v: int, d: int) -> int:
        delta = self.depths[v] - d
        j = 0
        while delta:
            if delta & 1:
                v = self.up[j][v]
            delta >>= 1
            j += 1
        return v


class PatternTrieTp:
    """Codeword trie extended by one path spelling the pattern.

    Carries level-ancestor tables, per-node root-string fingerprints, the
    pattern-path node per prefix length, and the set of letters missing
    from the pattern (foreign letters).
    """

    def __init__(self, cb: Codebook, pidx: PatternIndex):
        self.pidx = pidx
        p = pidx.letters
        self.parents = list(cb.parents)
        self.letters = list(cb.letters)
        self.depths = list(cb.depths)
        children = dict(cb.children)

        self.pattern_node = [0] * (len(p) + 1)
        node = 0
        for d, c in enumerate(p, 1):
            nxt = children.get((node, c))
            if nxt is None:
                nxt = len(self.parents)
                self.parents.append(node)
                self.letters.append(c)
                self.depths.append(d)
                children[(node, c)] = nxt
            node = nxt
            self.pattern_node[d] = node

        self.la = LevelAncestor(self.parents, self.depths)
        self.alphabet = pidx.alphabet
        self._build_fingerprints()

    def is_foreign(self, letter: int) -> bool:
        return letter not in self.alphabet

    def _build_fingerprints(self):
        n = len(self.parents)
        maxd = max(self.depths) + 1
        self.pow1 = pow1 = [1] * maxd
        self.pow2 = pow2 = [1] * maxd
        for i in range(1, maxd):
            pow1[i] = pow1[i - 1] * _FP_BASE1 % _FP_MOD1
            pow2[i] = pow2[i - 1] * _FP_BASE2 % _FP_MOD2
        self.h1 = h1 = [0] * n
        self.h2 = h2 = [0] * n
        for v in range(1, n):
            par, c = self.parents[v], self.letters[v]
            h1[v] = (h1[par] * _FP_BASE1 + c + 1) % _FP_MOD1
            h2[v] = (h2[par] * _FP_BASE2 + c + 1) % _FP_MOD2

    # -- chunk primitives; a chunk is (end_node, length) --

    def chunk_letter(self, node: int, length: int, pos: int) -> int:
        """pos-th letter (1-based) of the chunk (node, length)."""
        return self.letters[self.la.at_depth(node, self.depths[node] - (length - pos))]

    def chunk_text(self, node: int, length: int) -> Letters:
        return tuple(self.chunk_letter(node, length, i) for i in range(1, length + 1))

    def _chunk_hash(self, node: int, length: int) -> tuple[int, int]:
        if length == 0:
            return 0, 0
        top = self.la.at_depth(node, self.depths[node] - length)
        a = (self.h1[node] - self.h1[top] * self.pow1[length]) % _FP_MOD1
        b = (self.h2[node] - self.h2[top] * self.pow2[length]) % _FP_MOD2
        return a, b

    def chunk_lcsuf(self, c1: tuple[int, int], c2: tuple[int, int],
                    verify: bool = False) -> int:
        """Length of the longest common suffix of two chunk strings."""
        v1, l1 = c1
        v2, l2 = c2
        lo, hi = 0, min(l1, l2)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._chunk_hash(v1, mid) == self._chunk_hash(v2, mid):
                lo = mid
            else:
                hi = mid - 1
        if verify:
            a, b, n = v1, v2, 0
            while n < min(l1, l2) and self.letters[a] == self.letters[b]:
                a, b = self.parents[a], self.parents[b]
                n += 1
            return n
        return lo

    def chunk_pattern_lcpref(self, chunk: tuple[int, int], p_start: int) -> int:
        """LCP of the chunk string and p[p_start..m]."""
        v, length = chunk
        m = self.pidx.m
        cap = min(length, m - p_start + 1)
        lo, hi = 0, cap
        dv = self.depths[v]
        while lo < hi:
            mid = (lo + hi + 1) // 2
            pref_node = self.la.at_depth(v, dv - (length - mid))
            pat_node = self.pattern_node[p_start + mid - 1]
            if self._chunk_hash(pref_node, mid) == self._chunk_hash(pat_node, mid):
                lo = mid
            else:
                hi = mid - 1
        return lo

    def _cmp_vs_pattern_suffix(self, chunk: tuple[int, int], p_start: int) -> tuple[int, int]:
        """(sign, lcp) comparing the chunk string with p[p_start..m]."""
        l = self.chunk_pattern_lcpref(chunk, p_start)
        v, length = chunk
        m = self.pidx.m
        if l == length:
            return (0 if p_start + l > m else -1), l
        if p_start + l > m:
            return 1, l
        c = self.chunk_letter(v, length, l + 1)
        d = self.pidx.letters[p_start + l - 1]
        return (-1 if c < d else 1), l

    def longest_prefix_factor(self, chunk: tuple[int, int]) -> tuple[int, int | None]:
        """Longest chunk prefix occurring in p, with one occurrence start."""
        if chunk[1] == 0:
            return 0, None
        sa0 = self.pidx.fwd.sa0
        lo, hi = 0, len(sa0)
        while lo < hi:
            mid = (lo + hi) // 2
            sign, _ = self._cmp_vs_pattern_suffix(chunk, sa0[mid] + 1)
            if sign > 0:
                lo = mid + 1
            else:
                hi = mid
        best, pos = 0, None
        for cand in (lo - 1, lo):
            if 0 <= cand < len(sa0):
                _, l = self._cmp_vs_pattern_suffix(chunk, sa0[cand] + 1)
                if l > best:
                    best, pos = l, sa0[cand] + 1
        return best, pos

    def longest_suffix_factor(self, chunk: tuple[int, int]) -> tuple[int, int | None]:
        """Longest chunk suffix occurring in p, with one occurrence start."""
        v, length = chunk
        if length == 0:
            return 0, None
        m = self.pidx.m
        rsa0 = self.pidx.rev.sa0  # suffix array of the reversed pattern

        def cmp_rev(rstart0: int) -> tuple[int, int]:
            # reversed chunk vs reversed-pattern suffix at rstart0; their
            # common prefix is the common suffix of the chunk and p[1..j]
            j = m - rstart0
            l = self.chunk_lcsuf((v, length), (self.pattern_node[j], j))
            if l == length or l == j:
                if length == j:
                    return 0, l
                return (-1 if length < j and l == length else 1), l
            c = self.chunk_letter(v, length, length - l)
            d = self.pidx.letters[j - l - 1]
            return (-1 if c < d else 1), l

        lo, hi = 0, len(rsa0)
        while lo < hi:
            mid = (lo + hi) // 2
            sign, _ = cmp_rev(rsa0[mid])
            if sign > 0:
                lo = mid + 1
            else:
                hi = mid
        best, pos = 0, None
        for cand in (lo - 1, lo):
            if 0 <= cand < len(rsa0):
                _, l = cmp_rev(rsa0[cand])
                if l > best:
                    j = m - rsa0[cand]
                    best, pos = l, j - l + 1
        return best, pos


def letter_at(ct: CompressedText, cb: Codebook, la: LevelAncestor,
              token_idx: int, offset: int) -> int:
    """offset-th letter (1-based) of the codeword of tokens[token_idx] (1-based)."""
    node = ct.tokens[token_idx - 1]
    if not 1 <= offset <= cb.depths[node]:
        raise IndexError("offset outside codeword")
    return cb.letters[la.at_depth(node, offset)]


# -- LZPM container format ---------------------------------------------------

_MAGIC = b"LZPM"
_VERSION = 1
_NO_LETTER = 0xFFFFFFFF


class FormatError(ValueError):
    pass


def write_lzpm(cb: Codebook, ct: CompressedText, sigma: int) -> bytes:
    """Serialize: magic, version byte, u32le sigma, u32le n, then n pairs
    (parent node id, letter) in phrase order. A final letterless LZW-style
    phrase stores 0xFFFFFFFF in the letter field."""
    out = [_MAGIC, bytes([_VERSION]), struct.pack("<II", sigma, len(ct.tokens))]
    next_node = 1
    for t in ct.tokens:
        if t == next_node:  # phrase that introduced this node
            out.append(struct.pack("<II", cb.parents[t], cb.letters[t]))
            next_node += 1
        else:
            out.append(struct.pack("<II", t, _NO_LETTER))
    return b"".join(out)


def read_lzpm(data: bytes) -> tuple[Codebook, CompressedText, int]:
    if len(data) < 13 or data[:4] != _MAGIC:
        raise FormatError("bad magic")
    if data[4] != _VERSION:
        raise FormatError("unsupported version")
    sigma, n = struct.unpack_from("<II", data, 5)
    if len(data) != 13 + 8 * n:
        raise FormatError("truncated or oversized payload")
    cb = Codebook()
    tokens = []
    off = 13
    for _ in range(n):
        parent, letter = struct.unpack_from("<II", data, off)
        off += 8
        if letter == _NO_LETTER:
            if not 1 <= parent < len(cb):
                raise FormatError("bare phrase references unknown codeword")
            tokens.append(parent)
            continue
        if parent >= len(cb):
            raise FormatError("parent id out of range")
        if letter >= sigma:
            raise FormatError("letter outside alphabet")
        tokens.append(cb.add(parent, letter))
    return cb, CompressedText(tokens, cb), sigma
