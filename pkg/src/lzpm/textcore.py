"""Pattern-side string primitives.

Everything the matchers need to compare factors of the pattern in O(1):
suffix array + LCP + range minimum (both orientations), smallest periods,
canonical rotations, break finding and the stretch/break decomposition of
a string. All positions are 1-based, matching the output convention of
the rest of the package.
"""

from __future__ import annotations

from bisect import bisect_left

Letters = tuple[int, ...]


def as_letters(s) -> Letters:
    """Normalize str/bytes/int-sequence input to a tuple of ints."""
    if isinstance(s, tuple) and all(isinstance(c, int) for c in s):
        return s
    if isinstance(s, str):
        return tuple(ord(c) for c in s)
    if isinstance(s, (bytes, bytearray)):
        return tuple(s)
    return tuple(int(c) for c in s)


def _suffix_array(letters: Letters) -> list[int]:
    """Suffix array by prefix doubling, O(m log^2 m). Returns 0-based starts."""
    n = len(letters)
    rank = _rank_compress(letters)
    sa = sorted(range(n), key=lambda i: rank[i])
    step = 1
    while step < n:
        key = lambda i: (rank[i], rank[i + step] if i + step < n else -1)
        sa.sort(key=key)
        new_rank = [0] * n
        for idx in range(1, n):
            new_rank[sa[idx]] = new_rank[sa[idx - 1]] + (key(sa[idx - 1]) != key(sa[idx]))
        rank = new_rank
        if rank[sa[-1]] == n - 1:
            break
        step *= 2
    return sa


def _rank_compress(vals) -> list[int]:
    order = {v: i for i, v in enumerate(sorted(set(vals)))}
    return [order[v] for v in vals]


def _lcp_kasai(letters: Letters, sa: list[int], rank: list[int]) -> list[int]:
    """lcp[i] = LCP(suffix sa[i-1], suffix sa[i]) for i >= 1, lcp[0] = 0."""
    n = len(letters)
    lcp = [0] * n
    h = 0
    for i in range(n):
        if rank[i] > 0:
            j = sa[rank[i] - 1]
            while i + h < n and j + h < n and letters[i + h] == letters[j + h]:
                h += 1
            lcp[rank[i]] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


class _SparseMin:
    """Static range-minimum over an int array; query(i, j) = min of a[i..j]."""

    def __init__(self, a: list[int]):
        self.logs = logs = [0] * (len(a) + 1)
        for i in range(2, len(a) + 1):
            logs[i] = logs[i >> 1] + 1
        self.table = table = [list(a)]
        j = 1
        while (1 << j) <= len(a):
            prev = table[j - 1]
            half = 1 << (j - 1)
            table.append([min(prev[i], prev[i + half]) for i in range(len(a) - (1 << j) + 1)])
            j += 1

    def query(self, i: int, j: int) -> int:
        k = self.logs[j - i + 1]
        row = self.table[k]
        return min(row[i], row[j - (1 << k) + 1])


class _Direction:
    """Suffix array + LCP + RMQ over one orientation of the pattern."""

    def __init__(self, letters: Letters):
        self.letters = letters
        self.sa0 = _suffix_array(letters)          # 0-based starts
        self.rank0 = [0] * len(letters)
        for idx, s in enumerate(self.sa0):
            self.rank0[s] = idx
        self.lcp = _lcp_kasai(letters, self.sa0, self.rank0)
        self.rmq = _SparseMin(self.lcp) if len(letters) > 1 else None

    def suffix_lcp(self, i0: int, j0: int) -> int:
        """LCP of suffixes starting at 0-based i0, j0."""
        if i0 == j0:
            return len(self.letters) - i0
        ri, rj = self.rank0[i0], self.rank0[j0]
        if ri > rj:
            ri, rj = rj, ri
        return self.rmq.query(ri + 1, rj)


class PatternIndex:
    """Factor-comparison machinery over a pattern.

    Holds the suffix array / LCP / RMQ structures over the pattern and its
    reverse so that the longest common prefix of two suffixes and the
    longest common suffix of two prefixes are O(1) queries.
    """

    def __init__(self, p):
        letters = as_letters(p)
        if not letters:
            raise ValueError("empty pattern")
        self.letters = letters
        self.m = len(letters)
        self.fwd = _Direction(letters)
        self.rev = _Direction(letters[::-1])
        self.alphabet = frozenset(letters)
        self._rev_index: PatternIndex | None = None

    # -- suffix array views (1-based starts, as reported to callers) --

    @property
    def sa(self) -> list[int]:
        return [i + 1 for i in self.fwd.sa0]

    @property
    def lcp_array(self) -> list[int]:
        return self.fwd.lcp[1:]

    def factor_lcp(self, i: int, j: int, max_len: int | None = None) -> int:
        """Length of the longest common prefix of p[i..m] and p[j..m]."""
        r = self.fwd.suffix_lcp(i - 1, j - 1)
        if max_len is not None and r > max_len:
            return max_len
        return r

    def factor_lcs(self, i: int, j: int, max_len: int | None = None) -> int:
        """Length of the longest common suffix of p[1..i] and p[1..j]."""
        m = self.m
        r = self.rev.suffix_lcp(m - i, m - j)
        if max_len is not None and r > max_len:
            return max_len
        return r

    def reversed_index(self) -> "PatternIndex":
        """PatternIndex over the reversed pattern (built once, cached)."""
        if self._rev_index is None:
            self._rev_index = PatternIndex(self.letters[::-1])
        return self._rev_index


def smallest_period(s) -> int:
    """Smallest q with s[i] == s[i+q] for all valid i (0 for empty input)."""
    letters = as_letters(s)
    n = len(letters)
    if n == 0:
        return 0
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and letters[i] != letters[k]:
            k = fail[k - 1]
        if letters[i] == letters[k]:
            k += 1
        fail[i] = k
    return n - fail[-1]


def canonical_rotation(w) -> Letters:
    """Lexicographically least cyclic shift (Booth's algorithm)."""
    letters = as_letters(w)
    n = len(letters)
    if n <= 1:
        return letters
    doubled = letters + letters
    f = [-1] * (2 * n)
    start = 0
    for j in range(1, 2 * n):
        c = doubled[j]
        i = f[j - start - 1]
        while i != -1 and c != doubled[start + i + 1]:
            if c < doubled[start + i + 1]:
                start = j - i - 1
            i = f[i]
        if c != doubled[start + i + 1]:
            if c < doubled[start]:
                start = j
            f[j - start] = -1
        else:
            f[j - start] = i + 1
    return doubled[start:start + n]


def find_breaks(s, z: int) -> list[int]:
    """Starts (1-based) of the greedy maximal set of disjoint z-breaks.

    Linear-time scan: find the period of the current length-z window, then
    extend letter by letter while the period persists; the first violation
    pins the leftmost break, exactly reproducing the stepwise greedy scan.
    """
    letters = as_letters(s)
    n = len(letters)
    if z < 3:
        raise ValueError("z must be >= 3")
    out: list[int] = []
    i0 = 0  # 0-based start of the unprocessed portion
    while i0 + z <= n:
        q = smallest_period(letters[i0:i0 + z])
        if 2 * q > z:
            out.append(i0 + 1)
            i0 += z
            continue
        j = i0 + z
        while j < n and letters[j] == letters[j - q]:
            j += 1
        if j == n:
            break
        out.append(j - z + 2)  # break covers letters[j-z+1 .. j] (0-based)
        i0 = j + 1
    return out


class PeriodTable:
    """Interning table mapping canonical period words to small ids."""

    def __init__(self):
        self.words: list[Letters] = []
        self._ids: dict[Letters, int] = {}

    def intern(self, word: Letters) -> int:
        pid = self._ids.get(word)
        if pid is None:
            pid = len(self.words)
            self._ids[word] = pid
            self.words.append(word)
        return pid

    def word(self, pid: int) -> Letters:
        return self.words[pid]


class Stretch:
    """One periodic run between breaks.

    phase is the offset into the canonical period word at which the stretch
    content starts: content[i] == word[(phase + i) % len(word)].
    """

    __slots__ = ("start", "length", "period", "period_id", "phase")

    def __init__(self, start, length, period, period_id, phase):
        self.start = start
        self.length = length
        self.period = period
        self.period_id = period_id
        self.phase = phase

    @property
    def end(self) -> int:
        return self.start + self.length - 1

    def __repr__(self):
        return (f"Stretch(start={self.start}, len={self.length}, q={self.period}, "
                f"pid={self.period_id}, phase={self.phase})")


class BreakDecomposition:
    """A string written as stretch, break, stretch, ..., break, stretch.

    breaks[i] is a (start, length) pair; stretches has len(breaks)+1 entries
    (zero-length entries where a break touches its neighbor or the string
    edge). After normalization all interior stretches are exact powers of
    their canonical period; the leading/trailing stretch may begin/end
    mid-period but is still period-aligned at the inner side.
    """

    def __init__(self, length, z, breaks, stretches, table):
        self.length = length
        self.z = z
        self.breaks = breaks            # list[(start, length)]
        self.stretches = stretches      # list[Stretch], len == len(breaks)+1
        self.table = table

    def __repr__(self):
        return f"BreakDecomposition(len={self.length}, breaks={self.breaks})"


def _stretch_record(letters: Letters, start: int, length: int,
                    table: PeriodTable) -> Stretch:
    """Build a Stretch over letters[start-1 .. start+length-2] (1-based start)."""
    if length == 0:
        return Stretch(start, 0, 0, -1, 0)
    seg = letters[start - 1:start - 1 + length]
    q = smallest_period(seg)
    word = canonical_rotation(seg[:q])
    pid = table.intern(word)
    # phase: smallest t with seg starting at word[t % q]
    phase = 0
    if q > 1:
        for t in range(q):
            if word[t:] + word[:t] == seg[:q]:
                phase = t
                break
    return Stretch(start, length, q, pid, phase)


def decompose(s, z: int, k: int = 0,
              table: PeriodTable | None = None) -> BreakDecomposition:
    """Stretch/break decomposition with the periodic-branch normalization.

    After the greedy break scan, every stretch u1 u^i u2 donates u1 to the
    break on its left and u2 to the break on its right, so interior
    stretches become exact powers; a nonzero leading (trailing) stretch
    shorter than z*(k+1) is absorbed into the first (last) break entirely.
    """
    letters = as_letters(s)
    n = len(letters)
    if table is None:
        table = PeriodTable()
    starts = find_breaks(letters, z)
    if not starts:
        return BreakDecomposition(n, z, [], [_stretch_record(letters, 1, n, table)], table)

    # break intervals as half-open 0-based [lo, hi)
    ivals = [[b - 1, b - 1 + z] for b in starts]

    # donate the misaligned head/tail of each stretch to the neighbor breaks
    for idx in range(len(ivals) + 1):
        lo = ivals[idx - 1][1] if idx > 0 else 0
        hi = ivals[idx][0] if idx < len(ivals) else n
        if hi <= lo:
            continue
        seg = letters[lo:hi]
        q = smallest_period(seg)
        w0 = seg[:q]
        word = canonical_rotation(w0)
        # rotation shift t: word == w0[t:] + w0[:t]; seg[:t] is then a suffix
        # of word and the rest of seg continues word-aligned
        t = next(c for c in range(q) if w0[c:] + w0[:c] == word)
        copies = (len(seg) - t) // q
        head, tail = t, len(seg) - t - copies * q
        if idx > 0 and head:
            ivals[idx - 1][1] += head
        if idx < len(ivals) and tail:
            ivals[idx][0] -= tail

    # absorb short edge stretches into the first/last break
    min_edge = z * (k + 1)
    if 0 < ivals[0][0] < min_edge:
        ivals[0][0] = 0
    if 0 < n - ivals[-1][1] < min_edge:
        ivals[-1][1] = n

    breaks = [(lo + 1, hi - lo) for lo, hi in ivals]
    stretches = []
    for idx in range(len(ivals) + 1):
        lo = ivals[idx - 1][1] if idx > 0 else 0
        hi = ivals[idx][0] if idx < len(ivals) else n
        stretches.append(_stretch_record(letters, lo + 1, hi - lo, table))
    return BreakDecomposition(n, z, breaks, stretches, table)


def group_breaks(decomp: BreakDecomposition, gap: int) -> list[tuple[int, int, int, int]]:
    """Greedy left-to-right grouping of breaks whose stretch gap is < gap.

    Returns (first_idx, last_idx, hull_start, hull_end) per group, 1-based
    hull coordinates.
    """
    groups = []
    bs = decomp.breaks
    i = 0
    while i < len(bs):
        j = i
        while j + 1 < len(bs):
            gap_len = bs[j + 1][0] - (bs[j][0] + bs[j][1])
            if gap_len < gap:
                j += 1
            else:
                break
        groups.append((i, j, bs[i][0], bs[j][0] + bs[j][1] - 1))
        i = j + 1
    return groups


def locate_factor(pidx: PatternIndex, w=None, refs=None) -> int | None:
    """Some occurrence (1-based start) of the probe in the pattern, or None.

    The probe is either explicit letters (w) or a list of (a, b) factor
    references whose concatenation forms the probe (refs); reference probes
    are compared via O(1) factor LCPs, so the whole search is O(log m).
    Returns the start appearing first in suffix-array order among matches.
    """
    letters = pidx.letters
    m = pidx.m
    if refs is not None:
        parts = list(refs)
        total = sum(b - a + 1 for a, b in parts)

        def cmp_suffix(start1):  # compare suffix p[start1..] against probe
            pos = start1
            for a, b in parts:
                seg = b - a + 1
                if pos > m:
                    return -1, None
                l = pidx.factor_lcp(pos, a, max_len=min(seg, m - pos + 1))
                if l < seg:
                    if pos + l > m:
                        return -1, None
                    return (-1 if letters[pos + l - 1] < letters[a + l - 1] else 1), None
                pos += seg
            return 0, None
    else:
        probe = as_letters(w)
        total = len(probe)

        def cmp_suffix(start1):
            i = start1 - 1
            for c in probe:
                if i >= m:
                    return -1, None
                if letters[i] != c:
                    return (-1 if letters[i] < c else 1), None
                i += 1
            return 0, None

    if total == 0 or total > m:
        return None
    sa0 = pidx.fwd.sa0
    lo, hi = 0, len(sa0)
    while lo < hi:
        mid = (lo + hi) // 2
        c, _ = cmp_suffix(sa0[mid] + 1)
        if c < 0:
            lo = mid + 1
        else:
            hi = mid
    if lo < len(sa0) and cmp_suffix(sa0[lo] + 1)[0] == 0:
        return sa0[lo] + 1
    return None
