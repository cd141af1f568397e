"""Reference oracles, instance generators and instrumentation counters.

The oracles work on the raw (decompressed) text and are the ground truth
every compressed-domain algorithm in this package is tested against.
"""

from __future__ import annotations

import random
import time

import numpy as np

from .textcore import as_letters


def oracle_hamming(raw, p, k: int) -> list[tuple[int, int]]:
    """All (end, distance) with Hamming(t[i..i+m-1], p) <= k, 1-based ends."""
    t = np.asarray(as_letters(raw), dtype=np.int64)
    q = np.asarray(as_letters(p), dtype=np.int64)
    n, m = len(t), len(q)
    if m > n or m == 0:
        return []
    windows = np.lib.stride_tricks.sliding_window_view(t, m)
    dists = (windows != q).sum(axis=1)
    ends = np.nonzero(dists <= k)[0]
    return [(int(e) + m, int(dists[e])) for e in ends]


def oracle_edit(raw, p, k: int) -> list[tuple[int, int]]:
    """All (end, min distance) with ed(t[i..j], p) <= k for some i <= j.

    Row-vectorized free-start DP: D[r][j] = min edit distance between
    p[1..r] and any suffix of t[1..j] (the empty suffix included, which
    never changes the reported set for k < m and ties otherwise).
    """
    t = np.asarray(as_letters(raw), dtype=np.int64)
    q = np.asarray(as_letters(p), dtype=np.int64)
    n, m = len(t), len(q)
    if n == 0 or m == 0:
        return []
    prev = np.zeros(n + 1, dtype=np.int64)
    steps = np.arange(n + 1, dtype=np.int64)
    for r in range(1, m + 1):
        sub = prev[:-1] + (t != q[r - 1])
        cand = np.minimum(sub, prev[1:] + 1)
        cur = np.empty(n + 1, dtype=np.int64)
        cur[0] = r
        cur[1:] = cand
        # carry insertions left-to-right: cur[j] = min over j' <= j of cand[j'] + (j - j')
        cur = np.minimum.accumulate(cur - steps) + steps
        prev = cur
    ends = np.nonzero(prev[1:] <= k)[0]
    return [(int(j) + 1, int(prev[j + 1])) for j in ends]


def hamming_distance_naive(a, b) -> int:
    """Plain counting loop, kept independent of the numpy oracle."""
    xs, ys = as_letters(a), as_letters(b)
    if len(xs) != len(ys):
        raise ValueError("length mismatch")
    return sum(1 for x, y in zip(xs, ys) if x != y)


def edit_distance_naive(a, b) -> int:
    """Textbook quadratic DP, independent of the vectorized oracle."""
    xs, ys = as_letters(a), as_letters(b)
    prev = list(range(len(ys) + 1))
    for i, x in enumerate(xs, 1):
        cur = [i]
        for j, y in enumerate(ys, 1):
            cur.append(min(prev[j] + 1, cur[-1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def oracle_hamming_loops(raw, p, k: int) -> list[tuple[int, int]]:
    """Second, independently written Hamming oracle (pure loops)."""
    t, q = as_letters(raw), as_letters(p)
    m = len(q)
    out = []
    for i in range(len(t) - m + 1):
        d = 0
        for x, y in zip(t[i:i + m], q):
            if x != y:
                d += 1
                if d > k:
                    break
        if d <= k:
            out.append((i + m, d))
    return out


def oracle_edit_loops(raw, p, k: int) -> list[tuple[int, int]]:
    """Second edit-distance oracle: banded DP with per-end minimization."""
    t, q = as_letters(raw), as_letters(p)
    n, m = len(t), len(q)
    prev = [0] * (n + 1)
    for r in range(1, m + 1):
        cur = [r] * (n + 1)
        for j in range(1, n + 1):
            cur[j] = min(prev[j - 1] + (t[j - 1] != q[r - 1]),
                         prev[j] + 1, cur[j - 1] + 1)
        prev = cur
    return [(j, prev[j]) for j in range(1, n + 1) if prev[j] <= k]


PROFILES = ("uniform", "periodic", "planted", "foreign", "adversarial")


def generate_instance(profile: str, seed: int, mode: str = "hamming",
                      max_n: int = 20000, max_m: int = 512,
                      k_max: int = 8) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Deterministic (text, pattern, k) instance for a named profile."""
    rng = random.Random(f"{profile}/{seed}/{mode}")
    k_cap = k_max if mode == "hamming" else min(k_max, 6)
    k = rng.randint(0, k_cap)
    n = _log_uniform(rng, 48, max_n)
    m = _log_uniform(rng, 4, min(max_m, n))
    if profile == "uniform":
        sigma = rng.choice((2, 4, 26))
        t = tuple(rng.randrange(sigma) for _ in range(n))
        p = tuple(rng.randrange(sigma) for _ in range(m))
    elif profile == "periodic":
        t, p = _periodic_instance(rng, n, m, k)
    elif profile == "planted":
        t, p = _planted_instance(rng, n, m, k, mode)
    elif profile == "foreign":
        sigma = rng.choice((2, 4))
        p = tuple(rng.randrange(sigma) for _ in range(m))
        t = list(rng.randrange(sigma) for _ in range(n))
        if rng.random() < 0.7 and m <= n:  # one verbatim copy
            start = rng.randrange(n - m + 1)
            t[start:start + m] = list(p)
        for _ in range(max(1, n // 40)):
            t[rng.randrange(n)] = sigma + rng.randrange(3)
        t = tuple(t)
    elif profile == "adversarial":
        t, p = _adversarial_instance(rng, n, m, k)
    else:
        raise ValueError(f"unknown profile: {profile}")
    return t, p, k


def _log_uniform(rng: random.Random, lo: int, hi: int) -> int:
    import math
    if hi <= lo:
        return lo
    return int(round(math.exp(rng.uniform(math.log(lo), math.log(hi)))))


def _rand_primitive(rng: random.Random, length: int, sigma: int) -> list[int]:
    while True:
        w = [rng.randrange(sigma) for _ in range(length)]
        if length == 1 or len(set(w)) > 1:
            return w


def _periodic_instance(rng, n, m, k):
    sigma = rng.choice((2, 4))
    # keep the period at most z/2 for the z the matcher will pick, so the
    # pattern lands in the highly periodic branch (< 2k disjoint z-breaks)
    z = max(3, int(m ** 0.5) // max(k, 1))
    u = _rand_primitive(rng, rng.randint(1, max(1, z // 2)), sigma)
    t = (u * (n // len(u) + 1))[:n]
    p = (u * (m // len(u) + 1))[:m]
    # plant a few breaks: corrupt single letters, < 2k disjoint breaks total
    for _ in range(rng.randint(0, max(0, k - 1))):
        pos = rng.randrange(max(1, m - 1))
        p[pos] = (p[pos] + 1 + rng.randrange(max(1, sigma - 1))) % max(2, sigma)
    for _ in range(rng.randint(0, 2 * max(1, k))):
        pos = rng.randrange(max(1, n - 1))
        t[pos] = (t[pos] + 1 + rng.randrange(max(1, sigma - 1))) % max(2, sigma)
    # random phase shift so occurrences are not all trivially aligned
    shift = rng.randrange(len(u))
    return tuple(t[shift:] + t[:shift]), tuple(p)


def _planted_instance(rng, n, m, k, mode):
    sigma = rng.choice((2, 4, 26))
    p = [rng.randrange(sigma) for _ in range(m)]
    t = [rng.randrange(sigma) for _ in range(n)]
    copies = rng.randint(1, 3)
    for _ in range(copies):
        e = rng.randint(0, k)
        occ = list(p)
        if mode == "hamming":
            for pos in rng.sample(range(m), min(e, m)):
                occ[pos] = (occ[pos] + 1 + rng.randrange(max(1, sigma - 1))) % max(2, sigma)
        else:
            for _ in range(e):
                op = rng.choice(("sub", "ins", "del")) if len(occ) > 1 else "ins"
                pos = rng.randrange(len(occ))
                if op == "sub":
                    occ[pos] = (occ[pos] + 1 + rng.randrange(max(1, sigma - 1))) % max(2, sigma)
                elif op == "ins":
                    occ.insert(pos, rng.randrange(sigma))
                else:
                    del occ[pos]
        if len(occ) <= n:
            start = rng.randrange(n - len(occ) + 1)
            t[start:start + len(occ)] = occ
    return tuple(t), tuple(p)


def _adversarial_instance(rng, n, m, k):
    """Periodic strings whose breaks sit near each other under many shifts."""
    sigma = 2 + rng.randrange(2)
    u = _rand_primitive(rng, rng.randint(1, 3), sigma)
    p = (u * (m // len(u) + 1))[:m]
    bpos = rng.randrange(max(1, m // 2), m) if m > 2 else 0
    block = _rand_primitive(rng, min(rng.randint(3, 8), m), sigma + 1)
    p[bpos:bpos + len(block)] = block[:max(0, m - bpos)]
    p = p[:m]
    t = (u * (n // len(u) + 1))[:n]
    for _ in range(rng.randint(1, 2 * max(1, k) + 1)):
        pos = rng.randrange(max(1, n - len(block)))
        t[pos:pos + len(block)] = block
    if rng.random() < 0.5 and m <= n:
        start = rng.randrange(n - m + 1)
        t[start:start + m] = p
    return tuple(t[:n]), tuple(p)


class Metrics:
    """Flat counter record for one query; monotone within the query."""

    FIELDS = ("boundaries", "pc_strings", "candidates", "verifications",
              "marks", "black_break_sum", "table_words", "skipped_windows")

    def __init__(self):
        for f in self.FIELDS:
            setattr(self, f, 0)
        self.phase_seconds: dict[str, float] = {}
        self._phase_started: dict[str, float] = {}

    def add(self, field: str, amount: int = 1) -> None:
        setattr(self, field, getattr(self, field) + amount)

    def start_phase(self, name: str) -> None:
        self._phase_started[name] = time.perf_counter()

    def end_phase(self, name: str) -> None:
        t0 = self._phase_started.pop(name, None)
        if t0 is not None:
            self.phase_seconds[name] = self.phase_seconds.get(name, 0.0) + time.perf_counter() - t0

    def as_record(self) -> str:
        lines = [f"{f}={getattr(self, f)}" for f in self.FIELDS]
        lines += [f"time_{name}={secs:.6f}" for name, secs in sorted(self.phase_seconds.items())]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "Metrics(" + ", ".join(f"{f}={getattr(self, f)}" for f in self.FIELDS) + ")"
