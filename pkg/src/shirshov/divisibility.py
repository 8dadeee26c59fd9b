"""Witness-producing detectors for n-divisibility (ordinary and tail sense) and n-cancellability."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from shirshov.errors import UsageError
from shirshov.periodicity import find_power
from shirshov.witnesses import (
    CancellabilityVerdict,
    OrdinaryDivision,
    TailDivision,
    VerdictKind,
)
from shirshov.words import Word, lce_table

__all__ = [
    "OrdinaryDivision",
    "TailDivision",
    "CancellabilityVerdict",
    "VerdictKind",
    "LemmaStatus",
    "Lemma210Report",
    "max_ordinary_divisibility",
    "max_tail_divisibility",
    "is_n_cancellable",
    "check_lemma_2_10",
    "p_nd",
]


def p_nd(n: int, d: int) -> int:
    """Number of chain colours used by the tail-poset argument: ``4nd - 1``."""
    return 4 * n * d - 1


def max_ordinary_divisibility(w: Word) -> tuple[int, OrdinaryDivision]:
    """Largest ``n`` with ``w = v u_1 ... u_n``, ``u_1 > ... > u_n``, plus one witness.

    ``g[i][j]`` is the longest strictly decreasing run of consecutive blocks
    that starts with ``w[i:j]`` and ends exactly at ``|w|``.  Block ``w[i:j]``
    beats ``w[j:k]`` iff the first mismatch of the tails at ``i`` and ``j`` lies
    inside both blocks and favours ``i``, so the admissible ``k`` form a suffix
    range and a running maximum makes the whole table quadratic.

    Among witnesses of maximal length the one with the lexicographically
    smallest boundary vector is returned.
    """
    s = w.letters
    L = len(s)
    if L == 0:
        raise UsageError("max_ordinary_divisibility needs a nonempty word")
    lce = lce_table(s)
    g = [[0] * (L + 2) for _ in range(L + 1)]
    # best[j][k] = max(g[j][k:]) ; g[j][L+1] stays 0 as sentinel
    best = [[0] * (L + 2) for _ in range(L + 1)]
    for i in range(L - 1, -1, -1):
        gi, bi, lrow = g[i], best[i], lce[i]
        gi[L] = 1
        for j in range(L - 1, i, -1):
            c = lrow[j]
            if c < j - i and j + c < L and s[i + c] > s[j + c]:
                tail_best = best[j][j + c + 1]
                if tail_best:
                    gi[j] = tail_best + 1
        for k in range(L, i, -1):
            bi[k] = max(gi[k], bi[k + 1])

    n_max, start, end = 0, 0, L
    for i in range(L):
        for j in range(i + 1, L + 1):
            if g[i][j] > n_max:
                n_max, start, end = g[i][j], i, j
    bounds = [start, end]
    i, j, need = start, end, n_max - 1
    while need:
        c = lce[i][j]
        k = j + c + 1
        while g[j][k] != need:
            k += 1
        bounds.append(k)
        i, j, need = j, k, need - 1
    return n_max, OrdinaryDivision(tuple(bounds))


def max_tail_divisibility(w: Word) -> tuple[int, TailDivision]:
    """Longest chain of tails ``t_{p_1} > t_{p_2} > ...`` with ``p_1 < p_2 < ...``.

    Prefix-related tails never count as decreasing.  The witness is the
    lexicographically smallest position vector among longest chains.
    """
    s = w.letters
    L = len(s)
    if L == 0:
        raise UsageError("max_tail_divisibility needs a nonempty word")
    lce = lce_table(s)
    h = [1] * L
    for p in range(L - 2, -1, -1):
        row, bestp = lce[p], 1
        for q in range(p + 1, L):
            c = row[q]
            if c < L - q and s[p + c] > s[q + c] and h[q] + 1 > bestp:
                bestp = h[q] + 1
        h[p] = bestp
    m = max(h)
    p = h.index(m)
    chain = [p]
    while h[p] > 1:
        row = lce[p]
        for q in range(p + 1, L):
            c = row[q]
            if h[q] == h[p] - 1 and c < L - q and s[p + c] > s[q + c]:
                break
        chain.append(q)
        p = q
    return m, TailDivision(tuple(chain))


def is_n_cancellable(w: Word, n: int, d: int) -> CancellabilityVerdict:
    """``DIVISIBLE`` (exactly ``n`` blocks) if ordinary ``n``-divisible, else ``POWER`` if some ``u^d`` occurs."""
    if n < 1 or d < 2:
        raise UsageError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    if len(w):
        n_max, division = max_ordinary_divisibility(w)
        if n_max >= n:
            return CancellabilityVerdict.divisible(division.trimmed(n))
    power = find_power(w, d)
    if power is not None:
        return CancellabilityVerdict.of_power(power)
    return CancellabilityVerdict.no()


class LemmaStatus(enum.Enum):
    VACUOUS = "vacuous"
    CONFIRMED = "confirmed"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass(frozen=True)
class Lemma210Report:
    status: LemmaStatus
    tail_divisibility: int
    threshold: int
    verdict: CancellabilityVerdict | None = None


def check_lemma_2_10(w: Word, n: int, d: int) -> Lemma210Report:
    """A ``4nd``-divisible word (tail sense) must be ``n``-cancellable."""
    if n < 1 or d < 2:
        raise UsageError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    threshold = 4 * n * d
    m = max_tail_divisibility(w)[0] if len(w) else 0
    if m < threshold:
        return Lemma210Report(LemmaStatus.VACUOUS, m, threshold)
    verdict = is_n_cancellable(w, n, d)
    status = LemmaStatus.COUNTEREXAMPLE if verdict.kind is VerdictKind.NO else LemmaStatus.CONFIRMED
    return Lemma210Report(status, m, threshold, verdict)
