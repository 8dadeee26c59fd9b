"""Detection of d-th powers and the periodicity lemmas behind the height bounds."""

from __future__ import annotations

from dataclasses import dataclass

from shirshov.errors import UsageError
from shirshov.witnesses import CancellabilityVerdict, OrdinaryDivision, PowerWitness
from shirshov.words import Order, Word, compare_seq

__all__ = [
    "PowerWitness",
    "Lemma26Result",
    "find_power",
    "runs_with_period",
    "check_lemma_2_6",
    "check_lemma_2_7",
    "extract_division_from_copies",
]


def runs_with_period(s, p: int) -> list[int]:
    """``ext[i]`` = length of the common prefix of ``s[i:]`` and ``s[i+p:]``."""
    n = len(s)
    ext = [0] * (n + 1)
    for i in range(n - p - 1, -1, -1):
        if s[i] == s[i + p]:
            ext[i] = ext[i + 1] + 1
    return ext


def find_power(w: Word, d: int) -> PowerWitness | None:
    """Smallest-period, then leftmost, occurrence of some ``u^d`` in ``w``.

    The exponent reported is the largest ``e`` with ``u^e`` starting at that
    position, so it may exceed ``d``.
    """
    if d < 2:
        raise UsageError(f"power exponent must be at least 2, got {d}")
    s = w.letters
    n = len(s)
    for p in range(1, n // d + 1):
        ext = runs_with_period(s, p)
        need = (d - 1) * p
        for i in range(n - d * p + 1):
            if ext[i] >= need:
                return PowerWitness(w[i:i + p], i, 1 + ext[i] // p)
    return None


@dataclass(frozen=True)
class Lemma26Result:
    comparable: bool
    power: PowerWitness | None
    incomparable_pair: tuple[int, int] | None = None

    @property
    def holds(self) -> bool:
        return self.comparable or self.power is not None


def check_lemma_2_6(w: Word, d: int) -> Lemma26Result:
    """Either the first ``|w| // d`` tails are pairwise comparable or ``w`` has a ``d``-th power.

    When two of those tails are prefix-related the witness is built the way
    the argument goes: the shorter tail is a beginning of the longer, so the
    longer one repeats their offset ``u`` at least ``d`` times.  The printed
    statement speaks of "a period of length d"; what is produced is ``u^e``
    with ``e >= d`` and ``|u| < |w| / d``.
    """
    if d < 2:
        raise UsageError(f"d must be at least 2, got {d}")
    if len(w) < d:
        raise UsageError(f"word of length {len(w)} shorter than d={d}")
    s = w.letters
    n = len(s)
    m = n // d
    for i in range(m):
        for j in range(i + 1, m):
            # tails are distinct, so a prefix relation is the only way to be incomparable
            if s[j:] == s[i:i + n - j]:
                q = j - i
                exponent = (n - i) // q
                return Lemma26Result(False, PowerWitness(w[i:j], i, exponent), (i, j))
    return Lemma26Result(True, find_power(w, d))


def check_lemma_2_7(v: Word, k: int, t: int) -> PowerWitness | None:
    """Few distinct length-``k`` factors in a word of length ``k*t`` force a ``t``-th power.

    If ``v`` is literally ``x^t`` with ``|x| = k`` that witness is returned.
    Otherwise, when ``v`` has at most ``k`` distinct factors of length ``k``, the
    smallest ``t``-th power inside ``v`` is returned (``v = x^t`` does not
    follow in general: ``aaab`` with ``k = t = 2``).  ``None`` when ``v`` has more
    than ``k`` distinct factors.
    """
    if k < 1 or t < 1:
        raise UsageError("k and t must be positive")
    if len(v) != k * t:
        raise UsageError(f"expected a word of length k*t={k * t}, got {len(v)}")
    s = v.letters
    distinct = {s[i:i + k] for i in range(len(s) - k + 1)}
    if len(distinct) > k:
        return None
    if t >= 2 and s == s[:k] * t:
        return PowerWitness(v[:k], 0, t)
    if t < 2:
        return None
    return find_power(v, t)


def _disjoint_occurrences(host, pattern, count: int) -> list[int]:
    found, i, m = [], 0, len(pattern)
    while len(found) < count and i + m <= len(host):
        if host[i:i + m] == pattern:
            found.append(i)
            i += m
        else:
            i += 1
    return found


def extract_division_from_copies(w: Word, u: Word, n: int, d: int) -> CancellabilityVerdict:
    """Turn ``n`` disjoint copies of ``u`` (``|u| = n*d``) into a cancellation certificate.

    The tails of ``u`` starting at its first ``n`` letters are ranked in
    decreasing order and the ``r``-th largest is read off the ``r``-th copy
    from the left.  Stretching each picked tail up to the start of the next
    yields an ordinary ``n``-division of ``w``.  If two of those tails are
    prefix-related, ``u`` (hence ``w``) carries a power instead.
    """
    if n < 1 or d < 1:
        raise UsageError("n and d must be positive")
    if n >= 3 and d < 2:
        raise UsageError("d = 1 only yields a usable power witness for n <= 2")
    if u.alphabet != w.alphabet:
        raise UsageError("u and W use different alphabets")
    if len(u) != n * d:
        raise UsageError(f"|u| must equal n*d = {n * d}, got {len(u)}")
    s, t = w.letters, u.letters
    copies = _disjoint_occurrences(s, t, n)
    if len(copies) < n:
        raise UsageError(f"u occurs only {len(copies)} times disjointly, need {n}")

    tails = list(range(n))
    for a in range(n):
        for b in range(a + 1, n):
            if compare_seq(t[a:], t[b:]) is Order.INCOMPARABLE:
                q = b - a
                start = copies[0] + a
                ext = runs_with_period(s, q)
                return CancellabilityVerdict.of_power(PowerWitness(w[start:start + q], start, 1 + ext[start] // q))

    # pairwise comparable and distinct: sort descending
    tails.sort(key=lambda a: t[a:], reverse=True)
    starts = [copies[r] + tails[r] for r in range(n)]
    return CancellabilityVerdict.divisible(OrdinaryDivision(tuple(starts) + (len(s),)))
