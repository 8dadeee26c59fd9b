"""Height of concrete words, periodic fragment counts, and the fragment-removal procedure."""

from __future__ import annotations

from dataclasses import dataclass, field

from shirshov.errors import UsageError
from shirshov.periodicity import runs_with_period
from shirshov.words import Order, Word, compare_seq, primitive_root_length


def _check_n(n: int) -> None:
    if n < 2:
        raise UsageError(f"n must be at least 2, got {n}")


@dataclass(frozen=True)
class HeightDecomposition:
    """``W = u_1^{k_1} ... u_h^{k_h}`` with every ``|u_i| < n``.

    A factor shorter than ``n`` is stored as itself with exponent 1; a longer
    one as its primitive root and exponent.
    """

    word: Word
    n: int
    factors: tuple[tuple[Word, int], ...]

    @property
    def height(self) -> int:
        return len(self.factors)

    h = height

    @property
    def essential(self) -> int:
        return sum(1 for _, k in self.factors if k >= 2)

    def validate(self) -> bool:
        rebuilt = []
        for base, k in self.factors:
            if not 0 < len(base) < self.n or k < 1:
                return False
            rebuilt.extend(base.letters * k)
        return tuple(rebuilt) == self.word.letters


def _blocks_from(s, i: int, n: int, runs: list[list[int]]):
    """Yield ``(end, root_length)`` for every factor ``s[i:end]`` that is a power of a word shorter than ``n``."""
    L = len(s)
    seen = set()
    for p in range(1, n):
        if i + p > L:
            break
        reach = i + p + runs[p][i]
        for end in range(i + p, reach + 1, p):
            if end not in seen:
                seen.add(end)
                yield end


def _runs(s, n: int) -> list[list[int]]:
    return [[]] + [runs_with_period(s, p) for p in range(1, n)]


def height_decompose(w: Word, n: int) -> HeightDecomposition:
    """Fewest factors, then fewest long factors, then earliest boundaries."""
    _check_n(n)
    s = w.letters
    L = len(s)
    runs = _runs(s, n)
    INF = (L + 1, L + 1)
    cost = [INF] * (L + 1)
    choice = [0] * (L + 1)
    cost[L] = (0, 0)
    for i in range(L - 1, -1, -1):
        best, pick = INF, 0
        for end in sorted(_blocks_from(s, i, n, runs)):
            h, e = cost[end]
            cand = (h + 1, e + (end - i >= n))
            if cand < best:
                best, pick = cand, end
        cost[i], choice[i] = best, pick
    factors, i = [], 0
    while i < L:
        end = choice[i]
        block = s[i:end]
        if end - i < n:
            factors.append((Word(block, w.alphabet), 1))
        else:
            r = primitive_root_length(block)
            factors.append((Word(block[:r], w.alphabet), (end - i) // r))
        i = end
    return HeightDecomposition(w, n, tuple(factors))


def essential_height(w: Word, n: int) -> int:
    """Fewest power blocks in a factorisation into short gaskets and powers of short words.

    Blocks shorter than ``n`` are free, blocks ``u^k`` with ``|u| < n`` and
    length at least ``n`` cost one, and neighbouring blocks must have
    different primitive roots (otherwise ``a a a a`` would count as four free
    letters).
    """
    _check_n(n)
    s = w.letters
    L = len(s)
    runs = _runs(s, n)
    # for each start keep the cheapest option and the cheapest with a different first root
    best1: list[tuple[int, tuple | None]] = [(0, None)] * (L + 1)
    best2: list[int] = [0] * (L + 1)
    big = L + 1
    for i in range(L - 1, -1, -1):
        options: dict[tuple, int] = {}
        for end in _blocks_from(s, i, n, runs):
            block = s[i:end]
            root = block[: primitive_root_length(block)]
            c1, r1 = best1[end]
            follow = best2[end] if r1 == root else c1
            if follow >= big:
                continue
            cost = follow + (end - i >= n)
            if cost < options.get(root, big):
                options[root] = cost
        ranked = sorted(options.items(), key=lambda kv: (kv[1], kv[0]))
        if not ranked:
            best1[i], best2[i] = (big, None), big
            continue
        best1[i] = (ranked[0][1], ranked[0][0])
        best2[i] = ranked[1][1] if len(ranked) > 1 else big
    return best1[0][0] if L else 0


@dataclass(frozen=True)
class PeriodicFragment:
    """``period^exponent`` at ``start``; ``gap_comparable`` describes the stretch before the next fragment."""

    period: Word
    start: int
    exponent: int
    gap_comparable: bool | None = None

    @property
    def end(self) -> int:
        return self.start + self.exponent * len(self.period)


@dataclass(frozen=True)
class FragmentCount:
    s: int
    fragments: tuple[PeriodicFragment, ...]
    s_comparable: int


def _gap_comparable(gap, period) -> bool:
    """The gap neither extends nor is extended by the periodic continuation of ``period``."""
    if not gap:
        return False
    reps = len(gap) // len(period) + 2
    return compare_seq(gap, period * reps) is not Order.INCOMPARABLE


def _fragment_windows(s, n: int) -> list[tuple[int, int, int]]:
    """``(end, start, p)`` for every occurrence of ``x^{2n}`` with ``|x| = p < n``."""
    out = []
    for p in range(1, n):
        ext = runs_with_period(s, p)
        need = (2 * n - 1) * p
        for i in range(len(s) - 2 * n * p + 1):
            if ext[i] >= need:
                out.append((i + 2 * n * p, i, p))
    out.sort()
    return out


def _greedy(s, windows, n: int, need_comparable: bool):
    picked: list[tuple[int, int, int]] = []
    for end, start, p in windows:
        if picked:
            prev_end, prev_start, prev_p = picked[-1]
            if start - prev_end <= n:
                continue
            if need_comparable and not _gap_comparable(s[prev_end:start], s[prev_start:prev_start + prev_p]):
                continue
        picked.append((end, start, p))
    return picked


def count_periodic_fragments(w: Word, n: int) -> FragmentCount:
    """Disjoint fragments ``x^{2n}`` with ``|x| < n``, consecutive ones more than ``n`` letters apart.

    Windows are taken greedily by earliest end, which maximises their number.
    Each fragment records whether the gap after it is comparable with its
    period; ``s_comparable`` repeats the greedy pass requiring that too.
    """
    _check_n(n)
    s = w.letters
    windows = _fragment_windows(s, n)
    picked = _greedy(s, windows, n, False)
    frags = []
    for idx, (end, start, p) in enumerate(picked):
        flag = None
        if idx + 1 < len(picked):
            flag = _gap_comparable(s[end:picked[idx + 1][1]], s[start:start + p])
        frags.append(PeriodicFragment(Word(s[start:start + p], w.alphabet), start, 2 * n, flag))
    strict = _greedy(s, windows, n, True)
    return FragmentCount(len(frags), tuple(frags), len(strict))


# --- fragment removal -----------------------------------------------------


@dataclass(frozen=True)
class RemovalStep:
    """One removal ``W_{k-1} = u_k x^{4n + r1 + r2} y_k``; ``index`` is ``|u_k|``."""

    index: int
    period: Word
    exponent: int
    r1: int
    r2: int
    positions: tuple[int, ...]
    pieces: int
    remainder: Word

    @property
    def fragment(self) -> Word:
        return self.period * self.exponent


@dataclass(frozen=True)
class RemovalTrace:
    word: Word
    n: int
    steps: tuple[RemovalStep, ...]
    tedious: dict[int, int] = field(repr=False)
    reason: str = ""

    @property
    def t(self) -> int:
        return (len(self.steps) - 1) // 4 if self.steps else 0

    def s_counts(self) -> dict[int, int]:
        """``s(k)``: steps among the first ``4t`` whose fragment splits into ``k`` pieces of ``W``."""
        counts: dict[int, int] = {}
        for step in self.steps[: 4 * self.t]:
            counts[step.pieces] = counts.get(step.pieces, 0) + 1
        return counts

    def piece_bound_holds(self) -> bool:
        """At least ``2t`` of the first ``4t`` fragments come in one or two pieces."""
        c = self.s_counts()
        return c.get(1, 0) + c.get(2, 0) >= 2 * self.t

    def weighted_bound_holds(self) -> bool:
        """``sum_k k s(k) <= 10t``."""
        return sum(k * v for k, v in self.s_counts().items()) <= 10 * self.t

    def reinsert(self) -> Word:
        """Put the removed fragments back, last step first."""
        letters = list(self.steps[-1].remainder.letters) if self.steps else list(self.word.letters)
        for step in reversed(self.steps):
            letters[step.index:step.index] = step.fragment.letters
        return Word(tuple(letters), self.word.alphabet)

    def periodic_subwords(self) -> list[tuple[int, int]]:
        """Spans ``z'_j`` built from every other single- or double-piece fragment in order of position."""
        s = self.word.letters
        chosen = []
        for step in self.steps[: 4 * self.t] if self.t else self.steps:
            if step.pieces > 2:
                continue
            spans = _contiguous_spans(step.positions)
            start, end = max(spans, key=lambda ab: (ab[1] - ab[0], -ab[0])) if step.pieces == 2 else spans[0]
            first = spans[0][0] == start
            m = len(step.period)
            q = start if first else start + (end - start) % m
            chosen.append((start, q, m))
        chosen.sort()
        out = []
        for _, q, m in chosen[::2]:
            ext = runs_with_period(s, m)
            copies = 1 + ext[q] // m
            out.append((q, min(len(s), q + (copies + 1) * m)))
        return out

    def periodic_subwords_disjoint(self) -> bool:
        spans = sorted(self.periodic_subwords())
        return all(a[1] <= b[0] for a, b in zip(spans, spans[1:]))


def _contiguous_spans(positions) -> list[tuple[int, int]]:
    spans = []
    for p in sorted(positions):
        if spans and spans[-1][1] == p:
            spans[-1][1] = p + 1
        else:
            spans.append([p, p + 1])
    return [tuple(x) for x in spans]


def _leftmost_power(s, exponent: int) -> tuple[int, int] | None:
    """Leftmost start of some ``x^exponent``, with the shortest such ``x`` there."""
    best = None
    for p in range(1, len(s) // exponent + 1):
        ext = runs_with_period(s, p)
        need = (exponent - 1) * p
        limit = len(s) - exponent * p + 1 if best is None else min(best[0], len(s) - exponent * p + 1)
        for i in range(limit):
            if ext[i] >= need:
                best = (i, p)
                break
    return best


def run_algorithm_5_1(w: Word, n: int, max_steps: int = 10 ** 6, min_length: int = 0) -> RemovalTrace:
    """Repeatedly cut out the leftmost ``x^{4n}`` (``x`` non-cyclic) together with all adjacent copies of ``x``.

    Stops when no such power remains, after ``max_steps`` removals, or once
    the remainder is shorter than ``min_length``.  Positions inside a removed
    fragment get tedious type 0; the ``n`` positions just before it get types
    ``1..n`` counted from the fragment, keeping the smaller type on repeats.
    """
    _check_n(n)
    if max_steps < 0:
        raise UsageError("max_steps must be non-negative")
    need = 4 * n
    current = list(range(len(w)))
    s_all = w.letters
    tedious: dict[int, int] = {}
    steps = []
    reason = "max_steps reached"
    while len(steps) < max_steps:
        if len(current) < min_length:
            reason = "remainder shorter than threshold"
            break
        s = tuple(s_all[i] for i in current)
        found = _leftmost_power(s, need)
        if found is None:
            reason = f"no power with exponent {need}"
            break
        i, p = found
        x = s[i:i + p]
        r1 = 0
        while i - (r1 + 1) * p >= 0 and s[i - (r1 + 1) * p:i - r1 * p] == x:
            r1 += 1
        ext = runs_with_period(s, p)
        total = 1 + ext[i] // p
        r2 = total - need
        lo, hi = i - r1 * p, i + total * p
        removed = tuple(current[lo:hi])
        for pos in removed:
            tedious[pos] = 0
        for typ, pos in enumerate(reversed(current[max(0, lo - n):lo]), start=1):
            tedious[pos] = min(typ, tedious.get(pos, typ))
        current = current[:lo] + current[hi:]
        remainder = Word(tuple(s_all[j] for j in current), w.alphabet)
        steps.append(
            RemovalStep(lo, Word(x, w.alphabet), need + r1 + r2, r1, r2, removed,
                        len(_contiguous_spans(removed)), remainder)
        )
    return RemovalTrace(w, n, tuple(steps), tedious, reason)
