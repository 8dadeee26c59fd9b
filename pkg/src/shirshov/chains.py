"""Tail posets, Dilworth chain covers, and the colour traces measured along a word.

The tail order puts ``u < v`` when ``u`` is lexicographically smaller *and*
starts further left.  Covering it by the fewest chains and colouring each
position by its chain gives the ``B^p(i)`` tuples: for every colour the
``p``-beginning of the most recent tail of that colour, or the empty word
(the sentinel below everything) if that colour has not appeared yet.
"""

from __future__ import annotations

import bisect
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from shirshov.divisibility import VerdictKind, is_n_cancellable, p_nd
from shirshov.errors import UsageError
from shirshov.periodicity import check_lemma_2_6
from shirshov.witnesses import OrdinaryDivision
from shirshov.words import Order, Word, compare_seq, cyclic_shifts, is_noncyclic

EXHAUSTIVE_LIMIT = 24


class Poset:
    """Strict partial order on ``0..size-1``; the given pairs are closed transitively."""

    def __init__(self, size: int, relations: Iterable[tuple[int, int]] = ()):
        self.size = size
        succ = [0] * size
        for a, b in relations:
            succ[a] |= 1 << b
        for k in range(size):
            bit = 1 << k
            sk = succ[k]
            for i in range(size):
                if succ[i] & bit:
                    succ[i] |= sk
        for a in range(size):
            if succ[a] >> a & 1:
                raise UsageError(f"relation has a cycle through {a}")
        self._succ = succ

    @classmethod
    def from_predicate(cls, size: int, less: Callable[[int, int], bool]) -> "Poset":
        return cls(size, ((a, b) for a in range(size) for b in range(size) if a != b and less(a, b)))

    def less(self, a: int, b: int) -> bool:
        return bool(self._succ[a] >> b & 1)

    def comparable(self, a: int, b: int) -> bool:
        return self.less(a, b) or self.less(b, a)

    def successors(self, a: int) -> list[int]:
        s = self._succ[a]
        return [b for b in range(self.size) if s >> b & 1]

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.size) for b in self.successors(a)]

    def is_chain(self, elements: Sequence[int]) -> bool:
        return all(self.comparable(a, b) for a, b in itertools.combinations(elements, 2))

    def is_antichain(self, elements: Sequence[int]) -> bool:
        return not any(self.comparable(a, b) for a, b in itertools.combinations(elements, 2))


@dataclass(frozen=True)
class ChainCover:
    assignment: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.chains)

    def validate(self, poset: Poset) -> bool:
        if sorted(x for c in self.chains for x in c) != list(range(poset.size)):
            return False
        return all(poset.is_chain(c) for c in self.chains) and all(
            self.assignment[x] == colour for colour, c in enumerate(self.chains) for x in c
        )


def _maximum_matching(poset: Poset) -> tuple[list[int], list[int]]:
    """Kuhn's augmenting paths on the split graph ``a_left -> b_right`` for ``a < b``."""
    n = poset.size
    adj = [poset.successors(a) for a in range(n)]
    match_left = [-1] * n
    match_right = [-1] * n
    for root in range(n):
        parent = {}
        queue = deque([root])
        seen_left = {root}
        free_right = -1
        while queue and free_right < 0:
            x = queue.popleft()
            for y in adj[x]:
                if y in parent:
                    continue
                parent[y] = x
                if match_right[y] < 0:
                    free_right = y
                    break
                nxt = match_right[y]
                if nxt not in seen_left:
                    seen_left.add(nxt)
                    queue.append(nxt)
        y = free_right
        while y >= 0:
            x = parent[y]
            prev = match_left[x]
            match_left[x], match_right[y] = y, x
            y = prev
    return match_left, match_right


def _cover_from_matching(n: int, match_left: list[int], match_right: list[int]) -> ChainCover:
    chains = []
    for head in range(n):
        if match_right[head] >= 0:
            continue
        chain = [head]
        while match_left[chain[-1]] >= 0:
            chain.append(match_left[chain[-1]])
        chains.append(tuple(chain))
    chains.sort(key=lambda c: c[0])
    assignment = [0] * n
    for colour, chain in enumerate(chains):
        for x in chain:
            assignment[x] = colour
    return ChainCover(tuple(assignment), tuple(chains))


def chain_cover(poset: Poset) -> ChainCover:
    """Minimum chain cover via maximum bipartite matching; colours follow chain heads."""
    match_left, match_right = _maximum_matching(poset)
    return _cover_from_matching(poset.size, match_left, match_right)


def max_antichain(poset: Poset, method: str = "matching") -> tuple[int, ...]:
    """A maximum antichain.

    ``"matching"`` reads it off a minimum vertex cover (König);
    ``"exhaustive"`` is a branch-and-bound search, only for tiny posets.
    """
    n = poset.size
    if method == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise UsageError(f"exhaustive antichain search limited to {EXHAUSTIVE_LIMIT} elements")
        return _antichain_exhaustive(poset)
    if method != "matching":
        raise UsageError(f"unknown method {method!r}")
    match_left, match_right = _maximum_matching(poset)
    reach_left, reach_right = set(), set()
    queue = deque(x for x in range(n) if match_left[x] < 0)
    reach_left.update(queue)
    while queue:
        x = queue.popleft()
        for y in poset.successors(x):
            if y in reach_right:
                continue
            reach_right.add(y)
            z = match_right[y]
            if z >= 0 and z not in reach_left:
                reach_left.add(z)
                queue.append(z)
    antichain = tuple(x for x in range(n) if x in reach_left and x not in reach_right)
    assert len(antichain) == n - sum(1 for x in match_left if x >= 0)
    return antichain


def _antichain_exhaustive(poset: Poset) -> tuple[int, ...]:
    n = poset.size
    best: list[int] = []

    def grow(candidates: list[int], chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) + len(candidates) <= len(best):
            return
        if not candidates:
            best = list(chosen)
            return
        x, rest = candidates[0], candidates[1:]
        grow([y for y in rest if not poset.comparable(x, y)], chosen + [x])
        grow(rest, chosen)

    grow(list(range(n)), [])
    return tuple(best)


def patience_chain_cover(keys: Sequence) -> ChainCover:
    """Greedy cover of the order ``i < j`` iff ``i < j`` and ``keys[i] < keys[j]`` (distinct keys).

    Each element joins the chain whose top key is the largest below its own;
    the chain count equals the longest decreasing subsequence, hence is minimal.
    """
    tops: list = []
    owners: list[int] = []
    chains: list[list[int]] = []
    for i, key in enumerate(keys):
        slot = bisect.bisect_left(tops, key) - 1
        if slot < 0:
            chains.append([i])
            tops.insert(0, key)
            owners.insert(0, len(chains) - 1)
        else:
            chains[owners[slot]].append(i)
            tops[slot] = key
            # keep tops sorted: the updated key is still below tops[slot + 1]
    ordered = sorted((tuple(c) for c in chains), key=lambda c: c[0])
    assignment = [0] * len(keys)
    for colour, chain in enumerate(ordered):
        for x in chain:
            assignment[x] = colour
    return ChainCover(tuple(assignment), tuple(ordered))


# --- the tail poset -------------------------------------------------------


@dataclass(frozen=True)
class TailPoset:
    word: Word
    d: int
    positions: tuple[int, ...]
    poset: Poset = field(repr=False)


def omega_size(w: Word, d: int) -> int:
    return len(w) // d


def build_tail_poset(w: Word, d: int) -> TailPoset:
    """Tails starting in the first ``|w| // d`` positions; ``i < j`` iff ``tail_i < tail_j`` and ``i < j``."""
    if d < 1:
        raise UsageError(f"d must be positive, got {d}")
    if len(w) < d:
        raise UsageError(f"word of length {len(w)} shorter than d={d}")
    s = w.letters
    m = omega_size(w, d)
    relations = [
        (i, j) for i in range(m) for j in range(i + 1, m) if compare_seq(s[i:], s[j:]) is Order.LESS
    ]
    return TailPoset(w, d, tuple(range(m)), Poset(m, relations))


def tail_chain_cover(w: Word, d: int, method: str = "matching") -> ChainCover:
    """Chain cover of the tail poset; ``"patience"`` is valid when the tails are pairwise comparable."""
    tp = build_tail_poset(w, d)
    if method == "matching":
        return chain_cover(tp.poset)
    if method == "patience":
        m = len(tp.positions)
        s = w.letters
        # comparable tails: tuple order on tails coincides with the poset's order
        return patience_chain_cover([s[i:] for i in range(m)])
    raise UsageError(f"unknown method {method!r}")


@dataclass(frozen=True)
class BSetTrace:
    """``entries[i][j]``: the ``p``-beginning of the latest tail of colour ``j`` at or before ``i``."""

    word: Word
    n: int
    d: int
    p: int
    colours: tuple[int, ...]
    entries: tuple[tuple[Word, ...], ...]
    overflow: bool

    @property
    def width(self) -> int:
        return len(self.entries[0]) if self.entries else 0


def b_set_trace(w: Word, n: int, d: int, p: int, cover: ChainCover | None = None) -> BSetTrace:
    """Colour trace over the restricted tail set.

    ``overflow`` flags a cover wider than ``4nd - 1``: then ``w`` carries that
    many plus one decreasing tails and the counting argument does not apply.
    """
    if n < 1 or p < 1:
        raise UsageError("n and p must be positive")
    if cover is None:
        cover = tail_chain_cover(w, d)
    colours_allowed = p_nd(n, d)
    width = max(cover.count, colours_allowed)
    s = w.letters
    theta = Word((), w.alphabet)
    latest: list[Word] = [theta] * width
    rows = []
    for i, colour in enumerate(cover.assignment):
        latest[colour] = Word(s[i:i + p], w.alphabet)
        rows.append(tuple(latest))
    return BSetTrace(w, n, d, p, cover.assignment, tuple(rows), cover.count > colours_allowed)


def longest_constant_run(rows: Sequence) -> int:
    """Length of the longest stretch of equal consecutive rows."""
    if not rows:
        raise UsageError("empty trace")
    best = run = 1
    for a, b in zip(rows, rows[1:]):
        run = run + 1 if a == b else 1
        best = max(best, run)
    return best


def psi_measure(trace: BSetTrace) -> int:
    return longest_constant_run(trace.entries)


def psi_profile(w: Word, n: int, d: int, levels: Iterable[int]) -> dict[int, int]:
    cover = tail_chain_cover(w, d)
    return {p: psi_measure(b_set_trace(w, n, d, p, cover)) for p in levels}


@dataclass(frozen=True)
class PsiLemmaReport:
    a: int
    k: int
    psi_a: int
    psi_ka: int
    bound: int
    within_hypotheses: bool

    @property
    def satisfied(self) -> bool:
        return self.psi_a <= self.bound


def check_basic_lemma_psi(w: Word, n: int, d: int, a: int, k: int) -> PsiLemmaReport:
    """``psi(a) <= (4nd-1)^k psi(ka) + ka`` measured on ``w``.

    ``within_hypotheses`` is true when ``w`` is not ``n``-cancellable; only then
    is a violation a contradiction of the lemma.
    """
    if a < 1 or k < 1:
        raise UsageError("a and k must be positive")
    profile = psi_profile(w, n, d, (a, k * a))
    bound = p_nd(n, d) ** k * profile[k * a] + k * a
    within = d >= 2 and len(w) >= d and is_n_cancellable(w, n, d).kind is VerdictKind.NO
    return PsiLemmaReport(a, k, profile[a], profile[k * a], bound, within)


# --- word cycles and the order on their shifts ---------------------------


@dataclass(frozen=True)
class OmegaPrime:
    """Shifts ``v(i, j)`` of non-cyclic words of common length ``m``.

    ``elements[e] = (i, j, word)`` with 1-based cycle index ``i`` and shift ``j``;
    in ``poset``, ``e < f`` means ``v_f`` is lexicographically larger *and*
    has the larger cycle index.
    """

    cycles: tuple[Word, ...]
    m: int
    elements: tuple[tuple[int, int, Word], ...]
    poset: Poset = field(repr=False)


def build_omega_prime(cycles: Sequence[Word], m: int) -> OmegaPrime:
    for c in cycles:
        if len(c) != m:
            raise UsageError(f"cycle {c} does not have length {m}")
        if not is_noncyclic(c):
            raise UsageError(f"cycle {c} is a proper power")
    elements = []
    for i, base in enumerate(cycles, start=1):
        cycle = cyclic_shifts(base)
        for j in range(1, m + 1):
            elements.append((i, j, cycle.shift(j)))
    rel = [
        (e, f)
        for e, (ie, _, we) in enumerate(elements)
        for f, (i_f, _, wf) in enumerate(elements)
        if i_f > ie and wf.letters > we.letters
    ]
    return OmegaPrime(tuple(cycles), m, tuple(elements), Poset(len(elements), rel))


def _find_power_from(s, base, times: int, start: int) -> int:
    pattern = base * times
    for i in range(start, len(s) - len(pattern) + 1):
        if s[i:i + len(pattern)] == pattern:
            return i
    return -1


def antichain_to_division(
    w: Word, omega: OmegaPrime, antichain: Sequence[int], n: int
) -> tuple[OrdinaryDivision | None, str]:
    """Realise an antichain of ``n`` shifts as an ordinary ``n``-division of ``w``.

    Cycle ``i`` must appear in ``w`` as a fragment ``v_i^{2n}``, fragments in
    cycle order.  Shifts sharing a cycle are read from successive ``v_i^2``
    copies inside that fragment, larger shift first.
    """
    if len(antichain) != n:
        return None, f"antichain has {len(antichain)} elements, need {n}"
    if not omega.poset.is_antichain(antichain):
        return None, "elements are not pairwise unrelated"
    m = omega.m
    picked = sorted((omega.elements[e] for e in antichain), key=lambda t: (t[0], tuple(-x for x in t[2].letters)))
    s = w.letters
    starts: list[int] = []
    cursor = 0
    for i, group in itertools.groupby(picked, key=lambda t: t[0]):
        group = list(group)
        base = omega.cycles[i - 1].letters
        occ = _find_power_from(s, base, 2 * n, cursor)
        if occ < 0:
            return None, f"no occurrence of cycle {i} raised to {2 * n} after position {cursor}"
        for r, (_, j, _) in enumerate(group):
            starts.append(occ + 2 * m * r + (j - 1))
        cursor = occ + 2 * m * n
    division = OrdinaryDivision(tuple(starts) + (len(s),))
    if not division.validate(w):
        return None, "constructed blocks do not decrease"
    return division, "ok"


@dataclass(frozen=True)
class PhiReport:
    n: int
    m: int
    representatives: tuple[Word, ...]
    colours: tuple[int, ...]
    width: int
    traces: dict[int, tuple[tuple[Word, ...], ...]]
    phi: dict[int, int]
    lemma_4_8: bool | None
    lemma_4_10: dict[tuple[int, int], bool]
    lemma_4_10_pnd: dict[tuple[int, int], bool] | None
    within_hypotheses: bool


def same_cycle(u: Word, v: Word) -> bool:
    return len(u) == len(v) and v in cyclic_shifts(u)


def phi_measure(
    w: Word,
    n: int,
    equivalence: Callable[[Word, Word], bool] = same_cycle,
    m: int | None = None,
    d: int | None = None,
    fragments=None,
) -> PhiReport | None:
    """``C^alpha`` traces and ``phi(alpha)`` for the periodic fragments of ``w`` with period length ``m``.

    Time runs over fragment representatives (one per equivalence class, in
    order of first appearance).  For each colour the entry is the
    ``alpha``-beginning of the first shift of that colour in the latest cycle
    holding one.  Returns ``None`` when no fragment has period length ``m``.
    """
    from shirshov.height import count_periodic_fragments

    if n < 2:
        raise UsageError("n must be at least 2")
    if fragments is None:
        fragments = count_periodic_fragments(w, n).fragments
    if m is None:
        if not fragments:
            return None
        m = len(fragments[0].period)
    reps: list[Word] = []
    for frag in fragments:
        x = frag.period
        if len(x) != m:
            continue
        if not any(equivalence(x, r) for r in reps):
            reps.append(x)
    if not reps:
        return None
    omega = build_omega_prime(reps, m)
    cover = chain_cover(omega.poset)
    q = n - 1
    width = max(cover.count, q)
    theta = Word((), w.alphabet)

    first_shift_of_colour: list[dict[int, int]] = [dict() for _ in reps]
    for e, (i, j, _) in enumerate(omega.elements):
        first_shift_of_colour[i - 1].setdefault(cover.assignment[e], j)
    present = {(i, j) for i, j, _ in omega.elements}

    traces, phi = {}, {}
    for alpha in range(1, m + 1):
        latest = [theta] * width
        rows = []
        for i in range(1, len(reps) + 1):
            for colour, j in first_shift_of_colour[i - 1].items():
                # every letter of the alpha-beginning must start some element of Omega'
                if all((i, (j - 1 + t) % m + 1) in present for t in range(alpha)):
                    shift = omega.elements[(i - 1) * m + (j - 1)][2]
                    latest[colour] = shift[:alpha]
            rows.append(tuple(latest))
        traces[alpha] = tuple(rows)
        phi[alpha] = longest_constant_run(rows)

    lemma_4_8 = phi[m] * m <= q
    lemma_4_10 = {
        (a, k): phi[a] <= q ** k * phi[k * a] for a in range(1, m + 1) for k in range(1, m // a + 1)
    }
    lemma_4_10_pnd = None
    if d is not None:
        lemma_4_10_pnd = {
            (a, k): phi[a] <= p_nd(n, d) ** k * phi[k * a] for a in range(1, m + 1) for k in range(1, m // a + 1)
        }
    from shirshov.divisibility import max_ordinary_divisibility

    within = max_ordinary_divisibility(w)[0] < n if len(w) else True
    return PhiReport(
        n, m, tuple(reps), cover.assignment, width, traces, phi, lemma_4_8, lemma_4_10, lemma_4_10_pnd, within
    )


def check_lemma_2_6_on_omega(w: Word, d: int) -> bool:
    """True when the restricted tails are pairwise comparable (so the tail order is two-dimensional)."""
    return check_lemma_2_6(w, d).comparable
