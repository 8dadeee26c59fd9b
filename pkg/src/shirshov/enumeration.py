"""Counting and exhaustive-search experiments: decreasing-pattern avoiding permutations and longest avoiders."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from shirshov import bounds
from shirshov.divisibility import max_ordinary_divisibility, max_tail_divisibility
from shirshov.errors import BudgetExceeded, UsageError
from shirshov.words import Alphabet, Word

XI_MAX_K = 11
SENSES = ("ordinary", "tail")


@lru_cache(maxsize=None)
def _count(c: tuple[int, ...], limit: int) -> int:
    # c[j]: for the j-th smallest unused value, how many patience tops exceed it,
    # i.e. the longest decreasing run it would end minus one
    if not c:
        return 1
    total = 0
    for i, ci in enumerate(c):
        if ci + 1 >= limit:
            continue
        bumped = tuple(max(x, ci + 1) for x in c[:i]) + c[i + 1:]
        total += _count(bumped, limit)
    return total


def xi(k: int, n: int) -> int:
    """Permutations of ``k`` symbols without a decreasing subsequence of length ``n``."""
    if n < 2 or k < 0:
        raise UsageError(f"need n >= 2 and k >= 0, got k={k}, n={n}")
    if k > XI_MAX_K:
        raise BudgetExceeded(f"k={k} exceeds the exact enumeration limit {XI_MAX_K}")
    return _count((0,) * k, n)


def latyshev_check(k: int, n: int) -> bool:
    """``xi(k, n) <= (n - 1)^(2k)``."""
    return xi(k, n) <= (n - 1) ** (2 * k)


@dataclass
class SearchCheckpoint:
    """DFS position: the current word and the next letter to try at each depth."""

    path: list[int]
    next_letter: list[int]
    best: list[int]
    nodes: int
    open_frontier: bool


@dataclass(frozen=True)
class SearchResult:
    max_length: int
    witness: Word
    exhausted: bool
    nodes_explored: int
    checkpoint: SearchCheckpoint | None = field(default=None, compare=False)


def _ends_with_power(s: list[int], d: int) -> bool:
    L = len(s)
    for p in range(1, L // d + 1):
        tail = s[L - p:]
        if all(s[L - (r + 1) * p:L - r * p] == tail for r in range(1, d)):
            return True
    return False


def avoids(w: Word, n: int | None, d: int, sense: str = "ordinary") -> bool:
    """No ``u^d`` factor, and (unless ``n`` is ``None``) not ``n``-divisible in the given sense."""
    from shirshov.periodicity import find_power

    if len(w) and find_power(w, d) is not None:
        return False
    if n is None or not len(w):
        return True
    measure = max_ordinary_divisibility if sense == "ordinary" else max_tail_divisibility
    return measure(w)[0] < n


def longest_avoider(
    l: int,
    n: int | None,
    d: int,
    sense: str = "ordinary",
    cap: int = 64,
    max_nodes: int = 10 ** 7,
    symmetry: bool | None = None,
    checkpoint: SearchCheckpoint | None = None,
) -> SearchResult:
    """Depth-first search for the longest word over ``l`` letters avoiding ``d``-th powers and ``n``-divisibility.

    Both properties pass to factors, so every prefix of an avoider avoids and
    a branch dies as soon as it fails.  Letters are tried in increasing order,
    so the witness is the lexicographically least avoider of maximal length.
    ``symmetry`` fixes the first letter; it is only sound when divisibility is
    disabled (relabelling letters changes the order) and defaults to that case.
    """
    if l < 1 or d < 2:
        raise UsageError(f"need l >= 1 and d >= 2, got l={l}, d={d}")
    if n is not None and n < 2:
        raise UsageError(f"n must be at least 2 or disabled, got {n}")
    if sense not in SENSES:
        raise UsageError(f"sense must be one of {SENSES}, got {sense!r}")
    if cap < 1:
        raise UsageError("cap must be positive")
    if symmetry is None:
        symmetry = n is None
    elif symmetry and n is not None:
        raise UsageError("fixing the first letter is unsound when divisibility is checked")
    alphabet = Alphabet(l)
    measure = max_ordinary_divisibility if sense == "ordinary" else max_tail_divisibility

    def ok(s: list[int]) -> bool:
        if _ends_with_power(s, d):
            return False
        return n is None or measure(Word(tuple(s), alphabet))[0] < n

    if checkpoint is None:
        state = SearchCheckpoint([], [0], [], 0, False)
    else:
        state = SearchCheckpoint(
            list(checkpoint.path), list(checkpoint.next_letter), list(checkpoint.best),
            checkpoint.nodes, checkpoint.open_frontier,
        )
    path, nxt = state.path, state.next_letter
    while nxt:
        depth = len(path)
        letters = 1 if symmetry and depth == 0 else l
        a = nxt[-1]
        if a >= letters:
            nxt.pop()
            if path:
                path.pop()
            continue
        nxt[-1] = a + 1
        if state.nodes >= max_nodes:
            nxt[-1] = a
            return SearchResult(len(state.best), Word(tuple(state.best), alphabet), False, state.nodes, state)
        state.nodes += 1
        path.append(a)
        if not ok(path):
            path.pop()
            continue
        if len(path) > len(state.best):
            state.best = list(path)
        if len(path) >= cap:
            # the frontier is open if this word still extends
            if any(ok(path + [b]) for b in range(l)):
                state.open_frontier = True
            path.pop()
            continue
        nxt.append(0)
    return SearchResult(
        len(state.best), Word(tuple(state.best), alphabet), not state.open_frontier, state.nodes, None
    )


@dataclass(frozen=True)
class FinitenessReport:
    l: int
    n: int | None
    d: int
    sense: str
    max_length: int
    witness: Word
    psi_arguments: tuple[int, int]
    psi_log3: bounds.BoundValue
    psi_log2: bounds.BoundValue

    @property
    def holds(self) -> bool:
        """``max_length + 1`` certainly below both enclosures."""
        return self.max_length + 1 <= min(self.psi_log3.lo, self.psi_log2.lo)

    def gap_ratio(self) -> float:
        return float(min(self.psi_log3.lo, self.psi_log2.lo) / (self.max_length + 1))


def verify_finiteness(
    l: int, n: int | None, d: int, sense: str = "ordinary", cap: int = 64, max_nodes: int = 10 ** 7
) -> FinitenessReport:
    """Compare the exhaustive maximum with the power bound ``Psi``.

    Without divisibility the bound used is ``Psi(d, d, l)``; with ``n > d``
    it is ``Psi(n, n, l)``, since avoiding ``d``-th powers also avoids ``n``-th.
    """
    result = longest_avoider(l, n, d, sense, cap, max_nodes)
    if not result.exhausted:
        raise BudgetExceeded(
            f"search not exhausted within cap={cap}, max_nodes={max_nodes}; no verdict"
        )
    bn = d if n is None else n
    bd = max(d, bn)
    return FinitenessReport(
        l, n, d, sense, result.max_length, result.witness, (bn, bd),
        bounds.psi_log3(bn, bd, l), bounds.psi_log2(bn, bd, l),
    )
