"""One-hot word sequences in which ``p`` repeats of a bit force a bit further left in between."""

from __future__ import annotations

from dataclasses import dataclass

from shirshov.errors import BudgetExceeded, UsageError

STATE_BUDGET = 10 ** 5


@dataclass(frozen=True)
class ProcessSequence:
    """Words of length ``k - 1`` with a single ``1``, stored as 1-based bit positions."""

    positions: tuple[int, ...]
    p: int
    k: int

    def __post_init__(self) -> None:
        if self.p < 2 or self.k < 2:
            raise UsageError(f"need p >= 2 and k >= 2, got p={self.p}, k={self.k}")
        for s in self.positions:
            if not 1 <= s <= self.k - 1:
                raise UsageError(f"bit position {s} outside 1..{self.k - 1}")

    @classmethod
    def from_words(cls, words, p: int) -> "ProcessSequence":
        words = list(words)
        if not words:
            raise UsageError("cannot infer k from an empty word list; build the sequence directly")
        width = len(words[0])
        positions = []
        for w in words:
            if len(w) != width or sorted(w) != ["0"] * (width - 1) + ["1"]:
                raise UsageError(f"{w!r} is not a one-hot word of length {width}")
            positions.append(w.index("1") + 1)
        return cls(tuple(positions), p, width + 1)

    def words(self) -> list[str]:
        m = self.k - 1
        return ["0" * (s - 1) + "1" + "0" * (m - s) for s in self.positions]

    def __len__(self) -> int:
        return len(self.positions)


def validate_process(seq: ProcessSequence) -> bool:
    """Every ``p`` consecutive occurrences of a bit position have a smaller position strictly between them."""
    run = [0] * (seq.k + 1)
    for s in seq.positions:
        run[s] += 1
        if run[s] >= seq.p:
            return False
        for t in range(s + 1, seq.k):
            run[t] = 0
    return True


def process_bound(p: int, k: int) -> int:
    if p < 2 or k < 2:
        raise UsageError(f"need p >= 2 and k >= 2, got p={p}, k={k}")
    return p ** (k - 1) - 1


def max_process_length(p: int, k: int) -> tuple[int, ProcessSequence]:
    """Longest valid sequence and the lexicographically least one of that length.

    The state after a prefix is, for every position, the number of its
    occurrences since the last smaller bit (each below ``p``).  Appending a bit
    raises the state in the order that weighs position 1 most, so the state
    graph is acyclic and a reverse sweep gives exact longest paths.
    """
    process_bound(p, k)
    m = k - 1
    if p ** m > STATE_BUDGET:
        raise BudgetExceeded(f"{p}^{m} states exceed the budget of {STATE_BUDGET}")
    size = p ** m
    weight = [p ** (m - 1 - i) for i in range(m)]  # position i+1 is digit i

    def step(state: int, s: int) -> int:
        digit = state // weight[s - 1] % p
        if digit + 1 >= p:
            return -1
        # drop the lower digits (positions right of s), bump digit s
        head = state - state % weight[s - 1]
        return head + weight[s - 1]

    best = [0] * size
    for state in range(size - 1, -1, -1):
        b = 0
        for s in range(1, m + 1):
            nxt = step(state, s)
            if nxt >= 0 and best[nxt] + 1 > b:
                b = best[nxt] + 1
        best[state] = b

    positions, state = [], 0
    while best[state]:
        for s in range(1, m + 1):
            nxt = step(state, s)
            if nxt >= 0 and best[nxt] == best[state] - 1:
                positions.append(s)
                state = nxt
                break
    return best[0], ProcessSequence(tuple(positions), p, k)
