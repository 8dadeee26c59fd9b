"""Alphabets, words, tails and the lexicographic conventions used throughout.

Letters are dense integers ``0 .. l-1`` ordered ``a1 < a2 < ... < al``.  Two
words one of which is a beginning of the other are *incomparable*; only a
mismatch at some common position decides ``LESS``/``GREATER``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from shirshov.errors import UsageError


class Order(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise UsageError(f"alphabet size must be positive, got {self.size}")

    def symbol(self, letter: int) -> str:
        return chr(ord("a") + letter) if letter < 26 else f"<{letter}>"


ASCII = Alphabet(26)


@dataclass(frozen=True, repr=False)
class Word:
    """Immutable sequence of letter indices over an :class:`Alphabet`.

    The empty word is allowed and plays the role of the sentinel that is
    smaller than every other word under :func:`total_compare`.
    """

    letters: tuple[int, ...]
    alphabet: Alphabet = field(default=ASCII)

    def __post_init__(self) -> None:
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if not 0 <= x < self.alphabet.size:
                raise UsageError(f"letter {x} outside alphabet of size {self.alphabet.size}")

    @classmethod
    def parse(cls, text: str, size: int | None = None) -> "Word":
        """Decode ``"abca"`` or the bracketed form ``"[0,1,0,27]"``."""
        text = text.strip()
        if text.startswith("["):
            body = text[1:-1].strip() if text.endswith("]") else None
            if body is None:
                raise UsageError(f"unterminated letter list: {text!r}")
            letters = tuple(int(x) for x in body.split(",") if x.strip()) if body else ()
        else:
            if not all("a" <= ch <= "z" for ch in text):
                raise UsageError(f"words use letters a..z or [i,j,...] syntax: {text!r}")
            letters = tuple(ord(ch) - ord("a") for ch in text)
        if size is None:
            size = max(26, max(letters, default=-1) + 1)
        return cls(letters, Alphabet(size))

    @classmethod
    def of(cls, letters: Iterable[int], size: int) -> "Word":
        return cls(tuple(letters), Alphabet(size))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word(self.letters[key], self.alphabet)
        return self.letters[key]

    def __add__(self, other: "Word") -> "Word":
        _same_alphabet(self, other)
        return Word(self.letters + other.letters, self.alphabet)

    def __mul__(self, times: int) -> "Word":
        return Word(self.letters * times, self.alphabet)

    def __str__(self) -> str:
        if self.alphabet.size <= 26:
            return "".join(chr(ord("a") + x) for x in self.letters)
        return "[" + ",".join(map(str, self.letters)) + "]"

    def __repr__(self) -> str:
        return f"Word({self.encode()!r})"

    def encode(self) -> str:
        """Text form accepted back by :meth:`parse`."""
        if all(x < 26 for x in self.letters):
            return "".join(chr(ord("a") + x) for x in self.letters)
        return "[" + ",".join(map(str, self.letters)) + "]"

    def tail(self, start: int) -> "Word":
        return Word(self.letters[start:], self.alphabet)

    def k_tail(self, start: int, k: int) -> "Word":
        return Word(self.letters[start:start + k], self.alphabet)


@dataclass(frozen=True)
class TailRef:
    """A tail of ``word`` starting at ``start``, optionally cut to its first ``k`` letters."""

    word: Word
    start: int
    k: int | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.start < len(self.word):
            raise UsageError(f"tail start {self.start} outside word of length {len(self.word)}")
        if self.k is not None and (self.k < 0 or self.start + self.k > len(self.word)):
            raise UsageError(f"{self.k}-tail at {self.start} overruns word of length {len(self.word)}")

    def value(self) -> Word:
        if self.k is None:
            return self.word.tail(self.start)
        return self.word.k_tail(self.start, self.k)


def _same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise UsageError(f"alphabet mismatch: {u.alphabet.size} vs {v.alphabet.size}")


def compare_seq(u: Sequence[int], v: Sequence[int]) -> Order:
    for a, b in zip(u, v):
        if a != b:
            return Order.LESS if a < b else Order.GREATER
    if len(u) == len(v):
        return Order.EQUAL
    return Order.INCOMPARABLE


def compare_lex(u: Word, v: Word) -> Order:
    """Lexicographic verdict; a proper beginning of the other word is ``INCOMPARABLE``."""
    _same_alphabet(u, v)
    return compare_seq(u.letters, v.letters)


def total_compare(u: Word, v: Word) -> Order:
    """Total order extending :func:`compare_lex`: a proper prefix is smaller."""
    _same_alphabet(u, v)
    verdict = compare_seq(u.letters, v.letters)
    if verdict is Order.INCOMPARABLE:
        return Order.LESS if len(u) < len(v) else Order.GREATER
    return verdict


def lce_table(s: Sequence[int]) -> list[list[int]]:
    """``t[i][j]`` is the length of the longest common prefix of ``s[i:]`` and ``s[j:]``.

    Quadratic in time and memory; the row/column ``len(s)`` is all zeros.
    """
    n = len(s)
    t = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, below = t[i], t[i + 1]
        si = s[i]
        for j in range(n - 1, -1, -1):
            if si == s[j]:
                row[j] = below[j + 1] + 1
    return t


def suffix_ranks(w: Word) -> list[int]:
    """Rank of every tail under :func:`total_compare` (prefix doubling)."""
    s = w.letters
    n = len(s)
    if n == 0:
        raise UsageError("suffix_ranks needs a nonempty word")
    rank = list(s)
    order = list(range(n))
    k = 1
    while True:
        keys = [(rank[i], rank[i + k] if i + k < n else -1) for i in range(n)]
        order.sort(key=keys.__getitem__)
        new = [0] * n
        for idx in range(1, n):
            prev, cur = order[idx - 1], order[idx]
            new[cur] = new[prev] + (keys[cur] != keys[prev])
        rank = new
        if rank[order[-1]] == n - 1:
            return rank
        k *= 2


def primitive_root_length(s: Sequence[int]) -> int:
    """Smallest ``p`` dividing ``len(s)`` with ``s == s[:p] * (len(s) // p)``."""
    n = len(s)
    for p in range(1, n + 1):
        if n % p == 0 and all(s[i] == s[i - p] for i in range(p, n)):
            return p
    return n


def is_noncyclic(u: Word) -> bool:
    if len(u) == 0:
        raise UsageError("is_noncyclic needs a nonempty word")
    return primitive_root_length(u.letters) == len(u)


@dataclass(frozen=True)
class WordCycle:
    """All distinct cyclic shifts of ``base``; ``shift(1)`` is the base itself."""

    base: Word
    shifts: tuple[Word, ...]

    def shift(self, i: int) -> Word:
        r = (i - 1) % len(self.base)
        return Word(self.base.letters[r:] + self.base.letters[:r], self.base.alphabet)

    def __len__(self) -> int:
        return len(self.shifts)

    def __contains__(self, w: object) -> bool:
        return w in self.shifts


def cyclic_shifts(u: Word) -> WordCycle:
    if len(u) == 0:
        raise UsageError("cyclic_shifts needs a nonempty word")
    s = u.letters
    p = primitive_root_length(s)
    shifts = tuple(Word(s[r:] + s[:r], u.alphabet) for r in range(p))
    return WordCycle(u, shifts)
