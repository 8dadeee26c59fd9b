"""Certificate types returned by the detectors.

Every witness knows how to re-check itself against the word it certifies, so
callers (and the CLI round-trip) never have to trust the search that built it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from shirshov.words import Order, Word, compare_seq


@dataclass(frozen=True)
class PowerWitness:
    period: Word
    start: int
    exponent: int

    @property
    def end(self) -> int:
        return self.start + self.exponent * len(self.period)

    def validate(self, host: Word) -> bool:
        p = self.period.letters
        return (
            self.exponent >= 2
            and len(p) > 0
            and self.start >= 0
            and self.end <= len(host)
            and host.letters[self.start:self.end] == p * self.exponent
        )


@dataclass(frozen=True)
class OrdinaryDivision:
    """``W = v u_1 ... u_n`` stored as block boundaries ``b_0 < b_1 < ... < b_n = |W|``."""

    boundaries: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.boundaries) - 1

    def prefix(self, host: Word) -> Word:
        return host[: self.boundaries[0]]

    def blocks(self, host: Word) -> list[Word]:
        b = self.boundaries
        return [host[b[i]:b[i + 1]] for i in range(len(b) - 1)]

    def trimmed(self, n: int) -> "OrdinaryDivision":
        """Keep only the last ``n`` blocks; the dropped ones join the prefix."""
        return OrdinaryDivision(self.boundaries[len(self.boundaries) - 1 - n:])

    def validate(self, host: Word) -> bool:
        b = self.boundaries
        if len(b) < 2 or b[0] < 0 or b[-1] != len(host):
            return False
        if any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
            return False
        s = host.letters
        return all(
            compare_seq(s[b[i]:b[i + 1]], s[b[i + 1]:b[i + 2]]) is Order.GREATER
            for i in range(len(b) - 2)
        )


@dataclass(frozen=True)
class TailDivision:
    """Start positions of tails forming a strictly decreasing chain left to right."""

    positions: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.positions)

    def validate(self, host: Word) -> bool:
        p = self.positions
        if not p or p[0] < 0 or p[-1] >= len(host):
            return False
        s = host.letters
        return all(
            p[i] < p[i + 1] and compare_seq(s[p[i]:], s[p[i + 1]:]) is Order.GREATER
            for i in range(len(p) - 1)
        )


class VerdictKind(enum.Enum):
    DIVISIBLE = "divisible"
    POWER = "power"
    NO = "no"


@dataclass(frozen=True)
class CancellabilityVerdict:
    kind: VerdictKind
    division: OrdinaryDivision | None = None
    power: PowerWitness | None = None

    @classmethod
    def divisible(cls, division: OrdinaryDivision) -> "CancellabilityVerdict":
        return cls(VerdictKind.DIVISIBLE, division=division)

    @classmethod
    def of_power(cls, power: PowerWitness) -> "CancellabilityVerdict":
        return cls(VerdictKind.POWER, power=power)

    @classmethod
    def no(cls) -> "CancellabilityVerdict":
        return cls(VerdictKind.NO)

    def validate(self, host: Word, n: int | None = None, d: int | None = None) -> bool:
        if self.kind is VerdictKind.DIVISIBLE:
            ok = self.division is not None and self.division.validate(host)
            return ok and (n is None or self.division.n == n)
        if self.kind is VerdictKind.POWER:
            ok = self.power is not None and self.power.validate(host)
            return ok and (d is None or self.power.exponent >= d)
        return True
