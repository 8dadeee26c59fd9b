"""Combinatorics of words behind height bounds: divisibility, periodicity, chain colourings and height."""

from shirshov.divisibility import (
    is_n_cancellable,
    max_ordinary_divisibility,
    max_tail_divisibility,
    p_nd,
)
from shirshov.errors import BudgetExceeded, UsageError
from shirshov.periodicity import find_power
from shirshov.witnesses import (
    CancellabilityVerdict,
    OrdinaryDivision,
    PowerWitness,
    TailDivision,
    VerdictKind,
)
from shirshov.words import Alphabet, Order, TailRef, Word, compare_lex, total_compare

__all__ = [
    "Alphabet",
    "BudgetExceeded",
    "CancellabilityVerdict",
    "Order",
    "OrdinaryDivision",
    "PowerWitness",
    "TailDivision",
    "TailRef",
    "UsageError",
    "VerdictKind",
    "Word",
    "compare_lex",
    "find_power",
    "is_n_cancellable",
    "max_ordinary_divisibility",
    "max_tail_divisibility",
    "p_nd",
    "total_compare",
]
