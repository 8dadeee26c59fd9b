"""Certified evaluation of the closed-form height and nilpotency bounds.

Formulas with integral exponents are evaluated exactly with Python integers
and fractions.  The rest go through an interval context of mpmath with outward
rounding, so ``lo <= true value <= hi`` always holds; each call uses a private
context, which keeps evaluation thread-safe.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath.ctx_iv import MPIntervalContext

from shirshov.errors import UsageError

DEFAULT_PRECISION_BITS = 256
PRECISION_CAP_BITS = 8192
PRECISION_ENV = "SHIRSHOV_PRECISION_BITS"
DECIMAL_DIGITS = 30


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if bits < 32:
        raise UsageError(f"{PRECISION_ENV} must be at least 32")
    return bits


def _mpf_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if not man:
        return Fraction(0)
    value = Fraction(int(man)) * (Fraction(2) ** exp)
    return -value if sign else value


def format_decimal(x: Fraction, rounding: str = "exact", digits: int = DECIMAL_DIGITS) -> str:
    """Decimal text for ``x``: exact when possible, otherwise rounded down or up in scientific form."""
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1 and rounding == "exact":
        places = max(twos, fives)
        scaled = x * 10 ** places
        sign = "-" if scaled < 0 else ""
        digits_str = str(abs(scaled.numerator)).rjust(places + 1, "0")
        return f"{sign}{digits_str[:-places]}.{digits_str[-places:]}"
    if rounding == "exact":
        return f"{x.numerator}/{x.denominator}"
    if x == 0:
        return "0"
    # exponent of the leading digit
    e = len(str(abs(x.numerator))) - len(str(x.denominator))
    if abs(x) < Fraction(10) ** e:
        e -= 1
    scaled = x * Fraction(10) ** (digits - 1 - e)
    if rounding == "down":
        mant = scaled.numerator // scaled.denominator
    elif rounding == "up":
        mant = -(-scaled.numerator // scaled.denominator)
    else:
        raise UsageError(f"unknown rounding {rounding!r}")
    if abs(mant) >= 10 ** digits:
        # ceiling carried into a new digit
        mant = -(-mant // 10) if rounding == "up" else mant // 10
        e += 1
    sign = "-" if mant < 0 else ""
    text = str(abs(mant))
    return f"{sign}{text[0]}.{text[1:]}e{e:+d}"


@dataclass(frozen=True)
class BoundValue:
    """Exact value, or a certified enclosure ``lo <= value <= hi``."""

    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    @classmethod
    def of_exact(cls, value) -> "BoundValue":
        v = Fraction(value)
        return cls(v, v, v)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def relative_width(self) -> Fraction:
        if self.is_exact:
            return Fraction(0)
        return (self.hi - self.lo) / self.lo if self.lo > 0 else Fraction(10 ** 9)

    def scaled(self, factor) -> "BoundValue":
        f = Fraction(factor)
        if self.is_exact:
            return BoundValue.of_exact(self.exact * f)
        return BoundValue(self.lo * f, self.hi * f)

    def certainly_less(self, other: "BoundValue") -> bool:
        return self.hi < other.lo

    def to_json(self):
        if self.is_exact:
            return format_decimal(self.exact)
        return [format_decimal(self.lo, "down"), format_decimal(self.hi, "up")]

    @classmethod
    def from_json(cls, data) -> "BoundValue":
        if isinstance(data, str):
            return cls.of_exact(Fraction(data))
        lo, hi = data
        return cls(Fraction(lo), Fraction(hi))

    def __str__(self) -> str:
        if self.is_exact:
            return format_decimal(self.exact)
        lo, hi = self.to_json()
        return f"[{lo}, {hi}]"


def _interval(build: Callable, bits: int | None) -> BoundValue:
    ctx = MPIntervalContext()
    ctx.prec = bits or default_precision()
    value = build(ctx)
    (lo_raw, hi_raw) = value._mpi_
    return BoundValue(_mpf_to_fraction(lo_raw), _mpf_to_fraction(hi_raw))


def _exact_log(base: int, x: int) -> int | None:
    """``k`` with ``base**k == x``, or ``None``."""
    k, y = 0, 1
    while y < x:
        y *= base
        k += 1
    return k if y == x else None


def ceil_log(base: int, x: int) -> int:
    """``-[-log_base x]``: the least ``k`` with ``base**k >= x``."""
    k, y = 0, 1
    while y < x:
        y *= base
        k += 1
    return k


def _check_nl(n: int, l: int) -> None:
    if n < 1 or l < 1:
        raise UsageError(f"need n >= 1 and l >= 1, got n={n}, l={l}")


def _check_ndl(n: int, d: int, l: int) -> None:
    _check_nl(n, l)
    if d < n:
        raise UsageError(f"the power bound needs d >= n, got n={n}, d={d}")


def _log3(ctx, x):
    return ctx.log(x) / ctx.log(3)


def phi_log3(n: int, l: int, bits: int | None = None) -> BoundValue:
    """``E1 * l * n^(E2 + 12 log_3 n)`` with ``E1 = 4^(21 log_3 4 + 17)``, ``E2 = 30 log_3 4 + 10``."""
    _check_nl(n, l)

    def build(ctx):
        # assemble the logarithm first, exponentiate once
        l34 = _log3(ctx, 4)
        log_e1 = (21 * l34 + 17) * ctx.log(4)
        ln_n = ctx.log(n)
        log_rest = (30 * l34 + 10 + 12 * _log3(ctx, n)) * ln_n
        return ctx.exp(log_e1 + log_rest) * l

    return _interval(build, bits)


def phi_log3_coarse(n: int, l: int, bits: int | None = None) -> BoundValue:
    """``2^87 * l * n^(12 log_3 n + 48)``."""
    _check_nl(n, l)
    k = _exact_log(3, n)
    if k is not None:
        return BoundValue.of_exact(2 ** 87 * l * n ** (12 * k + 48))
    return _interval(lambda ctx: ctx.exp((12 * _log3(ctx, n) + 48) * ctx.log(n)) * (2 ** 87 * l), bits)


def phi_log2(n: int, l: int, bits: int | None = None) -> BoundValue:
    """``2^40 * l * n^(38 + 8 log_2 n)``."""
    _check_nl(n, l)
    k = _exact_log(2, n)
    if k is not None:
        return BoundValue.of_exact(2 ** 40 * l * n ** (38 + 8 * k))
    return _interval(lambda ctx: ctx.exp((38 + 8 * ctx.log(n) / ctx.log(2)) * ctx.log(n)) * (2 ** 40 * l), bits)


def psi_log3(n: int, d: int, l: int, bits: int | None = None) -> BoundValue:
    """``4^(5 + 3 log_3 4) * l * (nd)^(3 log_3(nd) + 5 + 6 log_3 4) * d^2``."""
    _check_ndl(n, d, l)
    nd = n * d

    def build(ctx):
        l34 = _log3(ctx, 4)
        ln_nd = ctx.log(nd)
        total = (5 + 3 * l34) * ctx.log(4) + (3 * _log3(ctx, nd) + 5 + 6 * l34) * ln_nd
        return ctx.exp(total) * (l * d * d)

    return _interval(build, bits)


def psi_log3_coarse(n: int, d: int, l: int, bits: int | None = None) -> BoundValue:
    """``2^18 * l * (nd)^(3 log_3(nd) + 13) * d^2``."""
    _check_ndl(n, d, l)
    nd = n * d
    k = _exact_log(3, nd)
    if k is not None:
        return BoundValue.of_exact(2 ** 18 * l * nd ** (3 * k + 13) * d * d)
    return _interval(lambda ctx: ctx.exp((3 * _log3(ctx, nd) + 13) * ctx.log(nd)) * (2 ** 18 * l * d * d), bits)


def psi_log2(n: int, d: int, l: int, bits: int | None = None) -> BoundValue:
    """``256 * l * (nd)^(2 log_2(nd) + 10) * d^2``."""
    _check_ndl(n, d, l)
    nd = n * d
    k = _exact_log(2, nd)
    if k is not None:
        return BoundValue.of_exact(256 * l * nd ** (2 * k + 10) * d * d)
    return _interval(
        lambda ctx: ctx.exp((2 * ctx.log(nd) / ctx.log(2) + 10) * ctx.log(nd)) * (256 * l * d * d), bits
    )


def upsilon(n: int, l: int, bits: int | None = None) -> BoundValue:
    """``2 * n^(3 ceil(log_3 n) + 4) * l``, always an integer."""
    _check_nl(n, l)
    return BoundValue.of_exact(2 * n ** (3 * ceil_log(3, n) + 4) * l)


def lopatin(n: int, l: int, bits: int | None = None) -> BoundValue:
    """``4 * 2^(n/2) * l``."""
    _check_nl(n, l)
    if n % 2 == 0:
        return BoundValue.of_exact(4 * 2 ** (n // 2) * l)
    return _interval(lambda ctx: ctx.exp(ctx.log(2) * n / 2) * (4 * l), bits)


def lower_gk(n: int, l: int, bits: int | None = None) -> BoundValue:
    """``(l - 1) n^2 / 4 + 1``: a lower bound on the nilpotency index."""
    _check_nl(n, l)
    return BoundValue.of_exact(Fraction((l - 1) * n * n, 4) + 1)


def kuzmin(n: int, bits: int | None = None) -> BoundValue:
    """``(n^2 + n - 2) / 2``: the lower bound for the nilpotency index of nil algebras of index ``n``."""
    if n < 1:
        raise UsageError(f"need n >= 1, got n={n}")
    return BoundValue.of_exact(Fraction(n * n + n - 2, 2))


EVALUATORS: dict[str, Callable] = {
    "phi-log3": phi_log3,
    "phi-log3-coarse": phi_log3_coarse,
    "phi-log2": phi_log2,
    "psi-log3": psi_log3,
    "psi-log3-coarse": psi_log3_coarse,
    "psi-log2": psi_log2,
    "upsilon": upsilon,
    "lopatin": lopatin,
    "lower-gk": lower_gk,
    "kuzmin": kuzmin,
}

TAKES_D = {"psi-log3", "psi-log3-coarse", "psi-log2"}


def evaluate(which: str, n: int, l: int = 1, d: int | None = None, bits: int | None = None) -> BoundValue:
    """Dispatch by name; ``d`` is required exactly for the power bounds."""
    if which not in EVALUATORS:
        raise UsageError(f"unknown bound {which!r}; choose from {', '.join(EVALUATORS)}")
    fn = EVALUATORS[which]
    if which in TAKES_D:
        if d is None:
            raise UsageError(f"{which} needs d")
        return fn(n, d, l, bits=bits)
    if which == "kuzmin":
        return fn(n, bits=bits)
    return fn(n, l, bits=bits)


def _order(a: BoundValue, b: BoundValue) -> str | None:
    if a.is_exact and b.is_exact:
        return "less" if a.exact < b.exact else "greater" if a.exact > b.exact else "equal"
    if a.hi < b.lo:
        return "less"
    if a.lo > b.hi:
        return "greater"
    return None


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    l: int
    values: dict[str, BoundValue]
    orders: dict[tuple[str, str], str]
    bits: int


def compare_bounds(n: int, l: int, bits: int | None = None, cap: int = PRECISION_CAP_BITS) -> ComparisonReport:
    """Order Lopatin's bound against both power bounds at ``d = n``.

    Overlapping enclosures trigger a re-evaluation at twice the precision, up
    to ``cap`` bits; pairs still overlapping are reported as indeterminate.
    """
    if n < 2 or l < 1:
        raise UsageError(f"need n >= 2 and l >= 1, got n={n}, l={l}")
    bits = bits or default_precision()
    names = ("lopatin", "psi-log3", "psi-log2")
    while True:
        values = {
            "lopatin": lopatin(n, l, bits=bits),
            "psi-log3": psi_log3(n, n, l, bits=bits),
            "psi-log2": psi_log2(n, n, l, bits=bits),
        }
        orders = {}
        pending = False
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                verdict = _order(values[a], values[b])
                if verdict is None:
                    pending = True
                    verdict = "indeterminate"
                orders[(a, b)] = verdict
        if not pending or bits * 2 > cap:
            return ComparisonReport(n, l, values, orders, bits)
        bits *= 2
