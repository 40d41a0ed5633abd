"""Exact integers, rationals and binomial coefficients.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.
"""

import math
import threading
from decimal import Decimal, localcontext, ROUND_HALF_EVEN
from fractions import Fraction

DISPLAY_DIGITS = 12

_binom_cache: dict[tuple[int, int], int] = {}
_binom_lock = threading.Lock()


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial: n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    key = (n, k)
    try:
        return _binom_cache[key]
    except KeyError:
        pass
    value = math.comb(n, k)
    with _binom_lock:
        _binom_cache.setdefault(key, value)
    return value


def weight(n: int, k: int, i: int) -> Fraction:
    """The summand 1/C(n-i, k-i) of a member whose minimum intersection is i."""
    if not 0 <= i <= k <= n:
        raise ValueError(f"weight undefined for n={n}, k={k}, i={i}")
    return Fraction(1, binomial(n - i, k - i))


def weight_denominators(n: int, k: int) -> list[int]:
    return [binomial(n - i, k - i) for i in range(k + 1)]


def scaled_weights(n: int, k: int) -> tuple[int, list[int]]:
    """Return (L, W) with W[i] = L / C(n-i, k-i) integral for every i.

    Sums of weights become integer sums, which the search loops rely on.
    """
    dens = weight_denominators(n, k)
    lcm = math.lcm(*dens)
    return lcm, [lcm // d for d in dens]


def render_decimal(x: Fraction, digits: int = DISPLAY_DIGITS) -> str:
    """Decimal rendering with `digits` significant digits, round half even."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, "f")


def render(x: Fraction) -> str:
    """`p/q (decimal)` as printed in every report."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator} ({render_decimal(x)})"
