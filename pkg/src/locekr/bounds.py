"""Closed-form thresholds and bounds, evaluated exactly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import binomial
from .setfamily import Family, is_cross_t_intersecting

# n >= 3.38k, compared as the exact rational 169/50
CROSS2_RATIO = Fraction(169, 50)

D_CAVEAT = ("note: D is only known to exist; the quadratic threshold uses the "
            "supplied value and carries no guarantee for it")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ThresholdSet:
    k: int
    D: int
    cubic: int
    quadratic: int
    conjectured: int
    ak_range: dict[int, int]


def cubic_threshold(k: int) -> int:
    return (k ** 3 + 2 * k ** 2 + k) // 2


def quadratic_threshold(k: int, D: int = 0) -> int:
    # ceil(k^2/4) is the integer form of n >= k^2/4 + 5k + D
    return _ceil_div(k * k, 4) + 5 * k + D


def conjectured_threshold(k: int) -> int:
    return k + _ceil_div(k, 2) * (k // 2 + 1)


def ak_range(k: int, t: int) -> int:
    return (t + 1) * (k - t + 1)


def thresholds(k: int, D: int = 0) -> ThresholdSet:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if D < 0:
        raise ValueError(f"D must be >= 0, got {D}")
    return ThresholdSet(
        k=k,
        D=D,
        cubic=cubic_threshold(k),
        quadratic=quadratic_threshold(k, D),
        conjectured=conjectured_threshold(k),
        ak_range={t: ak_range(k, t) for t in range(1, k)},
    )


def render_thresholds(ts: ThresholdSet) -> str:
    lines = [
        f"k\t{ts.k}",
        f"cubic\t{ts.cubic}",
        f"quadratic\t{ts.quadratic}\t(D={ts.D})",
        f"conjectured\t{ts.conjectured}",
    ]
    for t, v in ts.ak_range.items():
        lines.append(f"ak_range\tt={t}\t{v}")
    lines.append(D_CAVEAT)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LayerBoundValue:
    entry1: Fraction
    entry2: Fraction
    max: Fraction


def layer_bound(n: int, k: int, t: int) -> LayerBoundValue:
    """Upper bound on |G_t| / C(n-t, k-t) for a family with empty common core."""
    if not 1 <= t <= k - 1:
        raise ValueError(f"t must lie in 1..{k - 1}, got {t}")
    if n <= ak_range(k, t):
        raise ValueError(f"layer bound needs n > (t+1)(k-t+1) = {ak_range(k, t)}, got n={n}")
    m = n - k
    e1 = 1 - Fraction(m * (m - t * (k - t) - 1), (n - t) * (n - t - 1))
    top = binomial(n - t, k - t)
    e2 = 1 - Fraction(binomial(n - k - 1, k - t), top) + Fraction(t, top)
    return LayerBoundValue(e1, e2, max(e1, e2))


def coarse_layer_bound(n: int, k: int, t: int) -> int:
    if not 1 <= t < k:
        raise ValueError(f"t must lie in 1..{k - 1}, got {t}")
    return (k + 1) * binomial(n - t - 1, k - t - 1)


@dataclass(frozen=True)
class ProductBoundVerdict:
    product: int
    bound: int
    cross_ok: bool
    applicable: bool
    holds: bool
    condition: str

    @property
    def status(self) -> str:
        if not self.cross_ok:
            return "inapplicable (not cross-intersecting)"
        if not self.applicable:
            return f"inapplicable ({self.condition} fails)"
        return "holds" if self.holds else "VIOLATED"


def product_condition(n: int, k: int, s: int) -> tuple[bool, str]:
    if s == 1:
        return n >= 2 * k, f"n >= 2k = {2 * k}"
    if s == 2:
        return n >= CROSS2_RATIO * k, f"n >= (169/50)k = {CROSS2_RATIO * k}"
    need = (s + 1) * (k - s + 1)
    return n >= need, f"n >= (s+1)(k-s+1) = {need}"


def product_bound_check(A: Family, B: Family, s: int) -> ProductBoundVerdict:
    """|A||B| <= C(n-s, k-s)^2 for cross-s-intersecting A, B."""
    if A.params != B.params:
        raise ValueError("families live on different ground sets")
    n, k = A.n, A.k
    if not 1 <= s <= k:
        raise ValueError(f"s must lie in 1..{k}, got {s}")
    product = len(A) * len(B)
    bound = binomial(n - s, k - s) ** 2
    applicable, condition = product_condition(n, k, s)
    return ProductBoundVerdict(
        product=product,
        bound=bound,
        cross_ok=is_cross_t_intersecting(A, B, s),
        applicable=applicable,
        holds=product <= bound,
        condition=condition,
    )


def sharpness_bound(n: int, k: int, t: int) -> Fraction:
    """Lower bound 1 + (n-k)((k-t)(t+1) - (n-k)) / ((n-t)(n-t-1)) for the sum over J_t(n,k)."""
    if not 1 <= t <= k - 1:
        raise ValueError(f"t must lie in 1..{k - 1}, got {t}")
    if n <= k:
        raise ValueError(f"need n > k, got n={n} k={k}")
    m = n - k
    return 1 + Fraction(m * ((k - t) * (t + 1) - m), (n - t) * (n - t - 1))


def j_deficit(n: int, k: int, t: int) -> Fraction:
    """((t+1)(k-t+1) - n)/(k-t) * C(n-t-2, k-t-1), which equals |J_t| - C(n-t, k-t)."""
    return Fraction(ak_range(k, t) - n, k - t) * binomial(n - t - 2, k - t - 1)


def counterexample_window(k: int) -> tuple[int, int, int]:
    """(t, lo, hi): J_t(n, k) has sum > 1 for every lo < n < hi."""
    if k < 3:
        raise ValueError(f"window needs k >= 3, got {k}")
    t = k // 2
    return t, k, k + _ceil_div(k, 2) * (k // 2 + 1)
