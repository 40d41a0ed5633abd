"""Named families: stars, full levels, J_t, H_1, H_2 and the AK frontier.

Each builder generates its members straight from the defining condition and
then checks the count against the known closed-form size.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable

from .exact import binomial
from .setfamily import Family, GroundParams, kset


class SizeMismatch(AssertionError):
    """An enumerated family disagrees with its closed-form size."""


def _choose(elements, r: int) -> list[int]:
    return [kset(c) for c in itertools.combinations(elements, r)]


def _at_least(n: int, k: int, w: int, need: int) -> Family:
    """All k-subsets of [n] with at least `need` points in [w]."""
    inside, outside = range(1, w + 1), range(w + 1, n + 1)
    masks = []
    for j in range(need, min(k, w) + 1):
        rest = _choose(outside, k - j)
        for a in _choose(inside, j):
            masks.extend(a | b for b in rest)
    return Family.from_masks(GroundParams(n, k), masks)


def _check_size(F: Family, expected: int, what: str) -> Family:
    if len(F) != expected:
        raise SizeMismatch(f"{what}: enumerated {len(F)} members, closed form gives {expected}")
    return F


def _require(cond: bool, message: str):
    if not cond:
        raise ValueError(message)


def star(n: int, k: int, c: int) -> Family:
    """All k-subsets of [n] containing [c]."""
    _require(0 <= c <= k <= n and n >= 1, f"star needs 0 <= c <= k <= n, got n={n} k={k} c={c}")
    F = _at_least(n, k, c, c)
    return _check_size(F, binomial(n - c, k - c), f"star({n},{k},{c})")


def full_level(n: int, k: int) -> Family:
    return star(n, k, 0)


def j_size(n: int, k: int, t: int) -> int:
    return (t + 2) * binomial(n - t - 2, k - t - 1) + binomial(n - t - 2, k - t - 2)


def h2_size(n: int, k: int, t: int) -> int:
    return binomial(n - t, k - t) - binomial(n - k - 1, k - t) + t


def j_family(n: int, k: int, t: int) -> Family:
    """{A : |A & [t+2]| >= t+1}."""
    _require(1 <= t <= k - 1 and t + 2 <= n and k <= n,
             f"J_t needs 1 <= t <= k-1 and t+2 <= n, got n={n} k={k} t={t}")
    F = _at_least(n, k, t + 2, t + 1)
    return _check_size(F, j_size(n, k, t), f"J_{t}({n},{k})")


def h1(n: int, k: int, t: int) -> Family:
    _require(1 <= t < k and k + 1 <= n, f"H_1 needs 1 <= t < k < n, got n={n} k={k} t={t}")
    return j_family(n, k, t)


def h2(n: int, k: int, t: int) -> Family:
    """{A : [t] <= A, A meets [t+1, k+1]} together with {[k+1] - {i} : i in [t]}."""
    _require(1 <= t < k and k + 1 <= n, f"H_2 needs 1 <= t < k < n, got n={n} k={k} t={t}")
    base = kset(range(1, t + 1))
    window = kset(range(t + 1, k + 2))
    masks = [base | b for b in _choose(range(t + 1, n + 1), k - t) if b & window]
    top = kset(range(1, k + 2))
    masks.extend(top & ~(1 << (i - 1)) for i in range(1, t + 1))
    F = Family.from_masks(GroundParams(n, k), masks)
    return _check_size(F, h2_size(n, k, t), f"H_2({n},{k},{t})")


def ak_size(n: int, k: int, t: int, r: int) -> int:
    w = t + 2 * r
    return sum(binomial(w, j) * binomial(n - w, k - j) for j in range(t + r, min(k, w) + 1))


def ak_frontier(n: int, k: int, t: int, r: int) -> Family:
    """{A : |A & [t+2r]| >= t+r}; r=0 is the t-star and r=1 is J_t."""
    _require(t >= 1 and r >= 0 and t + 2 * r <= n and t + r <= k <= n,
             f"AK family needs t >= 1, r >= 0, t+2r <= n, t+r <= k, got n={n} k={k} t={t} r={r}")
    F = _at_least(n, k, t + 2 * r, t + r)
    return _check_size(F, ak_size(n, k, t, r), f"AK({n},{k},{t},{r})")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    args: tuple[int, ...]

    def __str__(self):
        return f"{self.kind}:{','.join(map(str, self.args))}"


_BUILDERS: dict[str, tuple[Callable[..., Family], int]] = {
    "star": (star, 3),
    "jt": (j_family, 3),
    "h1": (h1, 3),
    "h2": (h2, 3),
    "ak": (ak_frontier, 4),
    "full": (full_level, 2),
}

_SPEC = re.compile(r"^([a-z0-9]+):(\d+(?:,\d+)*)$")


def looks_like_spec(text: str) -> bool:
    m = _SPEC.match(text.strip())
    return bool(m) and m.group(1) in _BUILDERS


def parse_spec(text: str) -> FamilySpec:
    m = _SPEC.match(text.strip())
    if not m or m.group(1) not in _BUILDERS:
        kinds = ", ".join(_BUILDERS)
        raise ValueError(f"bad family spec {text!r}; expected <kind>:<ints> with kind in {kinds}")
    kind = m.group(1)
    args = tuple(int(x) for x in m.group(2).split(","))
    arity = _BUILDERS[kind][1]
    if len(args) != arity:
        raise ValueError(f"{kind} takes {arity} parameters, got {len(args)}")
    return FamilySpec(kind, args)


def build(spec: FamilySpec | str) -> Family:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    builder, _ = _BUILDERS[spec.kind]
    return builder(*spec.args)
