"""The localized EKR sum and its ingredients.

For a member A of F, i_F(A) is the least |A & B| over all B in F (B = A
included), and the sum weights A by 1/C(n - i_F(A), k - i_F(A)).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .exact import binomial, render, weight
from .setfamily import Family, GroundParams, common_core, elements_of, format_member


@dataclass(frozen=True)
class LayerProfile:
    """sizes[t] = |G_t|, the number of members with i_F(A) >= t, t = 0..k."""
    sizes: tuple[int, ...]

    def __getitem__(self, t: int) -> int:
        return self.sizes[t]


@dataclass(frozen=True)
class PhiReport:
    params: GroundParams
    phi: Fraction
    members: tuple[int, ...]
    min_intersections: tuple[int, ...]
    layers: LayerProfile
    core: int | None
    reduced: GroundParams | None


def min_intersection(F: Family, A: int) -> int:
    if A not in F:
        raise ValueError(f"{elements_of(A)} is not a member of the family")
    return F.min_intersections[F.members.index(A)]


def _layers_from(ivals, k: int) -> LayerProfile:
    counts = Counter(ivals)
    sizes = []
    running = 0
    for t in range(k, -1, -1):
        running += counts.get(t, 0)
        sizes.append(running)
    return LayerProfile(tuple(reversed(sizes)))


def layer_profile(F: Family) -> LayerProfile:
    return _layers_from(F.min_intersections, F.k)


def phi_direct(F: Family) -> Fraction:
    total = Fraction(0)
    for i, count in Counter(F.min_intersections).items():
        total += count * weight(F.n, F.k, i)
    return total


def phi_telescoped(F: Family) -> Fraction:
    """|F|/C(n,k) + sum_{t=1}^{k-1} (n-k)/(n-t+1) * |G_t|/C(n-t,k-t).

    Only valid for a family with empty common core.
    """
    if not F.members:
        raise ValueError("telescoped form needs a nonempty family")
    if common_core(F):
        raise ValueError("telescoped form needs an empty common core")
    n, k = F.n, F.k
    layers = layer_profile(F)
    total = Fraction(len(F), binomial(n, k))
    for t in range(1, k):
        total += Fraction(n - k, n - t + 1) * Fraction(layers[t], binomial(n - t, k - t))
    return total


def _compress(mask: int, keep: int) -> int:
    """Drop the bits outside `keep` and close up the gaps, preserving order."""
    out = 0
    pos = 0
    bit = 0
    while keep >> bit:
        if keep >> bit & 1:
            if mask >> bit & 1:
                out |= 1 << pos
            pos += 1
        bit += 1
    return out


def reduce_core(F: Family) -> tuple[Family, GroundParams]:
    """Strip the common core and relabel what remains onto [n - c]."""
    core = common_core(F)
    c = core.bit_count()
    params = GroundParams(F.n - c, F.k - c)
    if c == 0:
        return F, params
    keep = ((1 << F.n) - 1) & ~core
    reduced = Family.from_masks(params, (_compress(m & ~core, keep) for m in F.members))
    return reduced, params


def borg_sum(F: Family, t: int) -> Fraction:
    """|A^{t,+}|/C(n-t,k-t) + |A^{t,-}|/C(n,k), with A^{t,+} = G_t."""
    if not 1 <= t <= F.k:
        raise ValueError(f"t must lie in 1..{F.k}, got {t}")
    plus = layer_profile(F)[t] if F.members else 0
    minus = len(F) - plus
    return Fraction(plus, binomial(F.n - t, F.k - t)) + Fraction(minus, binomial(F.n, F.k))


def phi_report(F: Family) -> PhiReport:
    if F.members:
        core = common_core(F)
        _, reduced = reduce_core(F)
    else:
        core, reduced = None, None
    return PhiReport(
        params=F.params,
        phi=phi_direct(F),
        members=F.members,
        min_intersections=F.min_intersections,
        layers=layer_profile(F) if F.members else LayerProfile((0,) * (F.k + 1)),
        core=core,
        reduced=reduced,
    )


def render_report(report: PhiReport) -> str:
    p = report.params
    lines = [
        f"# phi report n={p.n} k={p.k} members={len(report.members)}",
        f"phi\t{render(report.phi)}",
    ]
    if report.core is None:
        lines.append("core\tundefined (empty family)")
    else:
        core = " ".join(str(x) for x in elements_of(report.core)) or "-"
        lines.append(f"core\t{core}")
        lines.append(f"reduced\tn={report.reduced.n} k={report.reduced.k}")
    lines.append("t\t|G_t|")
    for t, size in enumerate(report.layers.sizes):
        lines.append(f"{t}\t{size}")
    lines.append("member\ti")
    for m, i in zip(report.members, report.min_intersections):
        lines.append(f"{format_member(m)}\t{i}")
    return "\n".join(lines) + "\n"
