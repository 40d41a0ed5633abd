"""Checks for the multi-threshold Hilton-type inequality.

Families F_{i,j} carry a threshold i in 1..k; distinct families must be
cross-max(i, i')-intersecting. With m_i families at threshold i and
M_s = max(1, m_1 + ... + m_s), the claim is

    sum |F_{i,j}| <= max_s M_s * C(n-s, k-s).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .bounds import cubic_threshold
from .exact import binomial
from .setfamily import (
    Family,
    FamilyFormatError,
    GroundParams,
    _content_lines,
    _row_minima,
    format_member,
    is_cross_t_intersecting,
    is_t_intersecting,
    parse_header,
    parse_member,
)


@dataclass(frozen=True)
class IndexedFamily:
    i: int
    j: int
    family: Family


@dataclass(frozen=True)
class HiltonInstance:
    params: GroundParams
    families: tuple[IndexedFamily, ...]

    @classmethod
    def build(cls, params: GroundParams, blocks) -> HiltonInstance:
        """`blocks` is an iterable of (threshold, Family); copy indices follow input order."""
        seen: Counter[int] = Counter()
        out = []
        for i, fam in blocks:
            if not 1 <= i <= params.k:
                raise ValueError(f"threshold {i} outside 1..{params.k}")
            if fam.params != params:
                raise ValueError(f"family on {fam.params} in an instance on {params}")
            seen[i] += 1
            out.append(IndexedFamily(i, seen[i], fam))
        return cls(params, tuple(out))

    @property
    def m(self) -> list[int]:
        """m[i] for i = 0..k (m[0] is always 0)."""
        counts = Counter(f.i for f in self.families)
        return [counts.get(i, 0) for i in range(self.params.k + 1)]

    @property
    def M(self) -> list[int]:
        out, running = [], 0
        for s, m_s in enumerate(self.m):
            running += m_s
            out.append(max(1, running))
        return out


def cross_violation(inst: HiltonInstance) -> Optional[tuple[IndexedFamily, IndexedFamily]]:
    fams = inst.families
    for a in range(len(fams)):
        for b in range(a + 1, len(fams)):
            fa, fb = fams[a], fams[b]
            if not is_cross_t_intersecting(fa.family, fb.family, max(fa.i, fb.i)):
                return fa, fb
    return None


def check_cross_conditions(inst: HiltonInstance) -> bool:
    """Distinct indexed families only; a family is never tested against itself."""
    return cross_violation(inst) is None


def hilton_bound(inst: HiltonInstance) -> int:
    n, k = inst.params.n, inst.params.k
    return max(M_s * binomial(n - s, k - s) for s, M_s in enumerate(inst.M))


@dataclass(frozen=True)
class Multiplicity:
    member: int
    r: int
    i_U: int
    cap: int


@dataclass(frozen=True)
class HiltonVerdict:
    condition_ok: bool
    violation: Optional[tuple[IndexedFamily, IndexedFamily]]
    total: int
    bound: int
    holds: bool
    multiplicities: tuple[Multiplicity, ...]
    counting_ok: bool
    intra: tuple[bool, ...]      # each F_{i,j} i-intersecting with itself (informational)
    large_n: bool                # n at or above the cubic threshold

    @property
    def failed(self) -> bool:
        """True when an inequality that must hold under the hypotheses does not."""
        if not self.condition_ok:
            return False
        return not self.counting_ok or (self.large_n and not self.holds)


def verify_hilton(inst: HiltonInstance) -> HiltonVerdict:
    n, k = inst.params.n, inst.params.k
    violation = cross_violation(inst)
    total = sum(len(f.family) for f in inst.families)
    bound = hilton_bound(inst)
    r = Counter()
    for f in inst.families:
        r.update(f.family.members)
    union = sorted(r)
    M = inst.M
    mults = []
    if union:
        minima = _row_minima(union, union, n)
        for A, iu in zip(union, minima):
            iu = int(iu)
            mults.append(Multiplicity(A, r[A], iu, M[iu]))
    counting_ok = violation is not None or all(m.r <= m.cap for m in mults)
    return HiltonVerdict(
        condition_ok=violation is None,
        violation=violation,
        total=total,
        bound=bound,
        holds=total <= bound,
        multiplicities=tuple(mults),
        counting_ok=counting_ok,
        intra=tuple(is_t_intersecting(f.family, f.i) for f in inst.families),
        large_n=n >= cubic_threshold(k),
    )


def parse_instance(text: str) -> HiltonInstance:
    """Header `n=.. k=..`, then blocks opened by `family i=<threshold>`."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FamilyFormatError(1, "missing header 'n=<int> k=<int>'") from None
    params = parse_header(header, lineno)
    blocks: list[tuple[int, set[int]]] = []
    for lineno, line in lines:
        if line.startswith("family"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].startswith("i="):
                raise FamilyFormatError(lineno, f"malformed block header {line!r}, expected 'family i=<int>'")
            try:
                i = int(parts[1][2:])
            except ValueError:
                raise FamilyFormatError(lineno, f"non-integer threshold in {line!r}") from None
            if not 1 <= i <= params.k:
                raise FamilyFormatError(lineno, f"threshold {i} outside 1..{params.k}")
            blocks.append((i, set()))
            continue
        if not blocks:
            raise FamilyFormatError(lineno, "member line before any 'family i=' block")
        mask = parse_member(line, lineno, params)
        if mask in blocks[-1][1]:
            raise FamilyFormatError(lineno, f"duplicate set {format_member(mask)}")
        blocks[-1][1].add(mask)
    return HiltonInstance.build(params, ((i, Family.from_masks(params, ms)) for i, ms in blocks))


def serialize_instance(inst: HiltonInstance) -> str:
    p = inst.params
    chunks = [f"n={p.n} k={p.k}"]
    for f in inst.families:
        body = [f"family i={f.i}"] + [format_member(m) for m in f.family.members]
        chunks.append("\n".join(body))
    return "\n\n".join(chunks) + "\n"


def render_verdict(inst: HiltonInstance, v: HiltonVerdict) -> str:
    p = inst.params
    lines = [
        f"# hilton check n={p.n} k={p.k} families={len(inst.families)}",
        "m\t" + " ".join(str(x) for x in inst.m[1:]),
        "M\t" + " ".join(str(x) for x in inst.M),
    ]
    if v.condition_ok:
        lines.append("cross_condition\tok")
    else:
        a, b = v.violation
        lines.append(f"cross_condition\tFAILS between F_{{{a.i},{a.j}}} and F_{{{b.i},{b.j}}}")
    for f, ok in zip(inst.families, v.intra):
        lines.append(f"intra\tF_{{{f.i},{f.j}}}\t{len(f.family)} sets\t"
                     f"{'self ' + str(f.i) + '-intersecting' if ok else 'not self ' + str(f.i) + '-intersecting'}")
    lines.append(f"total\t{v.total}")
    lines.append(f"bound\t{v.bound}")
    if not v.condition_ok:
        lines.append("verdict\tinapplicable")
    else:
        lines.append(f"counting\t{'ok' if v.counting_ok else 'FAILED'}")
        holds = "holds" + (" (tight)" if v.total == v.bound else "")
        lines.append(f"verdict\t{holds if v.holds else 'exceeds bound'}")
        if not v.large_n:
            lines.append(f"note\tn below the cubic threshold {cubic_threshold(p.k)}; "
                         "the inequality is only guaranteed above it")
    lines.append("member\tr\ti_U\tM_i")
    for m in v.multiplicities:
        lines.append(f"{format_member(m.member)}\t{m.r}\t{m.i_U}\t{m.cap}")
    return "\n".join(lines) + "\n"
