"""k-uniform set families over [n] stored as integer bitsets.

Element x of the ground set [n] is bit x-1, so colexicographic order of
k-sets is plain integer order of their masks.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_N = 64
BRUTE_FORCE_MAX_N = 8

# rows per block when forming intersection matrices; keeps peak memory small
_BLOCK = 1024
# families above this size try the symmetry-reduced minimum first
_ORBIT_MIN = 3000


class FamilyFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.message = message


@dataclass(frozen=True)
class GroundParams:
    n: int
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.n <= MAX_N:
            raise ValueError(
                f"need 0 <= k <= n <= {MAX_N}, got n={self.n}, k={self.k}")


def kset(elements: Iterable[int]) -> int:
    """Bitset of a collection of 1-based elements."""
    mask = 0
    for x in elements:
        mask |= 1 << (x - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def ksets(n: int, k: int) -> list[int]:
    """All k-subsets of [n] as masks, in colex order."""
    return sorted(kset(c) for c in itertools.combinations(range(1, n + 1), k))


@dataclass(frozen=True)
class Family:
    params: GroundParams
    members: tuple[int, ...]
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self._checked:
            return
        n, k = self.params.n, self.params.k
        limit = full_mask(n)
        prev = -1
        for m in self.members:
            if m & ~limit or m.bit_count() != k:
                raise ValueError(f"{elements_of(m)} is not a {k}-subset of [{n}]")
            if m <= prev:
                raise ValueError("members must be distinct and in colex order")
            prev = m

    @classmethod
    def from_masks(cls, params: GroundParams, masks: Iterable[int]) -> Family:
        """Build a family, sorting and dropping repeated members."""
        return cls(params, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> Family:
        return cls.from_masks(GroundParams(n, k), (kset(s) for s in sets))

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def sets(self) -> list[tuple[int, ...]]:
        return [elements_of(m) for m in self.members]

    @cached_property
    def incidence(self) -> np.ndarray:
        """|F| x n 0/1 matrix (float32 so intersection counts go through BLAS)."""
        return incidence_matrix(self.members, self.n)

    @cached_property
    def min_intersections(self) -> tuple[int, ...]:
        """min over B in F of |A & B| for each member A, in colex order."""
        if len(self.members) > _ORBIT_MIN:
            vals = _orbit_minima(self.members, self.n)
            if vals is not None:
                return vals
        return tuple(int(v) for v in _row_minima(self.members, self.members, self.n))

    def relabel(self, perm: Sequence[int]) -> Family:
        """Apply element map x -> perm[x-1] (perm is a permutation of 1..n)."""
        images = [1 << (p - 1) for p in perm]
        return Family.from_masks(self.params, (_apply(m, images) for m in self.members))


def _apply(mask: int, images: Sequence[int]) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= images[i]
        mask >>= 1
        i += 1
    return out


def incidence_matrix(masks: Sequence[int], n: int) -> np.ndarray:
    arr = np.zeros((len(masks), n), dtype=np.float32)
    for r, m in enumerate(masks):
        for e in elements_of(m):
            arr[r, e - 1] = 1.0
    return arr


def _row_minima(rows: Sequence[int], cols: Sequence[int], n: int) -> np.ndarray:
    """For each row set, the minimum intersection size with any column set."""
    if not rows:
        return np.zeros(0, dtype=np.int64)
    if not cols:
        raise ValueError("minimum over an empty family")
    if len(rows) * len(cols) <= 4096:
        return np.array([min((a & b).bit_count() for b in cols) for a in rows],
                        dtype=np.int64)
    a = incidence_matrix(rows, n)
    b = incidence_matrix(cols, n).T.copy()
    out = np.empty(len(rows), dtype=np.int64)
    for start in range(0, len(rows), _BLOCK):
        block = a[start:start + _BLOCK] @ b
        out[start:start + _BLOCK] = np.rint(block.min(axis=1)).astype(np.int64)
    return out


def _twin_partition(arr: np.ndarray, n: int) -> list[int]:
    """Class masks of elements that can be swapped without changing the family.

    Swappability is an equivalence relation, so each element is only tested
    against one representative per existing class of equal degree.
    """
    one = np.uint64(1)
    degrees = [int(np.count_nonzero(arr & (one << np.uint64(e)))) for e in range(n)]
    reps: list[int] = []
    classes: list[int] = []
    for e in range(n):
        be = one << np.uint64(e)
        for c, r in enumerate(reps):
            if degrees[r] != degrees[e]:
                continue
            both = be | (one << np.uint64(r))
            moved = arr[np.bitwise_count(arr & both) == 1] ^ both
            pos = np.searchsorted(arr, moved)
            if np.all(pos < len(arr)) and np.array_equal(arr[np.minimum(pos, len(arr) - 1)], moved):
                classes[c] |= 1 << e
                break
        else:
            reps.append(e)
            classes.append(1 << e)
    return classes


def _orbit_minima(members: Sequence[int], n: int):
    """Row minima computed once per orbit of the twin-class symmetry group.

    Members with the same number of points in every twin class are images of
    each other under an automorphism, so they share their minimum. Returns
    None when the symmetry is too weak to pay off.
    """
    arr = np.array(members, dtype=np.uint64)
    classes = _twin_partition(arr, n)
    counts = np.stack([np.bitwise_count(arr & np.uint64(c)) for c in classes], axis=1)
    types, first, inverse = np.unique(counts, axis=0, return_index=True, return_inverse=True)
    if len(types) * 4 > len(members):
        return None
    per_type = [int(np.bitwise_count(arr & arr[i]).min()) for i in first]
    return tuple(per_type[j] for j in inverse.reshape(-1))


def common_core(F: Family) -> int:
    """Intersection of all members, as a mask."""
    if not F.members:
        raise ValueError("common core of an empty family is undefined")
    core = full_mask(F.n)
    for m in F.members:
        core &= m
    return core


def is_t_intersecting(F: Family, t: int) -> bool:
    if not 0 <= t <= F.k:
        raise ValueError(f"t must lie in 0..{F.k}, got {t}")
    if not F.members:
        return True
    # the diagonal contributes k >= t, so the row minima decide it
    return min(F.min_intersections) >= t


def is_cross_t_intersecting(A: Family, B: Family, t: int) -> bool:
    if A.params != B.params:
        raise ValueError(f"ground parameters differ: {A.params} vs {B.params}")
    if not A.members or not B.members:
        return True
    return int(_row_minima(A.members, B.members, A.n).min()) >= t


def is_trivial_t_intersecting(F: Family, t: int) -> bool:
    """All members contain a common t-set."""
    if not F.members:
        return True
    return common_core(F).bit_count() >= t


# -- canonical forms ------------------------------------------------------

@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    """table[p, mask] = image of mask under the p-th permutation of [n]."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    dtype = np.uint8 if n <= 8 else np.uint16
    table = np.zeros((len(perms), 1 << n), dtype=dtype)
    bit_images = (1 << perms).astype(dtype)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        table[:, mask] = table[:, mask & (mask - 1)] | bit_images[:, low]
    return table


def _lex_min_row(rows: np.ndarray) -> np.ndarray:
    cand = np.arange(rows.shape[0])
    for col in range(rows.shape[1]):
        vals = rows[cand, col]
        cand = cand[vals == vals.min()]
        if len(cand) == 1:
            break
    return rows[cand[0]]


def canonical_members_bruteforce(masks: Sequence[int], n: int) -> tuple[int, ...]:
    """Least sorted member tuple over all n! relabelings (n <= 8)."""
    if not masks:
        return ()
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute-force canonical form limited to n <= {BRUTE_FORCE_MAX_N}")
    table = _perm_table(n)
    images = np.sort(table[:, np.asarray(masks, dtype=np.int64)], axis=1)
    return tuple(int(v) for v in _lex_min_row(images))


def _twin_classes(masks: Sequence[int], n: int) -> list[int]:
    """Representative id per element; elements whose swap fixes F share an id."""
    member_set = set(masks)
    rep = list(range(n))
    for a in range(n):
        if rep[a] != a:
            continue
        for b in range(a + 1, n):
            if rep[b] != b:
                continue
            ba, bb = 1 << a, 1 << b
            swapped = True
            for m in masks:
                if bool(m & ba) != bool(m & bb):
                    m2 = m ^ ba ^ bb
                    if m2 not in member_set:
                        swapped = False
                        break
            if swapped:
                rep[b] = a
    return rep


def canonical_members_refined(masks: Sequence[int], n: int) -> tuple[int, ...]:
    """Least sorted member tuple, by label-by-label backtracking.

    New labels 1, 2, ... are handed out in order. Once labels 1..j are
    placed, the members inside [j] are exactly the colex-smallest members of
    the relabeled family, so partial labelings can be compared on that
    prefix (a longer prefix wins a tie) and only the minimal ones kept.
    Elements interchangeable by a transposition automorphism are tried once.
    """
    if not masks:
        return ()
    rep = _twin_classes(masks, n)
    # members indexed by their highest old element once all others are placed
    sentinel = 1 << (MAX_N + 1)
    # state: (old elements in new-label order, image bits of placed olds, prefix)
    empty = (0,) if 0 in masks else ()
    states: list[tuple[tuple[int, ...], dict[int, int], tuple[int, ...]]] = [((), {}, empty)]
    for j in range(n):
        best_key = None
        next_states = []
        for order, images, prefix in states:
            placed = 0
            for e in order:
                placed |= 1 << e
            seen_classes = set()
            for e in range(n):
                if placed >> e & 1 or rep[e] in seen_classes:
                    continue
                seen_classes.add(rep[e])
                now = placed | (1 << e)
                new_images = dict(images)
                new_images[e] = 1 << j
                fresh = sorted(
                    _image(m, new_images) for m in masks
                    if m >> e & 1 and m & ~now == 0)
                new_prefix = prefix + tuple(fresh)
                key = new_prefix + (sentinel,)
                if best_key is None or key < best_key:
                    best_key = key
                    next_states = [(order + (e,), new_images, new_prefix)]
                elif key == best_key:
                    next_states.append((order + (e,), new_images, new_prefix))
        states = next_states
    return states[0][2]


def _image(mask: int, images: dict[int, int]) -> int:
    out = 0
    for e, bit in images.items():
        if mask >> e & 1:
            out |= bit
    return out


def canonical_members(masks: Sequence[int], n: int) -> tuple[int, ...]:
    if n <= BRUTE_FORCE_MAX_N:
        return canonical_members_bruteforce(masks, n)
    return canonical_members_refined(masks, n)


def canonical_form(F: Family) -> Family:
    """The least relabeling of F under permutations of [n].

    Families are compared by their colex-sorted member lists, lexicographically.
    """
    return Family(F.params, canonical_members(F.members, F.n), _checked=True)


def is_canonical(F: Family) -> bool:
    return canonical_members(F.members, F.n) == F.members


# -- text codec -----------------------------------------------------------

_HEADER = re.compile(r"^n=(\d+)\s+k=(\d+)$")


def parse_header(line: str, lineno: int) -> GroundParams:
    m = _HEADER.match(line.strip())
    if not m:
        raise FamilyFormatError(lineno, f"malformed header {line.strip()!r}, expected 'n=<int> k=<int>'")
    n, k = int(m.group(1)), int(m.group(2))
    if not 1 <= k <= n <= MAX_N:
        raise FamilyFormatError(lineno, f"need 1 <= k <= n <= {MAX_N}, got n={n} k={k}")
    return GroundParams(n, k)


def parse_member(line: str, lineno: int, params: GroundParams) -> int:
    try:
        elems = [int(tok) for tok in line.split()]
    except ValueError:
        raise FamilyFormatError(lineno, f"non-integer element in {line.strip()!r}") from None
    for x in elems:
        if not 1 <= x <= params.n:
            raise FamilyFormatError(lineno, f"element {x} out of range 1..{params.n}")
    if len(elems) != params.k:
        raise FamilyFormatError(lineno, f"set has {len(elems)} elements, expected {params.k}")
    if any(a >= b for a, b in zip(elems, elems[1:])):
        raise FamilyFormatError(lineno, "elements must be strictly increasing")
    return kset(elems)


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped


def parse_family(text: str) -> Family:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FamilyFormatError(1, "missing header 'n=<int> k=<int>'") from None
    params = parse_header(header, lineno)
    seen: set[int] = set()
    for lineno, line in lines:
        mask = parse_member(line, lineno, params)
        if mask in seen:
            raise FamilyFormatError(lineno, f"duplicate set {elements_of(mask)}")
        seen.add(mask)
    return Family.from_masks(params, seen)


def format_member(mask: int) -> str:
    return " ".join(str(x) for x in elements_of(mask))


def serialize_family(F: Family) -> str:
    lines = [f"n={F.n} k={F.k}"]
    lines.extend(format_member(m) for m in F.members)
    return "\n".join(lines) + "\n"
