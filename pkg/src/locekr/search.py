"""Exhaustive maximization of the localized sum over all families in C([n], k).

Two independent routes:

* :func:`max_phi_naive` scores every subset of C([n], k) with vectorized
  bit tricks. It is the oracle.
* :func:`max_phi_canonical` runs orderly generation (each isomorphism class
  is visited once, as its canonical form) with branch-and-bound pruning.

Scores are kept as integers scaled by L = lcm of C(n-i, k-i), i = 0..k, so
every comparison is exact.
"""

from __future__ import annotations

import math
import multiprocessing as mp
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from .bounds import conjectured_threshold, sharpness_bound
from .constructions import j_family
from .exact import binomial, render, scaled_weights
from .phi import phi_direct
from .setfamily import (
    Family,
    GroundParams,
    MAX_N,
    canonical_members,
    ksets,
    serialize_family,
)

NAIVE_LIMIT = 24
WITNESS_CAP = 1000
_CHUNK = 1 << 20


class SearchRefused(ValueError):
    pass


@dataclass
class SearchResult:
    params: GroundParams
    mode: str
    max_phi: Fraction
    witnesses: list[Family]
    nodes_explored: int
    complete: bool = True
    overflow: bool = False

    def witness_keys(self) -> set[tuple[int, ...]]:
        return {w.members for w in self.witnesses}


# -- naive oracle -----------------------------------------------------------

def _pair_table(masks: list[int]) -> list[list[int]]:
    return [[(a & b).bit_count() for b in masks] for a in masks]


def _collect_witnesses(keys: Iterable[tuple[int, ...]], params: GroundParams):
    found: set[tuple[int, ...]] = set()
    overflow = False
    for members in keys:
        canon = canonical_members(members, params.n)
        if canon in found:
            continue
        if len(found) >= WITNESS_CAP:
            overflow = True
            break
        found.add(canon)
    witnesses = [Family(params, m, _checked=True) for m in sorted(found)]
    return witnesses, overflow


def max_phi_naive(n: int, k: int) -> SearchResult:
    """Score all 2^C(n,k) families (the empty one included)."""
    params = GroundParams(n, k)
    N = binomial(n, k)
    if N > NAIVE_LIMIT:
        raise SearchRefused(
            f"naive search enumerates 2^C(n,k) families and is limited to "
            f"C(n,k) <= {NAIVE_LIMIT}; C({n},{k}) = {N}")
    masks = ksets(n, k)
    inter = _pair_table(masks)
    L, W = scaled_weights(n, k)
    if L * max(N, 1) >= 1 << 62:
        raise SearchRefused(f"scaled weights overflow 64-bit integers for n={n}, k={k}")
    # below[a][v]: subsets-of-indices mask of members meeting a in <= v points
    below = [[sum(1 << b for b in range(N) if inter[a][b] <= v) for v in range(k)]
             for a in range(N)]
    total = 1 << N
    best = -1
    best_subsets: list[int] = []
    for start in range(0, total, _CHUNK):
        s = np.arange(start, min(total, start + _CHUNK), dtype=np.uint64)
        score = np.zeros(len(s), dtype=np.int64)
        for a in range(N):
            w = np.full(len(s), W[k], dtype=np.int64)
            for v in range(k - 1, -1, -1):
                hit = (s & np.uint64(below[a][v])) != 0
                w = np.where(hit, W[v], w)
            present = ((s >> np.uint64(a)) & np.uint64(1)).astype(bool)
            score += np.where(present, w, 0)
        top = int(score.max())
        if top > best:
            best = top
            best_subsets = []
        if top == best:
            best_subsets.extend(int(x) for x in s[score == top])
    keys = (tuple(masks[a] for a in range(N) if sub >> a & 1) for sub in best_subsets)
    witnesses, overflow = _collect_witnesses(keys, params)
    return SearchResult(params, "naive", Fraction(best, L), witnesses,
                        nodes_explored=total, complete=True, overflow=overflow)


# -- orderly generation with branch and bound ---------------------------------

@dataclass
class _Event:
    nodes: int
    scaled: int
    members: tuple[int, ...]


@dataclass
class _Searcher:
    n: int
    k: int
    budget: Optional[int]
    shared_best: object = None      # mp.Value('d'), lower estimate of the incumbent
    shared_nodes: object = None     # mp.Value('q')
    on_event: Optional[Callable[[_Event], None]] = None

    best: int = -1
    witnesses: list = field(default_factory=list)
    overflow: bool = False
    nodes: int = 0
    complete: bool = True

    def __post_init__(self):
        self.masks = ksets(self.n, self.k)
        self.N = len(self.masks)
        self.L, self.W = scaled_weights(self.n, self.k)
        self.inter = _pair_table(self.masks) if self.N <= 2048 else None
        self._shared_floor = -1
        self._unsynced = 0

    def meet(self, a: int, b: int) -> int:
        if self.inter is not None:
            return self.inter[a][b]
        return (self.masks[a] & self.masks[b]).bit_count()

    def _sync(self):
        if self.shared_nodes is not None:
            with self.shared_nodes.get_lock():
                self.shared_nodes.value += self._unsynced
                total = self.shared_nodes.value
            self._unsynced = 0
            if self.budget is not None and total >= self.budget:
                self.complete = False
        if self.shared_best is not None:
            s = self.shared_best.value
            if s > 0:
                self._shared_floor = math.ceil(Fraction(s) * self.L)

    def _publish(self):
        if self.shared_best is None:
            return
        # round down so a shared value never exceeds the true incumbent
        est = math.nextafter(self.best / self.L, -math.inf)
        with self.shared_best.get_lock():
            if est > self.shared_best.value:
                self.shared_best.value = est

    def _record(self, idx: list[int], score: int):
        members = tuple(self.masks[i] for i in idx)
        if score > self.best:
            self.best = score
            self.witnesses = [members]
            self.overflow = False
            self._publish()
            if self.on_event:
                self.on_event(_Event(self.nodes, score, members))
        elif score == self.best:
            if len(self.witnesses) < WITNESS_CAP:
                self.witnesses.append(members)
            else:
                self.overflow = True

    def _is_canonical(self, idx: list[int]) -> bool:
        members = tuple(self.masks[i] for i in idx)
        return canonical_members(members, self.n) == members

    def _bound(self, score: int, caps: list[int], after: int) -> int:
        W = self.W
        return score + sum(W[caps[y]] for y in range(after + 1, self.N))

    def _threshold(self) -> int:
        return max(self.best, self._shared_floor)

    def visit(self, idx: list[int], ivals: list[int], score: int, caps: list[int]):
        """Process a canonical node and its subtree."""
        if not self.complete:
            return
        self.nodes += 1
        self._unsynced += 1
        if self.budget is not None and self.shared_nodes is None and self.nodes >= self.budget:
            self.complete = False
        if self._unsynced >= 256:
            self._sync()
        self._record(idx, score)
        if not self.complete:
            return
        last = idx[-1] if idx else -1
        W, k = self.W, self.k
        for x in range(last + 1, self.N):
            if not self.complete:
                return
            row = [self.meet(x, a) for a in idx]
            new_ivals = [min(i, r) for i, r in zip(ivals, row)]
            ix = min(row, default=k)
            new_ivals.append(ix)
            new_score = sum(W[i] for i in new_ivals)
            new_caps = [min(c, self.meet(y, x)) for y, c in enumerate(caps)]
            # admissible: existing terms only shrink and a later member y scores <= W[caps[y]]
            if self._bound(new_score, new_caps, x) < self._threshold():
                continue
            child = idx + [x]
            if not self._is_canonical(child):
                continue
            self.visit(child, new_ivals, new_score, new_caps)

    def root(self):
        self.visit([], [], 0, [self.k] * self.N)

    def children_of(self, idx, ivals, score, caps):
        """Canonical children of a node, with their state, for task splitting."""
        out = []
        last = idx[-1] if idx else -1
        for x in range(last + 1, self.N):
            row = [self.meet(x, a) for a in idx]
            new_ivals = [min(i, r) for i, r in zip(ivals, row)] + [min(row, default=self.k)]
            child = idx + [x]
            if self._is_canonical(child):
                caps2 = [min(c, self.meet(y, x)) for y, c in enumerate(caps)]
                out.append((child, new_ivals, sum(self.W[i] for i in new_ivals), caps2))
        return out


def _finish(params, mode, best, L, keys, nodes, complete, overflow) -> SearchResult:
    keys = sorted(set(keys))
    if len(keys) > WITNESS_CAP:
        keys = keys[:WITNESS_CAP]
        overflow = True
    witnesses = [Family(params, m, _checked=True) for m in keys]
    return SearchResult(params, mode, Fraction(best, L), witnesses,
                        nodes_explored=nodes, complete=complete, overflow=overflow)


_worker_state: dict = {}


def _worker_init(shared_best, shared_nodes):
    _worker_state["best"] = shared_best
    _worker_state["nodes"] = shared_nodes


def _run_task(args):
    n, k, budget, start_best, node = args
    s = _Searcher(n, k, budget, shared_best=_worker_state["best"],
                  shared_nodes=_worker_state["nodes"])
    events = []
    s.on_event = events.append
    s.best = start_best
    s.witnesses = []
    s._sync()
    if s.complete:
        s.visit(*node)
    s._sync()
    return s.best, s.witnesses, s.nodes, s.complete, s.overflow, events


def max_phi_canonical(n: int, k: int, budget: Optional[int] = None, threads: int = 1,
                      log: Optional[Callable[[int, Fraction, Family], None]] = None) -> SearchResult:
    """Isomorph-free branch and bound; identical result to the naive oracle.

    `budget` caps the number of canonical nodes visited; when it runs out the
    result carries the best value seen so far with ``complete=False``.
    """
    params = GroundParams(n, k)
    if not 1 <= k <= n <= MAX_N:
        raise ValueError(f"need 1 <= k <= n <= {MAX_N}")

    def emit(ev: _Event):
        if log is not None:
            log(ev.nodes, Fraction(ev.scaled, L), Family(params, ev.members, _checked=True))

    s = _Searcher(n, k, budget, on_event=emit)
    L = s.L
    sys.setrecursionlimit(max(sys.getrecursionlimit(), s.N + 200))
    if threads <= 1:
        s.root()
        return _finish(params, "canonical", s.best, L, s.witnesses, s.nodes,
                       s.complete, s.overflow)

    # empty family and the single canonical singleton run here; depth-2 prefixes are tasks
    root = ([], [], 0, [k] * s.N)
    s.nodes = 1
    s._record([], 0)
    (single,) = s.children_of(*root)
    s.nodes += 1
    s._record(single[0], single[2])
    prefixes = s.children_of(*single)
    shared_best = mp.Value("d", -1.0)
    shared_nodes = mp.Value("q", s.nodes)
    s.shared_best = shared_best
    s._publish()
    tasks = [(n, k, budget, s.best, p) for p in prefixes]
    best, keys = s.best, list(s.witnesses)
    nodes, complete, overflow = s.nodes, True, s.overflow
    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(max_workers=threads, mp_context=ctx,
                             initializer=_worker_init,
                             initargs=(shared_best, shared_nodes)) as pool:
        for t_best, t_keys, t_nodes, t_complete, t_overflow, events in pool.map(_run_task, tasks):
            nodes += t_nodes
            complete &= t_complete
            for ev in events:
                if ev.scaled > best:
                    emit(ev)
            if t_best > best:
                best, keys, overflow = t_best, list(t_keys), t_overflow
            elif t_best == best:
                keys.extend(t_keys)
                overflow |= t_overflow
    return _finish(params, "canonical", best, L, keys, nodes, complete, overflow)


def run_search(n: int, k: int, mode: str = "canonical", budget: Optional[int] = None,
               threads: int = 1, log=None) -> SearchResult:
    if mode == "naive":
        return max_phi_naive(n, k)
    if mode == "canonical":
        return max_phi_canonical(n, k, budget=budget, threads=threads, log=log)
    raise ValueError(f"unknown search mode {mode!r}")


def render_incumbent(nodes: int, phi: Fraction, family: Family) -> str:
    body = serialize_family(family).rstrip("\n").replace("\n", " | ")
    return f"incumbent\tnodes={nodes}\tphi={render(phi)}\t{body}"


def render_result(res: SearchResult) -> str:
    lines = [
        "# search result",
        f"n\t{res.params.n}",
        f"k\t{res.params.k}",
        f"mode\t{res.mode}",
        f"complete\t{'yes' if res.complete else 'no (budget exhausted)'}",
        f"nodes\t{res.nodes_explored}",
        f"max_phi\t{render(res.max_phi)}",
        f"witnesses\t{len(res.witnesses)}{' (overflow: capped)' if res.overflow else ''}",
    ]
    for i, w in enumerate(res.witnesses, start=1):
        lines.append(f"# witness {i}")
        lines.append(serialize_family(w).rstrip("\n"))
    return "\n".join(lines) + "\n"


# -- sharpness scan -------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    n: int
    k: int
    t: int
    size: int
    star_size: int
    phi: Fraction
    bound: Fraction

    @property
    def violation(self) -> bool:
        return self.phi > 1


def scan_counterexamples(k: int, t: int, n_range: Iterable[int]) -> list[ScanRow]:
    if not 1 <= t <= k - 2:
        raise ValueError(f"scan needs 1 <= t <= k-2, got k={k} t={t}")
    rows = []
    for n in n_range:
        if n <= k:
            raise ValueError(f"scan needs n > k, got n={n} k={k}")
        J = j_family(n, k, t)
        rows.append(ScanRow(n, k, t, len(J), binomial(n - t, k - t), phi_direct(J),
                            sharpness_bound(n, k, t)))
    return rows


SCAN_HEADER = "n\tk\tt\t|J_t|\tC(n-t,k-t)\tphi\tphi_decimal\tbound\tviolation"


def render_scan(rows: list[ScanRow]) -> str:
    from .exact import render_decimal
    lines = [SCAN_HEADER]
    for r in rows:
        lines.append("\t".join([
            str(r.n), str(r.k), str(r.t), str(r.size), str(r.star_size),
            f"{r.phi.numerator}/{r.phi.denominator}", render_decimal(r.phi),
            f"{r.bound.numerator}/{r.bound.denominator}",
            "true" if r.violation else "false",
        ]))
    return "\n".join(lines) + "\n"


# -- conjecture probe -----------------------------------------------------------

@dataclass
class ConjectureVerdict:
    status: str                 # CONFIRMED, REFUTED or INCONCLUSIVE
    threshold: int
    in_range: bool
    result: SearchResult
    witness: Optional[Family] = None


def verify_conjecture(n: int, k: int, budget: Optional[int] = None, threads: int = 1,
                      log=None) -> ConjectureVerdict:
    threshold = conjectured_threshold(k)
    res = max_phi_canonical(n, k, budget=budget, threads=threads, log=log)
    witness = None
    if res.max_phi > 1:
        witness = res.witnesses[0]
        # re-derive the value independently of the search bookkeeping
        if phi_direct(witness) <= 1:
            raise AssertionError("search reported an invalid witness")
        status = "REFUTED"
    elif res.complete:
        status = "CONFIRMED"
    else:
        status = "INCONCLUSIVE"
    return ConjectureVerdict(status, threshold, n >= threshold, res, witness)


def render_verdict(v: ConjectureVerdict) -> str:
    res = v.result
    lines = [
        "# conjecture probe",
        f"n\t{res.params.n}",
        f"k\t{res.params.k}",
        f"threshold\t{v.threshold}",
        f"range\t{'inside conjecture range' if v.in_range else 'outside conjecture range'}",
        f"nodes\t{res.nodes_explored}",
        f"max_phi\t{render(res.max_phi)}",
        f"verdict\t{v.status}",
    ]
    if v.witness is not None:
        lines.append("# witness")
        lines.append(serialize_family(v.witness).rstrip("\n"))
    return "\n".join(lines) + "\n"
