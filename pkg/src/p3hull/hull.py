"""P3-convexity (threshold-2 bootstrap percolation) on a SubspaceGraph.

``interval(g, T)`` adds every vertex with at least two neighbours in T;
``hull(g, T)`` iterates it to the least fixpoint.  The fixpoint uses
per-vertex infected-neighbour counters and only scans the adjacency of each
vertex once, when it becomes infected, so one hull costs O(V + E).  Rounds
are recorded with synchronous semantics: round p holds exactly
``I^p[T] \\ I^{p-1}[T]``.
"""

from __future__ import annotations

import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

import numpy as np

from .errors import IdOutOfRange, LimitExceeded
from .graphgen import SubspaceGraph


class VertexSet:
    """Set of vertex ids of one graph, backed by a boolean mask."""

    __slots__ = ("mask",)

    def __init__(self, size: int, ids: Iterable[int] = (), mask: np.ndarray | None = None):
        if mask is not None:
            self.mask = np.asarray(mask, dtype=bool).copy()
            return
        self.mask = np.zeros(size, dtype=bool)
        ids = np.fromiter((int(i) for i in ids), dtype=np.int64)
        if ids.size and (ids.min() < 0 or ids.max() >= size):
            raise IdOutOfRange(f"vertex ids must lie in [0, {size})")
        self.mask[ids] = True

    @classmethod
    def full(cls, size: int) -> "VertexSet":
        return cls(size, mask=np.ones(size, dtype=bool))

    @property
    def size(self) -> int:
        return self.mask.size

    def ids(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def add(self, v: int) -> None:
        if not 0 <= v < self.mask.size:
            raise IdOutOfRange(f"vertex id {v} out of range")
        self.mask[v] = True

    def __contains__(self, v) -> bool:
        return 0 <= v < self.mask.size and bool(self.mask[v])

    def __iter__(self):
        return iter(self.ids().tolist())

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __eq__(self, other) -> bool:
        if isinstance(other, VertexSet):
            return self.mask.size == other.mask.size and bool((self.mask == other.mask).all())
        return NotImplemented

    def __le__(self, other: "VertexSet") -> bool:
        return not (self.mask & ~other.mask).any()

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.size, mask=self.mask | other.mask)

    def __repr__(self):
        ids = self.ids()
        shown = ", ".join(map(str, ids[:8])) + (", ..." if ids.size > 8 else "")
        return f"VertexSet({len(ids)}/{self.size}: {{{shown}}})"


def _as_vertex_set(g: SubspaceGraph, T) -> VertexSet:
    if isinstance(T, VertexSet):
        if T.size != g.num_vertices:
            raise IdOutOfRange("vertex set belongs to a graph of another size")
        return T
    return VertexSet(g.num_vertices, T)


def _gather_neighbors(g: SubspaceGraph, vs: np.ndarray) -> np.ndarray:
    """Concatenated adjacency lists of the vertices ``vs``."""
    starts = g.indptr[vs]
    lens = g.indptr[vs + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    offsets = np.repeat(starts - np.concatenate([[0], np.cumsum(lens)[:-1]]), lens)
    return g.indices[offsets + np.arange(total)]


def _neighbor_counts(g: SubspaceGraph, mask: np.ndarray) -> np.ndarray:
    return np.bincount(_gather_neighbors(g, np.flatnonzero(mask)), minlength=g.num_vertices)


def interval(g: SubspaceGraph, T) -> VertexSet:
    """I[T] = T plus every vertex with at least two neighbours in T."""
    T = _as_vertex_set(g, T)
    return VertexSet(g.num_vertices, mask=T.mask | (_neighbor_counts(g, T.mask) >= 2))


@dataclass
class InfectionTrace:
    seed: np.ndarray
    rounds: list[np.ndarray] = field(default_factory=list)

    @property
    def converged_at(self) -> int:
        return len(self.rounds)

    def replay(self, size: int) -> VertexSet:
        out = VertexSet(size, self.seed)
        for r in self.rounds:
            out.mask[r] = True
        return out


def hull(g: SubspaceGraph, T) -> tuple[VertexSet, InfectionTrace]:
    """The P3-convex hull of T and its round-by-round trace."""
    T = _as_vertex_set(g, T)
    infected = T.mask.copy()
    counter = np.zeros(g.num_vertices, dtype=np.int64)
    frontier = np.flatnonzero(infected)
    trace = InfectionTrace(seed=frontier.copy())
    while frontier.size:
        counter += np.bincount(_gather_neighbors(g, frontier), minlength=g.num_vertices)
        new = np.flatnonzero((counter >= 2) & ~infected)
        if not new.size:
            break
        infected[new] = True
        trace.rounds.append(new)
        frontier = new
    return VertexSet(g.num_vertices, mask=infected), trace


def hull_by_sweeps(g: SubspaceGraph, T) -> VertexSet:
    """Reference fixpoint: recompute I over the whole current set each pass."""
    cur = _as_vertex_set(g, T)
    while True:
        nxt = interval(g, cur)
        if nxt == cur:
            return cur
        cur = nxt


def is_hull_set(g: SubspaceGraph, T) -> bool:
    H, _ = hull(g, T)
    return bool(H.mask.all())


def verify_no_singleton_hull(g: SubspaceGraph) -> bool:
    """True iff hull({v}) = {v} for every vertex v, i.e. h(G) >= 2.

    A vertex w joins I[{v}] only if it has two neighbours in {v}; that needs
    a repeated entry in w's adjacency list, so it suffices to check that no
    adjacency list contains v twice or contains w itself.
    """
    if g.num_vertices < 2:
        warnings.warn("graph has fewer than 2 vertices; h >= 2 holds vacuously", stacklevel=2)
        return True
    for v in range(g.num_vertices):
        nb = g.neighbors(v)
        if nb.size and ((np.diff(nb) <= 0).any() or (nb == v).any()):
            return False
    return True


# -- pair search -------------------------------------------------------------


class Strategy(str, Enum):
    PAPER = "paper_construction"
    FIX_FIRST = "fix_first_exhaustive"
    FULL = "full_exhaustive"

    @classmethod
    def parse(cls, value) -> "Strategy":
        if isinstance(value, Strategy):
            return value
        key = str(value).lower().replace("-", "_")
        aliases = {"paper": cls.PAPER, "paper_construction": cls.PAPER,
                   "fix_first": cls.FIX_FIRST, "fix_first_exhaustive": cls.FIX_FIRST,
                   "full": cls.FULL, "full_exhaustive": cls.FULL}
        if key not in aliases:
            raise ValueError(f"unknown search strategy {value!r}")
        return aliases[key]


@dataclass
class PairSearchResult:
    strategy: Strategy
    pair: tuple[int, int] | None
    trace: InfectionTrace | None
    pairs_checked: int
    witnesses: list[tuple[int, int]] = field(default_factory=list)


def _paper_pair(g: SubspaceGraph) -> tuple[int, int]:
    from .constructions import paper_pair

    w1, w2 = paper_pair(g.family, g.q, g.n, g.k)
    a, b = g.id_of(w1), g.id_of(w2)
    assert a is not None and b is not None
    return a, b


def find_hull_pair(g: SubspaceGraph, strategy="full_exhaustive", max_pairs: int | None = None,
                   collect_all: bool = False, threads: int = 1) -> PairSearchResult:
    """Search for two vertices whose hull is the whole vertex set.

    ``fix_first_exhaustive`` pins the first vertex to id 0, which is only a
    complete search for vertex-transitive graphs; it is never applied unless
    requested.  With ``collect_all`` the full search keeps scanning and
    lists every working pair.  Candidates are reported in enumeration order
    whatever ``threads`` is.  Raises LimitExceeded once ``max_pairs`` hulls
    were computed without an answer.
    """
    strategy = Strategy.parse(strategy)
    N = g.num_vertices
    if strategy is Strategy.PAPER:
        a, b = _paper_pair(g)
        H, tr = hull(g, [a, b])
        ok = bool(H.mask.all())
        return PairSearchResult(strategy, (a, b) if ok else None, tr, 1, [(a, b)] if ok else [])

    if strategy is Strategy.FIX_FIRST:
        candidates = ((0, v) for v in range(1, N))
    else:
        candidates = ((u, v) for u in range(N) for v in range(u + 1, N))

    def check(pair):
        H, tr = hull(g, pair)
        return pair, bool(H.mask.all()), tr

    result = PairSearchResult(strategy, None, None, 0)
    chunk = max(1, 64 * max(1, threads))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        while True:
            batch = []
            for pair in candidates:
                batch.append(pair)
                if len(batch) == chunk:
                    break
            if not batch:
                break
            if max_pairs is not None and result.pairs_checked + len(batch) > max_pairs:
                batch = batch[: max(0, max_pairs - result.pairs_checked)]
            for pair, ok, tr in pool.map(check, batch):
                result.pairs_checked += 1
                if ok:
                    if result.pair is None:
                        result.pair, result.trace = pair, tr
                    result.witnesses.append(pair)
                    if not collect_all:
                        return result
            if max_pairs is not None and result.pairs_checked >= max_pairs:
                if result.pair is not None:
                    return result
                raise LimitExceeded(f"no hull pair among the first {result.pairs_checked} candidates")
    return result


# -- export ------------------------------------------------------------------


def trace_to_dict(g: SubspaceGraph, trace: InfectionTrace) -> dict:
    final = trace.replay(g.num_vertices)
    return {
        "family": g.family.value,
        "q": g.q,
        "n": g.n,
        "k": g.k,
        "seed": [g.vertex(int(v)).canonical() for v in trace.seed],
        "rounds": [r.tolist() for r in trace.rounds],
        "converged_at": trace.converged_at,
        "hull_size": len(final),
        "is_hull_set": bool(final.mask.all()),
    }


def trace_to_json(g: SubspaceGraph, trace: InfectionTrace, **kwargs) -> str:
    return json.dumps(trace_to_dict(g, trace), **kwargs)
