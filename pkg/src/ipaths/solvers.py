"""Max-IP, IP and k-IP solvers.

Internally scores are carried as materialized integers ``2**score``; every
comparison is therefore an exact integer comparison.  Results are handed back
as :class:`ExactScore` recomputed from the witness.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import ValidationError
from .graph import (
    DirectedPath,
    PathCollection,
    PathPartition,
    WeightedDigraph,
    path_value,
    require_dag,
    score_of_collection,
    score_of_path,
    validate_partition,
)
from .score import ExactScore


@dataclass(frozen=True)
class SolverBudget:
    max_nodes: int | None = None
    max_seconds: float | None = None


@dataclass(frozen=True)
class MaxIpResult:
    best_path: DirectedPath
    score: ExactScore


@dataclass(frozen=True)
class PackingResult:
    collection: PathCollection
    score: ExactScore
    optimal: bool
    nodes_explored: int


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    witness: PathCollection | PathPartition | None
    nodes_explored: int

    @property
    def yes(self) -> bool:
        return self.answer is Answer.YES


class _BudgetExhausted(Exception):
    pass


class _Found(Exception):
    pass


class _Meter:
    def __init__(self, budget: SolverBudget | None):
        budget = budget or SolverBudget()
        self.max_nodes = budget.max_nodes
        self.deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
        self.nodes = 0

    def tick(self) -> None:
        if self.max_nodes is not None and self.nodes >= self.max_nodes:
            raise _BudgetExhausted
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _BudgetExhausted
        self.nodes += 1


# ---------------------------------------------------------------- Max-IP


def max_ip_dag(graph: WeightedDigraph) -> MaxIpResult:
    """Best single path of a DAG.

    ``best[v][l]`` is the best value of an ``l``-edge path ending at ``v``;
    appending an edge at position ``l`` multiplies by ``(l+1)**w`` regardless
    of the prefix, so best prefixes compose.  Ties go to the lexicographically
    smallest edge-id sequence.
    """
    if graph.edge_count == 0:
        raise ValidationError("Max-IP needs at least one edge")
    order = require_dag(graph)
    best: list[dict[int, tuple[int, tuple[int, ...]]]] = [dict() for _ in range(graph.vertex_count)]
    champion: tuple[int, tuple[int, ...]] | None = None
    for v in order:
        for eid in graph.out_edges(v):
            e = graph.edges[eid]
            options = [(1, ())] + [best[v][l] for l in sorted(best[v])]
            for value, seq in options:
                length = len(seq) + 1
                cand = (value * (length + 1) ** e.weight, seq + (eid,))
                slot = best[e.target].get(length)
                if slot is None or _better(cand, slot):
                    best[e.target][length] = cand
                if champion is None or _better(cand, champion):
                    champion = cand
    path = DirectedPath(champion[1])
    return MaxIpResult(path, score_of_path(graph, path))


def _better(a: tuple[int, tuple], b: tuple[int, tuple]) -> bool:
    return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


# ---------------------------------------------------------------- k-paths


def enumerate_k_paths(graph: WeightedDigraph, k: int) -> list[DirectedPath]:
    """All simple k-edge paths, lexicographic in edge ids."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    out: list[DirectedPath] = []

    def extend(seq: list[int], visited: set[int]) -> None:
        if len(seq) == k:
            out.append(DirectedPath(seq))
            return
        for eid in graph.out_edges(graph.edges[seq[-1]].target):
            t = graph.edges[eid].target
            if t not in visited:
                visited.add(t)
                seq.append(eid)
                extend(seq, visited)
                seq.pop()
                visited.discard(t)

    for e in graph.edges:
        if e.source != e.target:
            extend([e.id], {e.source, e.target})
    out.sort(key=lambda p: p.edges)
    return out


class _Candidates:
    """k-paths sorted by descending value, then lexicographically."""

    def __init__(self, graph: WeightedDigraph, k: int):
        paths = enumerate_k_paths(graph, k)
        rows = [(path_value(graph, p.edges), p.edges) for p in paths]
        rows.sort(key=lambda r: (-r[0], r[1]))
        self.values = [r[0] for r in rows]
        self.edges = [r[1] for r in rows]
        self.masks = [sum(1 << e for e in r[1]) for r in rows]
        # factor contributed by each edge of each candidate, for the per-edge bound
        self.factors = [
            [(eid, (pos + 1) ** graph.edges[eid].weight) for pos, eid in enumerate(r[1], start=1)] for r in rows
        ]


def greedy_kip(graph: WeightedDigraph, k: int) -> PackingResult:
    """Repeatedly take the best remaining k-path; at least 1/k of the optimum."""
    cands = _Candidates(graph, k)
    used = 0
    chosen = []
    for mask, edges in zip(cands.masks, cands.edges):
        if not mask & used:
            used |= mask
            chosen.append(DirectedPath(edges))
    collection = PathCollection(chosen)
    return PackingResult(collection, score_of_collection(graph, collection), False, len(cands.masks))


def _kip_search(
    graph: WeightedDigraph,
    k: int,
    budget: SolverBudget | None,
    target: int | None,
    prune: bool = True,
):
    """Branch and bound over k-path packings.

    Branching picks the free edge with the fewest compatible candidates and
    tries each candidate through it (best first), then the branch where the
    edge stays unused.  Bound: the smaller of (a) the product of the best
    ``floor(coverable / k)`` compatible candidates and (b) the product over
    coverable edges of their best factor in any compatible candidate.
    """
    cands = _Candidates(graph, k)
    meter = _Meter(budget)
    count = len(cands.masks)
    state = {"best": 1, "best_set": (), "found": None}

    if target is None:
        greedy_used = 0
        greedy_pick = []
        value = 1
        for i in range(count):
            if not cands.masks[i] & greedy_used:
                greedy_used |= cands.masks[i]
                greedy_pick.append(i)
                value *= cands.values[i]
        state["best"], state["best_set"] = value, tuple(greedy_pick)

    def bound(compat: list[int]) -> int:
        coverable = 0
        best_factor: dict[int, int] = {}
        for i in compat:
            coverable |= cands.masks[i]
            for eid, f in cands.factors[i]:
                if f > best_factor.get(eid, 0):
                    best_factor[eid] = f
        room = min(bin(coverable).count("1") // k, len(compat))
        by_count = 1
        for i in compat[:room]:
            by_count *= cands.values[i]
        by_edge = 1
        for f in best_factor.values():
            by_edge *= f
        return min(by_count, by_edge)

    def visit(blocked: int, chosen: tuple[int, ...], value: int, compat: list[int]) -> None:
        meter.tick()
        if target is not None and value >= target:
            state["found"] = chosen
            raise _Found
        compat = [i for i in compat if not cands.masks[i] & blocked]
        if not compat:
            if target is None and value > state["best"]:
                state["best"], state["best_set"] = value, chosen
            return
        if prune:
            ub = value * bound(compat)
            if target is not None and ub < target:
                return
            if target is None and ub <= state["best"]:
                return
        elif target is None and value > state["best"]:
            state["best"], state["best_set"] = value, chosen

        through: dict[int, list[int]] = {}
        for i in compat:
            for eid in cands.edges[i]:
                through.setdefault(eid, []).append(i)
        pivot = min(through, key=lambda e: (len(through[e]), e))
        for i in through[pivot]:
            visit(blocked | cands.masks[i], chosen + (i,), value * cands.values[i], compat)
        visit(blocked | (1 << pivot), chosen, value, compat)

    exhausted = False
    try:
        visit(0, (), 1, list(range(count)))
    except _Found:
        pass
    except _BudgetExhausted:
        exhausted = True

    picked = state["found"] if state["found"] is not None else state["best_set"]
    collection = PathCollection(DirectedPath(cands.edges[i]) for i in sorted(picked))
    return collection, state["found"] is not None, exhausted, meter.nodes


def exact_kip(graph: WeightedDigraph, k: int, budget: SolverBudget | None = None, *, prune: bool = True) -> PackingResult:
    if k < 1:
        raise ValidationError("k must be >= 1")
    collection, _, exhausted, nodes = _kip_search(graph, k, budget, None, prune)
    return PackingResult(collection, score_of_collection(graph, collection), not exhausted, nodes)


def decide_kip(graph: WeightedDigraph, k: int, target: ExactScore, budget: SolverBudget | None = None) -> Verdict:
    """Is there an edge-disjoint set of k-paths scoring at least ``target``?"""
    if k < 1:
        raise ValidationError("k must be >= 1")
    collection, found, exhausted, nodes = _kip_search(graph, k, budget, target.materialize())
    if found:
        return Verdict(Answer.YES, collection, nodes)
    return Verdict(Answer.UNKNOWN if exhausted else Answer.NO, None, nodes)


# ---------------------------------------------------------------- IP


def _chainings(ins: tuple[int, ...], outs: tuple[int, ...]) -> list[tuple[int | None, ...]]:
    """Every injective partial map out-edge -> in-edge it continues (None = starts a path)."""
    result = []
    for r in range(min(len(ins), len(outs)) + 1):
        for out_pick in combinations(range(len(outs)), r):
            for in_pick in permutations(ins, r):
                pred: list[int | None] = [None] * len(outs)
                for slot, eid in zip(out_pick, in_pick):
                    pred[slot] = eid
                result.append(tuple(pred))
    return result


class _IpSearch:
    """Branch and bound over per-vertex chainings in topological order.

    At each vertex every out-edge either continues one in-edge's path or
    starts a new path, so an edge's position is fixed once its tail vertex is
    decided and the score is a product of per-edge factors.  The bound for the
    undecided part lets every vertex pair its heaviest out-edges with the
    deepest possible in-edges, where "deepest possible" is a longest-path
    relaxation seeded with the already fixed positions.
    """

    def __init__(self, graph: WeightedDigraph, budget: SolverBudget | None, target: int | None, prune: bool):
        if graph.edge_count == 0:
            raise ValidationError("IP needs at least one edge")
        self.graph = graph
        order = require_dag(graph)
        self.vertices = [v for v in order if graph.out_edges(v)]
        self.ins = [graph.in_edges(v) for v in range(graph.vertex_count)]
        self.outs = [graph.out_edges(v) for v in range(graph.vertex_count)]
        self.weights = [e.weight for e in graph.edges]
        self.outs_by_weight = [tuple(sorted(o, key=lambda e: -self.weights[e])) for o in self.outs]
        self.options = {v: _chainings(self.ins[v], self.outs[v]) for v in self.vertices}
        self.meter = _Meter(budget)
        self.target = target
        self.prune = prune
        self.pos = [0] * graph.edge_count
        self.pred: list[int | None] = [None] * graph.edge_count
        self._pow: dict[tuple[int, int], int] = {}
        self.best = 1
        for w in self.weights:
            self.best *= 2**w  # every edge a 1-path
        self.best_pred: list[int | None] = [None] * graph.edge_count
        self.found = False

    def factor(self, pos: int, w: int) -> int:
        key = (pos, w)
        f = self._pow.get(key)
        if f is None:
            f = self._pow[key] = (pos + 1) ** w
        return f

    def rest_bound(self, idx: int) -> int:
        ub = self.pos[:]
        total = 1
        for v in self.vertices[idx:]:
            depths = sorted((ub[e] for e in self.ins[v]), reverse=True)
            top = depths[0] + 1 if depths else 1
            for j, eid in enumerate(self.outs_by_weight[v]):
                p = depths[j] + 1 if j < len(depths) else 1
                total *= self.factor(p, self.weights[eid])
                ub[eid] = top
        return total

    def visit(self, idx: int, value: int) -> None:
        self.meter.tick()
        if idx == len(self.vertices):
            if self.target is not None:
                if value >= self.target:
                    self.best_pred = self.pred[:]
                    self.found = True
                    raise _Found
            elif value > self.best:
                self.best, self.best_pred = value, self.pred[:]
            return
        if self.prune:
            ub = value * self.rest_bound(idx)
            if self.target is not None and ub < self.target:
                return
            if self.target is None and ub <= self.best:
                return

        v = self.vertices[idx]
        outs = self.outs[v]
        scored = []
        for n, option in enumerate(self.options[v]):
            gain = 1
            for eid, src in zip(outs, option):
                p = 1 if src is None else self.pos[src] + 1
                gain *= self.factor(p, self.weights[eid])
            scored.append((-gain, n, option))
        scored.sort(key=lambda t: (t[0], t[1]))
        for neg_gain, _, option in scored:
            for eid, src in zip(outs, option):
                self.pos[eid] = 1 if src is None else self.pos[src] + 1
                self.pred[eid] = src
            self.visit(idx + 1, value * -neg_gain)
        for eid in outs:
            self.pos[eid] = 0
            self.pred[eid] = None

    def run(self):
        exhausted = False
        if self.target is not None and self.best >= self.target:
            self.found = True
        else:
            try:
                self.visit(0, 1)
            except _Found:
                pass
            except _BudgetExhausted:
                exhausted = True
        return self.collection(self.best_pred), exhausted

    def collection(self, pred: list[int | None]) -> PathCollection:
        succ: dict[int, int] = {}
        for eid, src in enumerate(pred):
            if src is not None:
                succ[src] = eid
        paths = []
        for eid in range(self.graph.edge_count):
            if pred[eid] is None:
                seq = [eid]
                while seq[-1] in succ:
                    seq.append(succ[seq[-1]])
                paths.append(DirectedPath(seq))
        return PathCollection(paths)


def exact_ip(graph: WeightedDigraph, budget: SolverBudget | None = None, *, prune: bool = True) -> PackingResult:
    """Best path partition of a DAG; best-so-far with ``optimal=False`` on budget exhaustion."""
    search = _IpSearch(graph, budget, None, prune)
    collection, exhausted = search.run()
    validate_partition(graph, collection)
    return PackingResult(collection, score_of_collection(graph, collection), not exhausted, search.meter.nodes)


def decide_ip(graph: WeightedDigraph, target: ExactScore, budget: SolverBudget | None = None) -> Verdict:
    """Is there a path partition scoring at least ``target``?"""
    search = _IpSearch(graph, budget, target.materialize(), True)
    collection, exhausted = search.run()
    if search.found:
        return Verdict(Answer.YES, validate_partition(graph, collection), search.meter.nodes)
    return Verdict(Answer.UNKNOWN if exhausted else Answer.NO, None, search.meter.nodes)
