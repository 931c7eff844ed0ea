"""Brute-force reference solvers.

Nothing here shares search code with :mod:`ipaths.solvers`; agreement between
the two is what the test-suite and ``verify`` rely on.  Every oracle has a
hard size limit and raises :class:`OracleLimitError` rather than truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .errors import OracleLimitError, ValidationError
from .graph import DirectedPath, PathCollection, WeightedDigraph, score_of_collection, score_of_path, topological_order
from .reductions.sat import Assignment, CnfFormula
from .reductions.setcover import CubicGraph, SetCoverInstance
from .solvers import MaxIpResult, PackingResult


@dataclass(frozen=True)
class OracleLimit:
    max_items: int

    def check(self, count: int, what: str) -> None:
        if count > self.max_items:
            raise OracleLimitError(f"{what}: {count} exceeds the oracle limit of {self.max_items}")


def brute_force_sat(f: CnfFormula, limit: OracleLimit = OracleLimit(24)) -> Assignment | None:
    """Lexicographically first satisfying assignment (False before True, x1 first)."""
    limit.check(f.n, "variables")
    for values in product((False, True), repeat=f.n):
        if all(any(values[abs(l) - 1] == (l > 0) for l in clause) for clause in f.clauses):
            return Assignment(values)
    return None


def _min_hitting(universe_size: int, groups: list[set[int]], tau: int) -> frozenset[int] | None:
    for r in range(0, len(groups) + 1):
        if r > tau:
            return None
        for pick in combinations(range(len(groups)), r):
            covered = set()
            for j in pick:
                covered |= groups[j]
            if len(covered) == universe_size:
                return frozenset(pick)
    return None


def brute_force_set_cover(sc: SetCoverInstance, limit: OracleLimit = OracleLimit(24)) -> frozenset[int] | None:
    """A minimum cover (first in lexicographic order) if its size is at most tau."""
    limit.check(sc.m, "sets")
    return _min_hitting(sc.n, [set(s) for s in sc.sets], sc.tau)


def brute_force_vertex_cover(g: CubicGraph, tau: int, limit: OracleLimit = OracleLimit(20)) -> frozenset[int] | None:
    limit.check(g.vertex_count, "vertices")
    incident = [set() for _ in range(g.vertex_count)]
    for idx, (u, v) in enumerate(g.edges):
        incident[u].add(idx)
        incident[v].add(idx)
    return _min_hitting(len(g.edges), incident, tau)


def _simple_paths(graph: WeightedDigraph, limit: OracleLimit):
    """Every simple path as an edge tuple, grown vertex by vertex with an explicit stack."""
    found = []
    for start in range(graph.vertex_count):
        stack = [(start, (), frozenset([start]))]
        while stack:
            v, seq, seen = stack.pop()
            for e in graph.edges:
                if e.source == v and e.target not in seen:
                    path = seq + (e.id,)
                    found.append(path)
                    limit.check(len(found), "simple paths")
                    stack.append((e.target, path, seen | {e.target}))
    return found


def _value(graph: WeightedDigraph, seq: tuple[int, ...]) -> int:
    value = 1
    for i, eid in enumerate(seq):
        value *= (i + 2) ** graph.edges[eid].weight
    return value


def brute_force_max_ip(graph: WeightedDigraph, limit: OracleLimit = OracleLimit(200_000)) -> MaxIpResult:
    paths = _simple_paths(graph, limit)
    if not paths:
        raise ValidationError("graph has no edges")
    values = {p: _value(graph, p) for p in paths}
    top = max(values.values())
    best = min(p for p in paths if values[p] == top)
    path = DirectedPath(best)
    return MaxIpResult(path, score_of_path(graph, path))


def brute_force_kip(graph: WeightedDigraph, k: int, limit: OracleLimit = OracleLimit(1 << 20)) -> PackingResult:
    """Exhaustive search over all edge-disjoint sets of k-paths."""
    kpaths = sorted(p for p in _simple_paths(graph, OracleLimit(limit.max_items)) if len(p) == k)
    values = [_value(graph, p) for p in kpaths]
    sets = [frozenset(p) for p in kpaths]
    best = [1, ()]
    visited = [0]

    def grow(start: int, used: frozenset, chosen: tuple, value: int) -> None:
        visited[0] += 1
        limit.check(visited[0], "packings enumerated")
        if value > best[0] or (value == best[0] and chosen < best[1]):
            best[0], best[1] = value, chosen
        for i in range(start, len(kpaths)):
            if not sets[i] & used:
                grow(i + 1, used | sets[i], chosen + (i,), value * values[i])

    grow(0, frozenset(), (), 1)
    c = PathCollection(kpaths[i] for i in best[1])
    return PackingResult(c, score_of_collection(graph, c), True, visited[0])


def brute_force_ip(graph: WeightedDigraph, limit: OracleLimit = OracleLimit(2_000_000)) -> PackingResult:
    """Enumerate every combination of per-vertex in/out chainings of a DAG."""
    if graph.edge_count > 14:
        raise OracleLimitError(f"{graph.edge_count} edges; brute_force_ip handles at most 14")
    ts = topological_order(graph)
    if not ts.acyclic:
        raise ValidationError("brute_force_ip needs a DAG")

    per_vertex = []
    total = 1
    for v in range(graph.vertex_count):
        ins = [e.id for e in graph.edges if e.target == v]
        outs = [e.id for e in graph.edges if e.source == v]
        maps = []
        for r in range(min(len(ins), len(outs)) + 1):
            for o in combinations(outs, r):
                for i in permutations(ins, r):
                    maps.append(dict(zip(o, i)))
        per_vertex.append(maps)
        total *= len(maps)
    limit.check(total, "chaining combinations")

    best_value, best_paths = 0, None
    for choice in product(*per_vertex):
        nxt = {}
        starts = set(range(graph.edge_count))
        for mapping in choice:
            for out_e, in_e in mapping.items():
                nxt[in_e] = out_e
                starts.discard(out_e)
        paths = []
        value = 1
        for s in sorted(starts):
            seq = [s]
            while seq[-1] in nxt:
                seq.append(nxt[seq[-1]])
            paths.append(tuple(seq))
            value *= _value(graph, tuple(seq))
        if value > best_value:
            best_value, best_paths = value, paths
    c = PathCollection(best_paths)
    return PackingResult(c, score_of_collection(graph, c), True, total)
