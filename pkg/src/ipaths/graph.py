"""Directed multigraphs with natural edge weights, and path bookkeeping."""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    CycleError,
    DisjointnessError,
    InvalidPathError,
    MissingEdgesError,
    SignatureError,
    ValidationError,
)
from .score import ExactScore, factorize


@dataclass(frozen=True)
class Edge:
    id: int
    source: int
    target: int
    weight: int
    signature: int | None = None


class WeightedDigraph:
    """Immutable directed multigraph; edges are identified by dense ids.

    Parallel edges and self-loops are representable; every weight is >= 1.
    """

    __slots__ = ("vertex_count", "edges", "_out", "_in")

    def __init__(self, vertex_count: int, edges: Iterable[Edge | Sequence]):
        if vertex_count < 0:
            raise ValidationError("vertex count must be natural")
        built = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        built.sort(key=lambda e: e.id)
        if [e.id for e in built] != list(range(len(built))):
            raise ValidationError("edge ids must be exactly 0..|E|-1")
        out: list[list[int]] = [[] for _ in range(vertex_count)]
        inc: list[list[int]] = [[] for _ in range(vertex_count)]
        for e in built:
            for v in (e.source, e.target):
                if not 0 <= v < vertex_count:
                    raise ValidationError(f"edge {e.id}: endpoint {v} out of range")
            if not isinstance(e.weight, int) or e.weight < 1:
                raise ValidationError(f"edge {e.id}: weight must be a natural >= 1, got {e.weight!r}")
            if e.signature is not None and e.signature < 0:
                raise ValidationError(f"edge {e.id}: signature must be natural")
            out[e.source].append(e.id)
            inc[e.target].append(e.id)
        self.vertex_count = vertex_count
        self.edges: tuple[Edge, ...] = tuple(built)
        self._out = tuple(map(tuple, out))
        self._in = tuple(map(tuple, inc))

    @classmethod
    def from_triples(cls, vertex_count: int, triples: Iterable[Sequence]) -> "WeightedDigraph":
        """Build from ``(source, target, weight[, signature])`` rows; ids follow input order."""
        return cls(vertex_count, [Edge(i, *t) for i, t in enumerate(triples)])

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge(self, eid: int) -> Edge:
        return self.edges[eid]

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_edges(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def weight_census(self) -> dict[int, int]:
        return dict(sorted(Counter(e.weight for e in self.edges).items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"WeightedDigraph(|V|={self.vertex_count}, |E|={self.edge_count})"


@dataclass(frozen=True)
class DirectedPath:
    edges: tuple[int, ...]

    def __init__(self, edges: Iterable[int]):
        object.__setattr__(self, "edges", tuple(edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


@dataclass(frozen=True)
class PathCollection:
    paths: tuple[DirectedPath, ...]

    def __init__(self, paths: Iterable[DirectedPath | Iterable[int]] = ()):
        object.__setattr__(
            self, "paths", tuple(p if isinstance(p, DirectedPath) else DirectedPath(p) for p in paths)
        )

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def edge_ids(self) -> list[int]:
        return [e for p in self.paths for e in p.edges]

    def canonical(self) -> "PathCollection":
        """Same paths, sorted, for order-independent comparison."""
        return PathCollection(sorted(self.paths, key=lambda p: p.edges))


@dataclass(frozen=True)
class PathPartition:
    """A collection certified by :func:`validate_partition` to cover every edge once."""

    collection: PathCollection

    @property
    def paths(self) -> tuple[DirectedPath, ...]:
        return self.collection.paths

    def __len__(self) -> int:
        return len(self.collection)

    def __iter__(self):
        return iter(self.collection)


def validate_path(graph: WeightedDigraph, path: DirectedPath, path_index: int | None = None) -> None:
    """Raise :class:`InvalidPathError` unless ``path`` is a nonempty simple path of ``graph``.

    Positions in the error are 1-based.
    """
    if not path.edges:
        raise InvalidPathError(0, "empty path", path_index)
    seen: set[int] = set()
    prev = None
    for pos, eid in enumerate(path.edges, start=1):
        if not isinstance(eid, int) or not 0 <= eid < graph.edge_count:
            raise InvalidPathError(pos, f"unknown edge id {eid!r}", path_index)
        e = graph.edges[eid]
        if prev is None:
            seen.add(e.source)
        elif prev.target != e.source:
            raise InvalidPathError(pos, f"edge {eid} does not start where edge {prev.id} ends", path_index)
        if e.target in seen:
            raise InvalidPathError(pos, f"vertex {e.target} repeats", path_index)
        seen.add(e.target)
        prev = e


def validate_collection(graph: WeightedDigraph, c: PathCollection) -> None:
    used: set[int] = set()
    for i, p in enumerate(c.paths):
        validate_path(graph, p, i)
        for eid in p.edges:
            if eid in used:
                raise DisjointnessError(eid)
            used.add(eid)


def validate_partition(graph: WeightedDigraph, p: PathCollection) -> PathPartition:
    validate_collection(graph, p)
    missing = set(range(graph.edge_count)) - set(p.edge_ids())
    if missing:
        raise MissingEdgesError(missing)
    return PathPartition(p)


def _path_factor_counts(graph: WeightedDigraph, path: DirectedPath, acc: Counter) -> None:
    for pos, eid in enumerate(path.edges, start=1):
        w = graph.edges[eid].weight
        for p, e in factorize(pos + 1):
            acc[p] += e * w


def score_of_path(graph: WeightedDigraph, path: DirectedPath) -> ExactScore:
    """``2**score = prod_i (i+1)**w(e_i)`` as a factored :class:`ExactScore`."""
    validate_path(graph, path)
    acc: Counter = Counter()
    _path_factor_counts(graph, path, acc)
    return ExactScore._trusted(acc.items())


def score_of_collection(graph: WeightedDigraph, c: PathCollection | PathPartition) -> ExactScore:
    if isinstance(c, PathPartition):
        c = c.collection
    validate_collection(graph, c)
    acc: Counter = Counter()
    for path in c.paths:
        _path_factor_counts(graph, path, acc)
    return ExactScore._trusted(acc.items())


def path_value(graph: WeightedDigraph, edges: Sequence[int]) -> int:
    """Materialized ``2**score`` of an edge sequence, without validation."""
    value = 1
    for pos, eid in enumerate(edges, start=2):
        value *= pos ** graph.edges[eid].weight
    return value


def path_vertices(graph: WeightedDigraph, path: DirectedPath | Sequence[int]) -> list[int]:
    edges = path.edges if isinstance(path, DirectedPath) else tuple(path)
    if not edges:
        return []
    return [graph.edges[edges[0]].source] + [graph.edges[e].target for e in edges]


@dataclass(frozen=True)
class SignatureComponent:
    """Edges of one signature, re-indexed densely, with maps back to the parent graph."""

    signature: int
    graph: WeightedDigraph
    edge_ids: tuple[int, ...]  # new edge id -> original edge id
    vertex_ids: tuple[int, ...]  # new vertex id -> original vertex id


def split_by_signature(graph: WeightedDigraph) -> list[SignatureComponent]:
    groups: dict[int, list[Edge]] = {}
    for e in graph.edges:
        if e.signature is None:
            raise SignatureError(f"edge {e.id} has no signature")
        groups.setdefault(e.signature, []).append(e)
    out = []
    for sig in sorted(groups):
        edges = groups[sig]
        vertices = sorted({v for e in edges for v in (e.source, e.target)})
        remap = {v: i for i, v in enumerate(vertices)}
        sub = WeightedDigraph(
            len(vertices),
            [Edge(i, remap[e.source], remap[e.target], e.weight, e.signature) for i, e in enumerate(edges)],
        )
        out.append(SignatureComponent(sig, sub, tuple(e.id for e in edges), tuple(vertices)))
    return out


@dataclass(frozen=True)
class TopoSort:
    """Either a topological vertex order or a directed cycle given as edge ids."""

    order: tuple[int, ...] | None
    cycle: tuple[int, ...] | None

    @property
    def acyclic(self) -> bool:
        return self.order is not None


def topological_order(graph: WeightedDigraph) -> TopoSort:
    """Kahn's algorithm, smallest ready vertex first; a cycle certificate otherwise."""
    indeg = [len(graph.in_edges(v)) for v in range(graph.vertex_count)]
    ready = [v for v in range(graph.vertex_count) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for eid in graph.out_edges(v):
            t = graph.edges[eid].target
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(ready, t)
    if len(order) == graph.vertex_count:
        return TopoSort(tuple(order), None)

    # every leftover vertex keeps an in-edge from another leftover vertex, so
    # walking in-edges backwards must revisit a vertex
    left = {v for v in range(graph.vertex_count) if indeg[v] > 0}
    v = min(left)
    via: dict[int, int] = {}
    while v not in via:
        eid = next(e for e in graph.in_edges(v) if graph.edges[e].source in left)
        via[v] = eid
        v = graph.edges[eid].source
    cycle = []
    u = v
    while True:
        eid = via[u]
        cycle.append(eid)
        u = graph.edges[eid].source
        if u == v:
            break
    cycle.reverse()
    return TopoSort(None, tuple(cycle))


def require_dag(graph: WeightedDigraph) -> tuple[int, ...]:
    ts = topological_order(graph)
    if not ts.acyclic:
        raise CycleError(ts.cycle)
    return ts.order
