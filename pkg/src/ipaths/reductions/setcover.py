"""(3,2)-set-cover to k-IP reduction, witness translators, and the cubic
vertex-cover front end.

Elements, sets and cubic-graph vertices are 0-based.  For ``k > 3`` an
incoming chain of ``k - 3`` fresh edges ends at ``v[i,1]``, ``v[i,2]`` of every
element and at the first chain vertex ``u[j, x_p]`` of every set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Iterable

from ..errors import InternalConsistencyError, MalformedWitnessError, NotACoverError, ValidationError
from ..graph import DirectedPath, Edge, PathCollection, WeightedDigraph, validate_collection
from ..score import ExactScore


@dataclass(frozen=True)
class SetCoverInstance:
    element_count: int
    sets: tuple[tuple[int, int, int], ...]
    tau: int

    def __post_init__(self):
        sets = tuple(tuple(sorted(s)) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        seen = [0] * self.element_count
        for j, s in enumerate(sets):
            if len(s) != 3 or len(set(s)) != 3:
                raise ValidationError(f"set {j} must hold exactly 3 distinct elements, got {s}")
            for x in s:
                if not 0 <= x < self.element_count:
                    raise ValidationError(f"set {j}: element {x} out of range")
                seen[x] += 1
        for x, count in enumerate(seen):
            if count != 2:
                raise ValidationError(f"element {x} occurs in {count} sets; every element must occur in exactly 2")
        if not 1 <= self.tau <= len(sets):
            raise ValidationError(f"tau = {self.tau} outside 1..{len(sets)}")

    @property
    def n(self) -> int:
        return self.element_count

    @property
    def m(self) -> int:
        return len(self.sets)

    def sets_of(self, x: int) -> tuple[int, int]:
        a, b = (j for j, s in enumerate(self.sets) if x in s)
        return a, b

    def is_cover(self, cover: Iterable[int]) -> bool:
        return self.uncovered(cover) is None

    def uncovered(self, cover: Iterable[int]) -> int | None:
        covered = set()
        for j in cover:
            covered.update(self.sets[j])
        for x in range(self.n):
            if x not in covered:
                return x
        return None


@dataclass(frozen=True, eq=False)
class KipInstance:
    setcover: SetCoverInstance
    k: int
    graph: WeightedDigraph
    target: ExactScore
    edge_roles: tuple[str, ...]
    vertex_labels: tuple[str, ...]
    _edge_index: dict = field(init=False, repr=False, compare=False)
    _vertex_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_vertex_index", {lab: v for v, lab in enumerate(self.vertex_labels)})
        object.__setattr__(self, "_edge_index", {(e.source, e.target): e.id for e in self.graph.edges})

    def vertex(self, label: str) -> int:
        return self._vertex_index[label]

    def edge(self, a: str, b: str) -> int:
        return self._edge_index[(self._vertex_index[a], self._vertex_index[b])]

    def _prefix(self, anchor: str) -> list[int]:
        names = [f"p_{anchor}_{h}" for h in range(self.k - 3)] + [anchor]
        return [self.edge(a, b) for a, b in zip(names, names[1:])]

    def set_path(self, j: int) -> tuple[int, ...]:
        """Prefix plus the whole three-edge chain of set ``j``."""
        p, q, r = self.setcover.sets[j]
        chain = [f"u_{j}_{p}", f"u_{j}_{q}", f"u_{j}_{r}", f"u_{j}"]
        return tuple(self._prefix(chain[0]) + [self.edge(a, b) for a, b in zip(chain, chain[1:])])

    def _chain_next(self, j: int, x: int) -> str:
        s = self.setcover.sets[j]
        pos = s.index(x)
        return f"u_{j}_{s[pos + 1]}" if pos < 2 else f"u_{j}"

    def element_path(self, x: int, anchor: int, j: int) -> tuple[int, ...]:
        """The k-path of element ``x`` anchored at ``v[x,1]`` or ``v[x,2]`` entering set ``j``."""
        if anchor == 1:
            tail = [
                self.edge(f"v_{x}_1", f"v_{x}_3"),
                self.edge(f"v_{x}_3", f"v_{x}_4"),
                self.edge(f"v_{x}_4", f"u_{j}_{x}"),
            ]
        elif anchor == 2:
            tail = [
                self.edge(f"v_{x}_2", f"v_{x}_4"),
                self.edge(f"v_{x}_4", f"u_{j}_{x}"),
                self.edge(f"u_{j}_{x}", self._chain_next(j, x)),
            ]
        else:
            raise ValueError("anchor must be 1 or 2")
        return tuple(self._prefix(f"v_{x}_{anchor}") + tail)

    @property
    def required_paths(self) -> int:
        sc = self.setcover
        return 2 * sc.n + sc.m - sc.tau


def kip_target(sc: SetCoverInstance, k: int) -> ExactScore:
    return ExactScore.from_int(factorial(k + 1)) ** (2 * sc.n + sc.m - sc.tau)


def setcover_to_kip(sc: SetCoverInstance, k: int = 3) -> KipInstance:
    if k < 3:
        raise ValidationError("the k-IP reduction needs k >= 3")
    labels: list[str] = []
    vid: dict[str, int] = {}
    edges: list[Edge] = []
    roles: list[str] = []

    def vertex(label: str) -> None:
        vid[label] = len(labels)
        labels.append(label)

    def edge(a: str, b: str, role: str) -> None:
        edges.append(Edge(len(edges), vid[a], vid[b], 1))
        roles.append(role)

    for x in range(sc.n):
        for r in range(1, 5):
            vertex(f"v_{x}_{r}")
    for j, s in enumerate(sc.sets):
        for x in s:
            vertex(f"u_{j}_{x}")
        vertex(f"u_{j}")
    anchors = [f"v_{x}_{r}" for x in range(sc.n) for r in (1, 2)] + [f"u_{j}_{s[0]}" for j, s in enumerate(sc.sets)]
    if k > 3:
        for anchor in anchors:
            for h in range(k - 3):
                vertex(f"p_{anchor}_{h}")

    for x in range(sc.n):
        edge(f"v_{x}_1", f"v_{x}_3", "element")
        edge(f"v_{x}_3", f"v_{x}_4", "element")
        edge(f"v_{x}_2", f"v_{x}_4", "element")
    for j, (p, q, r) in enumerate(sc.sets):
        edge(f"u_{j}_{p}", f"u_{j}_{q}", "set-chain")
        edge(f"u_{j}_{q}", f"u_{j}_{r}", "set-chain")
        edge(f"u_{j}_{r}", f"u_{j}", "set-chain")
    for x in range(sc.n):
        for j in sc.sets_of(x):
            edge(f"v_{x}_4", f"u_{j}_{x}", "connector")
    if k > 3:
        for anchor in anchors:
            names = [f"p_{anchor}_{h}" for h in range(k - 3)] + [anchor]
            for a, b in zip(names, names[1:]):
                edge(a, b, "prefix")

    graph = WeightedDigraph(len(labels), edges)
    return KipInstance(sc, k, graph, kip_target(sc, k), tuple(roles), tuple(labels))


def _check_cover(sc: SetCoverInstance, cover: Iterable[int]) -> frozenset[int]:
    cover = frozenset(cover)
    for j in cover:
        if not 0 <= j < sc.m:
            raise ValidationError(f"set index {j} out of range")
    x = sc.uncovered(cover)
    if x is not None:
        raise NotACoverError(x)
    return cover


def cover_to_kpaths(sc: SetCoverInstance, inst: KipInstance, c: Iterable[int]) -> PathCollection:
    """``2n + m - |c|`` edge-disjoint k-paths built from a cover ``c``."""
    cover = _check_cover(sc, c)
    if len(cover) > sc.tau:
        raise ValidationError(f"cover has {len(cover)} sets, more than tau = {sc.tau}")
    paths = []
    for x in range(sc.n):
        a, b = sc.sets_of(x)
        alpha = a if a in cover else b  # lowest-indexed covering set
        beta = b if alpha == a else a
        paths.append(inst.element_path(x, 1, beta))
        paths.append(inst.element_path(x, 2, alpha))
    for j in range(sc.m):
        if j not in cover:
            paths.append(inst.set_path(j))
    out = PathCollection(DirectedPath(p) for p in paths)
    validate_collection(inst.graph, out)
    return out


def _canonical(sc: SetCoverInstance, inst: KipInstance, full_sets: set[int]) -> tuple[list, int]:
    """Canonical packing given the sets whose whole chain is one path."""
    paths = [inst.set_path(j) for j in sorted(full_sets)]
    anchored = 0
    for x in range(sc.n):
        a, b = sc.sets_of(x)
        free = [j for j in (a, b) if j not in full_sets]
        if free:
            alpha = free[0]
            beta = b if alpha == a else a
            paths.append(inst.element_path(x, 2, alpha))
            paths.append(inst.element_path(x, 1, beta))
            anchored += 2
        else:
            paths.append(inst.element_path(x, 1, a))
            anchored += 1
    return paths, anchored


def canonicalize_kpaths(sc: SetCoverInstance, inst: KipInstance, pc: PathCollection) -> PathCollection:
    """Rewrite a k-path packing into canonical shape without losing paths.

    Canonical: every element has one path anchored at ``v[x,1]`` and one at
    ``v[x,2]``; every other path is a whole set chain.  An element whose two
    sets are both consumed by chain paths trades one chain path for its
    ``v[x,2]`` path; each such move strictly raises the anchored count.
    """
    validate_collection(inst.graph, pc)
    for i, p in enumerate(pc.paths):
        if len(p) != inst.k:
            raise MalformedWitnessError(f"path {i} has {len(p)} edges, expected k = {inst.k}")
    whole = {frozenset(inst.set_path(j)): j for j in range(sc.m)}
    full_sets = {whole[frozenset(p.edges)] for p in pc.paths if frozenset(p.edges) in whole}

    paths, anchored = _canonical(sc, inst, full_sets)
    while anchored < 2 * sc.n:
        x = next(x for x in range(sc.n) if all(j in full_sets for j in sc.sets_of(x)))
        full_sets.discard(sc.sets_of(x)[0])
        paths, new_anchored = _canonical(sc, inst, full_sets)
        if new_anchored <= anchored:
            raise InternalConsistencyError("canonicalization move did not make progress")
        anchored = new_anchored
    if len(paths) < len(pc):
        raise MalformedWitnessError(
            f"canonical form has {len(paths)} paths, fewer than the {len(pc)} supplied"
        )
    out = PathCollection(DirectedPath(p) for p in paths)
    validate_collection(inst.graph, out)
    return out


def kpaths_to_cover(sc: SetCoverInstance, inst: KipInstance, pc: PathCollection) -> frozenset[int]:
    """A cover of size at most tau read off a packing of ``>= 2n + m - tau`` k-paths."""
    if len(pc) < inst.required_paths:
        raise MalformedWitnessError(
            f"collection has {len(pc)} paths; at least 2n + m - tau = {inst.required_paths} required"
        )
    canon = canonicalize_kpaths(sc, inst, pc)
    whole = {frozenset(inst.set_path(j)): j for j in range(sc.m)}
    taken = {whole[frozenset(p.edges)] for p in canon.paths if frozenset(p.edges) in whole}
    cover = frozenset(range(sc.m)) - taken
    if sc.uncovered(cover) is not None or len(cover) > sc.tau:
        raise MalformedWitnessError(f"read-off sets {sorted(cover)} are not a cover of size <= {sc.tau}")
    return cover


@dataclass(frozen=True)
class CubicGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            for w in (u, v):
                if not 0 <= w < self.vertex_count:
                    raise ValidationError(f"vertex {w} out of range")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise ValidationError("parallel edges are not allowed")
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        degree = [0] * self.vertex_count
        for u, v in norm:
            degree[u] += 1
            degree[v] += 1
        for w, d in enumerate(degree):
            if d != 3:
                raise ValidationError(f"vertex {w} has degree {d}, expected 3")


def cubic_vc_to_setcover(g: CubicGraph, tau: int) -> SetCoverInstance:
    """Elements are the edges of ``g`` (sorted), sets the vertex incidence triples."""
    if not 1 <= tau <= g.vertex_count:
        raise ValidationError(f"tau = {tau} outside 1..{g.vertex_count}")
    sets = [[] for _ in range(g.vertex_count)]
    for idx, (u, v) in enumerate(g.edges):
        sets[u].append(idx)
        sets[v].append(idx)
    return SetCoverInstance(len(g.edges), tuple(tuple(s) for s in sets), tau)


def vertex_cover_to_set_cover(cover: Iterable[int]) -> frozenset[int]:
    """Vertex ``v`` of the graph is set ``v`` of the reduced instance."""
    return frozenset(cover)
