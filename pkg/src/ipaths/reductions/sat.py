"""3-SAT to path-partition (IP) reduction and its witness translators.

Variables are 1-based (DIMACS literals: ``+i`` / ``-i``); clauses and
literal slots are 0-based.  An occurrence of variable ``i`` is a literal slot
``(j, p)`` of clause ``j``, tagged ``"j.p"`` in vertex labels, so a padded
clause such as ``(x or x or x)`` gives three occurrences.  Occurrences of
``i`` are ordered ``o_0 < ... < o_{l-1}``; the gadget joins ``ybar[i, o_a]``
to ``u[i, o_{a+1}]`` cyclically, and every ``s_i -> v`` edge is subdivided
twice so that all ``s_i -> t_i`` paths have six edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import (
    InternalConsistencyError,
    MalformedWitnessError,
    TriviallySatisfiableError,
    UnsatisfyingAssignmentError,
    ValidationError,
)
from ..graph import (
    DirectedPath,
    Edge,
    PathCollection,
    PathPartition,
    WeightedDigraph,
    score_of_collection,
    validate_partition,
)
from ..score import ExactScore

ROLES = (
    "subdivision",
    "v-to-y",
    "v-to-ybar",
    "type-U-pos",
    "type-U-neg",
    "type-T",
    "clause-spine",
    "clause-connector",
)


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if not self.clauses:
            raise ValidationError("formula needs at least one clause")
        for j, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise ValidationError(f"clause {j} does not have exactly 3 literal slots")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise ValidationError(f"clause {j}: literal {lit} out of range")
                if -lit in clause:
                    raise ValidationError(f"clause {j} contains both polarities of x{abs(lit)}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def n(self) -> int:
        return self.variable_count

    def occurrences(self, var: int) -> tuple[tuple[int, int], ...]:
        """Literal slots ``(clause, slot)`` holding ``var``, ascending."""
        return tuple((j, p) for j, c in enumerate(self.clauses) for p, l in enumerate(c) if abs(l) == var)

    def evaluate(self, assignment: "Assignment") -> int | None:
        """Index of the first falsified clause, or None if satisfied."""
        for j, clause in enumerate(self.clauses):
            if not any(assignment[abs(l)] == (l > 0) for l in clause):
                return j
        return None


@dataclass(frozen=True)
class Assignment:
    values: tuple[bool, ...]  # values[i - 1] is the truth value of x_i

    def __getitem__(self, var: int) -> bool:
        return self.values[var - 1]

    def __len__(self) -> int:
        return len(self.values)


def normalize_cnf(raw_clauses: Iterable[Sequence[int]], variable_count: int | None = None) -> CnfFormula:
    """Pad clauses to three slots and drop tautologies.

    Short clauses repeat their first literal.  Raises
    :class:`TriviallySatisfiableError` when every clause is a tautology.
    """
    raw = [tuple(c) for c in raw_clauses]
    if not raw:
        raise ValidationError("formula has no clauses")
    top = 0
    kept = []
    for j, clause in enumerate(raw):
        if not clause:
            raise ValidationError(f"clause {j} is empty")
        if len(clause) > 3:
            raise ValidationError(f"clause {j} has {len(clause)} literals; at most 3 allowed")
        if any(l == 0 for l in clause):
            raise ValidationError(f"clause {j} contains literal 0")
        top = max(top, max(abs(l) for l in clause))
        if any(-l in clause for l in clause):
            continue
        kept.append(tuple(clause) + (clause[0],) * (3 - len(clause)))
    if variable_count is None:
        variable_count = top
    elif top > variable_count:
        raise ValidationError(f"literal x{top} exceeds declared variable count {variable_count}")
    if not kept:
        raise TriviallySatisfiableError("every clause is a tautology; the formula is trivially satisfiable")
    return CnfFormula(variable_count, tuple(kept))


@dataclass(frozen=True, eq=False)
class IpInstance:
    formula: CnfFormula
    graph: WeightedDigraph
    target: ExactScore
    edge_roles: tuple[str, ...]
    vertex_labels: tuple[str, ...]
    _vertex_index: dict = field(init=False, repr=False, compare=False)
    _edge_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_vertex_index", {lab: v for v, lab in enumerate(self.vertex_labels)})
        index: dict[tuple[int, int], list[int]] = {}
        for e in self.graph.edges:
            index.setdefault((e.source, e.target), []).append(e.id)
        object.__setattr__(self, "_edge_index", index)

    def vertex(self, label: str) -> int:
        return self._vertex_index[label]

    def edges_between(self, a: str, b: str) -> list[int]:
        return list(self._edge_index.get((self.vertex(a), self.vertex(b)), ()))

    def edge(self, a: str, b: str) -> int:
        (eid,) = self.edges_between(a, b)
        return eid

    def connectors(self, clause: int) -> list[int]:
        """Connector edges of a clause, in literal-slot order."""
        return list(self.graph.out_edges(self.vertex(f"z_{clause}_2")))

    def variable_paths(self, var: int, side: str) -> list[tuple[int, ...]]:
        """The ``l_i`` edge-disjoint ``s_i -> t_i`` paths through the ``y`` or ``ybar`` vertices."""
        occ = [_tag(o) for o in self.formula.occurrences(var)]
        paths = []
        for a, c in enumerate(occ):
            nxt = occ[(a + 1) % len(occ)]
            head = [
                self.edge(f"s_{var}", f"t_{var}_{c}_1"),
                self.edge(f"t_{var}_{c}_1", f"t_{var}_{c}_2"),
                self.edge(f"t_{var}_{c}_2", f"v_{var}_{c}"),
            ]
            if side == "y":
                tail = [
                    self.edge(f"v_{var}_{c}", f"y_{var}_{c}"),
                    self.edge(f"y_{var}_{c}", f"u_{var}_{c}"),
                    self.edge(f"u_{var}_{c}", f"t_{var}"),
                ]
            elif side == "ybar":
                tail = [
                    self.edge(f"v_{var}_{c}", f"ybar_{var}_{c}"),
                    self.edge(f"ybar_{var}_{c}", f"u_{var}_{nxt}"),
                    self.edge(f"u_{var}_{nxt}", f"t_{var}"),
                ]
            else:
                raise ValueError(f"unknown side {side!r}")
            paths.append(tuple(head + tail))
        return paths


def _tag(occurrence: tuple[int, int]) -> str:
    return f"{occurrence[0]}.{occurrence[1]}"


def ip_target(m: int) -> ExactScore:
    """``(2^5 * 3^2 * 5! * (6!)^3)^m * 7^(87 m^2)``."""
    per_clause = ExactScore.from_int(2**5 * 3**2 * 120 * 720**3)
    return per_clause**m * ExactScore.power(7, 87 * m * m)


def path_score_w(m: int) -> ExactScore:
    """``2**W`` for the maximal gadget path: ``6! * 7**(29m)``."""
    return ExactScore.from_int(720) * ExactScore.power(7, 29 * m)


def sat3_to_ip(f: CnfFormula) -> IpInstance:
    if not isinstance(f, CnfFormula):
        raise ValidationError("sat3_to_ip expects a normalized CnfFormula")
    m = f.m
    labels: list[str] = []
    vid: dict[str, int] = {}

    def vertex(label: str) -> int:
        vid[label] = len(labels)
        labels.append(label)
        return vid[label]

    edges: list[Edge] = []
    roles: list[str] = []

    def edge(a: str, b: str, role: str, weight: int = 1) -> None:
        edges.append(Edge(len(edges), vid[a], vid[b], weight))
        roles.append(role)

    occ = {i: [_tag(o) for o in f.occurrences(i)] for i in range(1, f.n + 1)}
    for i in range(1, f.n + 1):
        vertex(f"s_{i}")
        for c in occ[i]:
            for name in (f"t_{i}_{c}_1", f"t_{i}_{c}_2", f"v_{i}_{c}", f"y_{i}_{c}", f"ybar_{i}_{c}", f"u_{i}_{c}"):
                vertex(name)
        vertex(f"t_{i}")
    for j in range(m):
        for r in range(3):
            vertex(f"z_{j}_{r}")

    for i in range(1, f.n + 1):
        cs = occ[i]
        for a, c in enumerate(cs):
            nxt = cs[(a + 1) % len(cs)]
            edge(f"s_{i}", f"t_{i}_{c}_1", "subdivision")
            edge(f"t_{i}_{c}_1", f"t_{i}_{c}_2", "subdivision")
            edge(f"t_{i}_{c}_2", f"v_{i}_{c}", "subdivision")
            edge(f"v_{i}_{c}", f"y_{i}_{c}", "v-to-y")
            edge(f"v_{i}_{c}", f"ybar_{i}_{c}", "v-to-ybar")
            edge(f"y_{i}_{c}", f"u_{i}_{c}", "type-U-pos")
            edge(f"ybar_{i}_{c}", f"u_{i}_{nxt}", "type-U-neg")
            edge(f"u_{i}_{c}", f"t_{i}", "type-T", 29 * m)
    for j, clause in enumerate(f.clauses):
        edge(f"z_{j}_0", f"z_{j}_1", "clause-spine")
        edge(f"z_{j}_1", f"z_{j}_2", "clause-spine")
        for p, lit in enumerate(clause):
            side = "y" if lit > 0 else "ybar"
            edge(f"z_{j}_2", f"{side}_{abs(lit)}_{j}.{p}", "clause-connector")

    graph = WeightedDigraph(len(labels), edges)
    return IpInstance(f, graph, ip_target(m), tuple(roles), tuple(labels))


def _true_slot(f: CnfFormula, a: Assignment, j: int) -> int:
    for slot, lit in enumerate(f.clauses[j]):
        if a[abs(lit)] == (lit > 0):
            return slot
    raise UnsatisfyingAssignmentError(j)


def assignment_to_partition(f: CnfFormula, inst: IpInstance, a: Assignment) -> PathPartition:
    """Build the witness partition of score exactly ``log t`` from a satisfying assignment.

    Each clause is routed through its lowest-indexed true literal slot.
    """
    if len(a) != f.n:
        raise ValidationError(f"assignment has {len(a)} values for {f.n} variables")
    bad = f.evaluate(a)
    if bad is not None:
        raise UnsatisfyingAssignmentError(bad)

    paths: list[tuple[int, ...]] = []
    used: set[int] = set()
    for i in range(1, f.n + 1):
        if not f.occurrences(i):
            continue
        # TRUE routes the heavy paths through the ybar side, freeing the y side
        for p in inst.variable_paths(i, "ybar" if a[i] else "y"):
            paths.append(p)
            used.update(p)

    for j, clause in enumerate(f.clauses):
        slot = _true_slot(f, a, j)
        lit = clause[slot]
        i = abs(lit)
        c = _tag((j, slot))
        conns = inst.connectors(j)
        spine = [inst.edge(f"z_{j}_0", f"z_{j}_1"), inst.edge(f"z_{j}_1", f"z_{j}_2")]
        if lit > 0:
            tail = [conns[slot], inst.edge(f"y_{i}_{c}", f"u_{i}_{c}")]
            single = inst.edge(f"v_{i}_{c}", f"y_{i}_{c}")
        else:
            occ = f.occurrences(i)
            nxt = _tag(occ[(occ.index((j, slot)) + 1) % len(occ)])
            tail = [conns[slot], inst.edge(f"ybar_{i}_{c}", f"u_{i}_{nxt}")]
            single = inst.edge(f"v_{i}_{c}", f"ybar_{i}_{c}")
        four = tuple(spine + tail)
        paths.append(four)
        paths.append((single,))
        used.update(four)
        used.add(single)
        for other, eid in enumerate(conns):
            if other != slot:
                paths.append((eid,))
                used.add(eid)

    # what is left is one v -> y|ybar -> u two-path per untouched occurrence
    for eid in range(inst.graph.edge_count):
        if eid in used or inst.edge_roles[eid] not in ("v-to-y", "v-to-ybar"):
            continue
        v = inst.graph.edges[eid].target
        (nxt_edge,) = inst.graph.out_edges(v)
        if nxt_edge in used:
            raise InternalConsistencyError(f"edge {nxt_edge} used twice while building the witness")
        paths.append((eid, nxt_edge))
        used.update((eid, nxt_edge))

    return validate_partition(inst.graph, PathCollection(DirectedPath(p) for p in paths))


def partition_to_assignment(f: CnfFormula, inst: IpInstance, p: PathCollection | PathPartition) -> Assignment:
    """Read a satisfying assignment off a partition scoring at least ``log t``."""
    collection = p.collection if isinstance(p, PathPartition) else p
    validate_partition(inst.graph, collection)
    if score_of_collection(inst.graph, collection) < inst.target:
        raise MalformedWitnessError("partition scores below the target")

    labels = inst.vertex_labels
    g = inst.graph
    heavy: dict[int, set[str]] = {}
    heavy_count: dict[int, int] = {}
    clause_ok: set[int] = set()
    for path in collection.paths:
        first = labels[g.edges[path.edges[0]].source]
        last = labels[g.edges[path.edges[-1]].target]
        if len(path) == 6 and first.startswith("s_") and last == "t_" + first[2:]:
            var = int(first[2:])
            mid = labels[g.edges[path.edges[3]].target]
            heavy.setdefault(var, set()).add(mid.split("_", 1)[0])
            heavy_count[var] = heavy_count.get(var, 0) + 1
        elif len(path) == 4 and first.startswith("z_") and first.endswith("_0"):
            if inst.edge_roles[path.edges[-1]] in ("type-U-pos", "type-U-neg"):
                clause_ok.add(int(first.split("_")[1]))

    values = []
    for i in range(1, f.n + 1):
        ell = len(f.occurrences(i))
        if ell == 0:
            values.append(False)
            continue
        if heavy_count.get(i, 0) < ell:
            raise MalformedWitnessError(
                f"variable x{i}: {heavy_count.get(i, 0)} of the {ell} required score-W paths s_{i} -> t_{i}"
            )
        sides = heavy[i]
        if len(sides) != 1:
            raise MalformedWitnessError(f"variable x{i}: score-W paths use both the y and ybar sides")
        values.append(sides == {"ybar"})
    for j in range(f.m):
        if j not in clause_ok:
            raise MalformedWitnessError(f"clause {j}: no 4-path from z_{j}_0 ending in a type-U edge")

    a = Assignment(tuple(values))
    bad = f.evaluate(a)
    if bad is not None:
        raise InternalConsistencyError(f"extracted assignment falsifies clause {bad}")
    return a
