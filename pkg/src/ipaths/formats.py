"""Text formats: graphs/instances, DIMACS CNF, set cover, cubic graphs, witnesses.

Graph / instance file::

    ipgraph <vertex_count> <edge_count>
    e <edge_id> <source> <target> <weight> [<signature>]
    ...
    k <k>                      # k-IP instances only
    target <2^a * 3^b ...>     # decision instances only
    # label v <vertex_id> <label>
    # label e <edge_id> <role>

Lines starting with ``#`` are comments; ``# label`` comments carry the
human-readable gadget labels and are read back.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .graph import Edge, PathCollection, WeightedDigraph
from .reductions.setcover import CubicGraph, SetCoverInstance
from .score import ExactScore


@dataclass(frozen=True)
class InstanceFile:
    graph: WeightedDigraph
    k: int | None = None
    target: ExactScore | None = None
    vertex_labels: tuple[str, ...] | None = None
    edge_roles: tuple[str, ...] | None = None


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _lines(text: str, comment: str = "#"):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith(comment):
            yield lineno, line.split()


def write_instance(
    graph: WeightedDigraph,
    k: int | None = None,
    target: ExactScore | None = None,
    vertex_labels=None,
    edge_roles=None,
) -> str:
    out = [f"ipgraph {graph.vertex_count} {graph.edge_count}"]
    for e in graph.edges:
        row = f"e {e.id} {e.source} {e.target} {e.weight}"
        if e.signature is not None:
            row += f" {e.signature}"
        out.append(row)
    if k is not None:
        out.append(f"k {k}")
    if target is not None:
        out.append(f"target {target}")
    if vertex_labels is not None:
        out.extend(f"# label v {v} {lab}" for v, lab in enumerate(vertex_labels))
    if edge_roles is not None:
        out.extend(f"# label e {i} {role}" for i, role in enumerate(edge_roles))
    return "\n".join(out) + "\n"


def write_graph(graph: WeightedDigraph) -> str:
    return write_instance(graph)


def parse_instance(text: str) -> InstanceFile:
    header = None
    edges: dict[int, Edge] = {}
    k = target = None
    vlabels: dict[int, str] = {}
    eroles: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            tok = line[1:].split()
            if tok[:1] == ["label"]:
                if len(tok) != 4 or tok[1] not in ("v", "e"):
                    raise ParseError("label comment must be '# label v|e <id> <label>'", lineno)
                (idx,) = _ints(tok[2:3], lineno)
                (vlabels if tok[1] == "v" else eroles)[idx] = tok[3]
            continue
        tok = line.split()
        if header is None:
            if tok[0] != "ipgraph" or len(tok) != 3:
                raise ParseError("first line must be 'ipgraph <vertex_count> <edge_count>'", lineno)
            header = _ints(tok[1:], lineno)
            if min(header) < 0:
                raise ParseError("counts must be natural", lineno)
            continue
        if tok[0] == "e":
            if k is not None or target is not None:
                raise ParseError("edge line after trailer", lineno)
            if len(tok) not in (5, 6):
                raise ParseError("edge line must be 'e <id> <source> <target> <weight> [<signature>]'", lineno)
            vals = _ints(tok[1:], lineno)
            eid, src, dst, w = vals[:4]
            sig = vals[4] if len(vals) == 5 else None
            if eid in edges:
                raise ParseError(f"duplicate edge id {eid}", lineno)
            if not 0 <= eid < header[1]:
                raise ParseError(f"edge id {eid} outside 0..{header[1] - 1}", lineno)
            if w < 1:
                raise ParseError(f"edge {eid}: weight must be >= 1", lineno)
            for v in (src, dst):
                if not 0 <= v < header[0]:
                    raise ParseError(f"edge {eid}: vertex {v} outside 0..{header[0] - 1}", lineno)
            if sig is not None and sig < 0:
                raise ParseError(f"edge {eid}: signature must be natural", lineno)
            edges[eid] = Edge(eid, src, dst, w, sig)
        elif tok[0] == "k":
            if len(tok) != 2 or k is not None:
                raise ParseError("malformed or repeated 'k' line", lineno)
            (k,) = _ints(tok[1:], lineno)
            if k < 1:
                raise ParseError("k must be >= 1", lineno)
        elif tok[0] == "target":
            if target is not None:
                raise ParseError("repeated 'target' line", lineno)
            try:
                target = ExactScore.parse(line[len("target"):])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        else:
            raise ParseError(f"unexpected line {line!r}", lineno)
    if header is None:
        raise ParseError("missing 'ipgraph' header")
    if len(edges) != header[1]:
        raise ParseError(f"header declares {header[1]} edges, found {len(edges)}")
    graph = WeightedDigraph(header[0], edges.values())

    def gather(d: dict[int, str], size: int, what: str):
        if not d:
            return None
        if sorted(d) != list(range(size)):
            raise ParseError(f"{what} labels must cover ids 0..{size - 1}")
        return tuple(d[i] for i in range(size))

    return InstanceFile(
        graph, k, target, gather(vlabels, graph.vertex_count, "vertex"), gather(eroles, graph.edge_count, "edge")
    )


def parse_graph(text: str) -> WeightedDigraph:
    return parse_instance(text).graph


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    """``(variable_count, clauses)``; clauses with more than 3 literals are rejected."""
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    start_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        tok = line.split()
        if tok[0] == "p":
            if header is not None or len(tok) != 4 or tok[1] != "cnf":
                raise ParseError("header must be 'p cnf <variables> <clauses>'", lineno)
            header = _ints(tok[2:], lineno)
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", lineno)
        for lit in _ints(tok, lineno):
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                clauses.append(current)
                current = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds declared variable count {header[0]}", lineno)
            if not current:
                start_line = lineno
            current.append(lit)
            if len(current) > 3:
                raise ParseError("clause has more than 3 literals", start_line)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0", start_line)
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return header[0], clauses


def write_dimacs(variable_count: int, clauses) -> str:
    out = [f"p cnf {variable_count} {len(clauses)}"]
    out.extend(" ".join(map(str, c)) + " 0" for c in clauses)
    return "\n".join(out) + "\n"


def parse_setcover(text: str) -> SetCoverInstance:
    header = None
    sets: dict[int, tuple[int, ...]] = {}
    for lineno, tok in _lines(text):
        if header is None:
            if tok[:2] != ["p", "setcover"] or len(tok) != 5:
                raise ParseError("header must be 'p setcover <n> <m> <tau>'", lineno)
            header = _ints(tok[2:], lineno)
            continue
        if tok[0] != "s" or len(tok) != 5:
            raise ParseError("set line must be 's <index> <e1> <e2> <e3>'", lineno)
        idx, *elems = _ints(tok[1:], lineno)
        if idx in sets or not 0 <= idx < header[1]:
            raise ParseError(f"bad or repeated set index {idx}", lineno)
        sets[idx] = tuple(elems)
    if header is None:
        raise ParseError("missing 'p setcover' header")
    if len(sets) != header[1]:
        raise ParseError(f"header declares {header[1]} sets, found {len(sets)}")
    return SetCoverInstance(header[0], tuple(sets[j] for j in range(header[1])), header[2])


def write_setcover(sc: SetCoverInstance) -> str:
    out = [f"p setcover {sc.n} {sc.m} {sc.tau}"]
    out.extend(f"s {j} {a} {b} {c}" for j, (a, b, c) in enumerate(sc.sets))
    return "\n".join(out) + "\n"


def parse_cubic(text: str) -> CubicGraph:
    header = None
    edges = []
    for lineno, tok in _lines(text):
        if header is None:
            if tok[:2] != ["p", "cubic"] or len(tok) != 4:
                raise ParseError("header must be 'p cubic <vertices> <edges>'", lineno)
            header = _ints(tok[2:], lineno)
            continue
        if tok[0] != "e" or len(tok) != 3:
            raise ParseError("edge line must be 'e <u> <v>'", lineno)
        edges.append(tuple(_ints(tok[1:], lineno)))
    if header is None:
        raise ParseError("missing 'p cubic' header")
    if len(edges) != header[1]:
        raise ParseError(f"header declares {header[1]} edges, found {len(edges)}")
    return CubicGraph(header[0], tuple(edges))


def write_cubic(g: CubicGraph) -> str:
    out = [f"p cubic {g.vertex_count} {len(g.edges)}"]
    out.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def parse_witness(text: str) -> PathCollection:
    """One path per line as space-separated edge ids."""
    paths = [_ints(tok, lineno) for lineno, tok in _lines(text)]
    return PathCollection(paths)


def write_witness(c) -> str:
    return "".join(" ".join(map(str, p.edges)) + "\n" for p in c.paths)


__all__ = [
    "InstanceFile",
    "ParseError",
    "ValidationError",
    "parse_cubic",
    "parse_dimacs",
    "parse_graph",
    "parse_instance",
    "parse_setcover",
    "parse_witness",
    "write_cubic",
    "write_dimacs",
    "write_graph",
    "write_instance",
    "write_setcover",
    "write_witness",
]
