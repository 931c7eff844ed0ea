from __future__ import annotations

import pytest

from ipaths.errors import OracleLimitError, ValidationError
from ipaths.graph import WeightedDigraph
from ipaths.oracles import (
    OracleLimit,
    brute_force_ip,
    brute_force_kip,
    brute_force_max_ip,
    brute_force_sat,
    brute_force_set_cover,
    brute_force_vertex_cover,
)
from ipaths.reductions import CubicGraph, SetCoverInstance, normalize_cnf

K4 = CubicGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def test_sat_oracle():
    assert brute_force_sat(normalize_cnf([[1], [-1]])) is None
    a = brute_force_sat(normalize_cnf([[1, 2], [-1, 2], [-2, 3]]))
    assert a.values == (False, True, True)
    with pytest.raises(OracleLimitError):
        brute_force_sat(normalize_cnf([[1, 2, 3]], 5), OracleLimit(4))


def test_vertex_and_set_cover_oracles():
    assert brute_force_vertex_cover(K4, 2) is None
    assert brute_force_vertex_cover(K4, 3) == frozenset({0, 1, 2})
    sc = SetCoverInstance(3, ((0, 1, 2), (0, 1, 2)), 1)
    assert brute_force_set_cover(sc) == frozenset({0})
    with pytest.raises(OracleLimitError):
        brute_force_vertex_cover(K4, 3, OracleLimit(3))


def test_max_ip_oracle_tie_break():
    # two parallel edges of equal weight: lexicographically first wins
    g = WeightedDigraph.from_triples(2, [(0, 1, 2), (0, 1, 2)])
    assert brute_force_max_ip(g).best_path.edges == (0,)
    with pytest.raises(ValidationError):
        brute_force_max_ip(WeightedDigraph(2, []))


def test_max_ip_oracle_handles_cycles():
    g = WeightedDigraph.from_triples(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    assert len(brute_force_max_ip(g).best_path) == 2


def test_kip_oracle():
    g = WeightedDigraph.from_triples(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    res = brute_force_kip(g, 2)
    assert res.score.materialize() == 6
    assert brute_force_kip(g, 4).score.materialize() == 1


def test_ip_oracle_diamond():
    g = WeightedDigraph.from_triples(4, [(0, 1, 1), (1, 3, 3), (0, 2, 1), (2, 3, 1)])
    res = brute_force_ip(g)
    assert res.score.materialize() == 2 * 3**3 * 2 * 3


def test_ip_oracle_limits():
    g = WeightedDigraph.from_triples(2, [(0, 1, 1)] * 15)
    with pytest.raises(OracleLimitError):
        brute_force_ip(g)
    with pytest.raises(ValidationError):
        brute_force_ip(WeightedDigraph.from_triples(2, [(0, 1, 1), (1, 0, 1)]))
