from __future__ import annotations

from math import factorial

import pytest

from dag_corpus import dag_corpus
from ipaths.errors import CycleError, ValidationError
from ipaths.graph import WeightedDigraph, score_of_collection, validate_collection, validate_partition
from ipaths.oracles import brute_force_ip, brute_force_kip, brute_force_max_ip
from ipaths.score import ExactScore, compare, Ordering
from ipaths.solvers import (
    Answer,
    SolverBudget,
    decide_ip,
    decide_kip,
    enumerate_k_paths,
    exact_ip,
    exact_kip,
    greedy_kip,
    max_ip_dag,
)

CORPUS = dag_corpus(seed=11, count=60)


@pytest.fixture
def chain4():
    return WeightedDigraph.from_triples(5, [(i, i + 1, 1) for i in range(4)])


def test_max_ip_prefers_heavy_late_edges():
    g = WeightedDigraph.from_triples(4, [(0, 1, 1), (1, 2, 1), (2, 3, 5), (1, 3, 5)])
    res = max_ip_dag(g)
    assert res.best_path.edges == (0, 1, 2)
    assert res.score.materialize() == 2 * 3 * 4**5


def test_max_ip_errors():
    with pytest.raises(CycleError):
        max_ip_dag(WeightedDigraph.from_triples(2, [(0, 1, 1), (1, 0, 1)]))
    with pytest.raises(ValidationError):
        max_ip_dag(WeightedDigraph(3, []))


def test_enumerate_k_paths(chain4):
    assert [p.edges for p in enumerate_k_paths(chain4, 2)] == [(0, 1), (1, 2), (2, 3)]
    assert enumerate_k_paths(chain4, 5) == []


def test_exact_ip_on_chain_is_single_path(chain4):
    res = exact_ip(chain4)
    assert res.optimal
    assert [p.edges for p in res.collection.paths] == [(0, 1, 2, 3)]
    assert res.score == ExactScore.from_int(factorial(5))


def test_exact_ip_rejects_cycles():
    with pytest.raises(CycleError):
        exact_ip(WeightedDigraph.from_triples(2, [(0, 1, 1), (1, 0, 1)]))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_unit_weight_kip_scores_are_factorial_powers(k):
    g = WeightedDigraph.from_triples(7, [(i, i + 1, 1) for i in range(6)])
    res = exact_kip(g, k)
    assert res.score == ExactScore.from_int(factorial(k + 1)) ** (6 // k)


@pytest.mark.parametrize("g", CORPUS[:30])
def test_solvers_match_oracles(g):
    assert max_ip_dag(g).score == brute_force_max_ip(g).score
    ip = exact_ip(g)
    validate_partition(g, ip.collection)
    assert ip.score == brute_force_ip(g).score
    kip = exact_kip(g, 3)
    validate_collection(g, kip.collection)
    assert all(len(p) == 3 for p in kip.collection.paths)
    assert kip.score == brute_force_kip(g, 3).score


@pytest.mark.parametrize("g", CORPUS)
def test_pruning_is_sound(g):
    assert exact_ip(g).score == exact_ip(g, prune=False).score
    assert exact_kip(g, 2).score == exact_kip(g, 2, prune=False).score


@pytest.mark.parametrize("g", CORPUS)
def test_greedy_bound(g):
    for k in (2, 3):
        greedy = greedy_kip(g, k)
        best = exact_kip(g, k)
        assert compare(greedy.score, best.score) is not Ordering.GREATER
        assert compare(greedy.score**k, best.score) is not Ordering.LESS


def test_results_are_deterministic():
    for g in CORPUS[:15]:
        assert exact_ip(g) == exact_ip(g)
        assert exact_kip(g, 3) == exact_kip(g, 3)
        assert greedy_kip(g, 2) == greedy_kip(g, 2)


def test_budget_exhaustion_returns_best_so_far():
    g = max(CORPUS, key=lambda h: h.edge_count)
    res = exact_ip(g, SolverBudget(max_nodes=0))
    assert not res.optimal
    validate_partition(g, res.collection)
    assert res.score == score_of_collection(g, res.collection)
    res = exact_kip(g, 2, SolverBudget(max_nodes=0))
    assert not res.optimal


def test_decisions(chain4):
    best = exact_ip(chain4).score
    assert decide_ip(chain4, best).answer is Answer.YES
    assert decide_ip(chain4, best * ExactScore.from_int(2)).answer is Answer.NO
    assert decide_ip(chain4, ExactScore.one(), SolverBudget(max_nodes=0)).answer is Answer.YES
    assert decide_ip(chain4, best, SolverBudget(max_nodes=0)).answer is Answer.UNKNOWN
    v = decide_kip(chain4, 2, ExactScore.from_int(36))
    assert v.yes and score_of_collection(chain4, v.witness) == ExactScore.from_int(36)
    assert decide_kip(chain4, 2, ExactScore.from_int(37)).answer is Answer.NO
