import pytest

from structcyc import PetriNet
from structcyc.oracle import (
    BUDGET_EXHAUSTED,
    REACHED,
    UNREACHABLE,
    UNREACHABLE_WITHIN_BOUND,
    SearchBudget,
    bounded_reach,
    brute_cyclic,
    brute_forward_markable,
    brute_zero_cycle_transitions,
)


def test_reach_shortest_path():
    net = PetriNet(2, [((1, 0), (0, 1)), ((0, 1), (0, 0))])
    res = bounded_reach(net, (1, 0), (0, 0))
    assert res.status == REACHED and res.path == [0, 1]


def test_unreachable_is_a_proof_without_pruning():
    net = PetriNet(2, [((1, 0), (0, 1))])
    res = bounded_reach(net, (1, 0), (1, 1))
    assert res.status == UNREACHABLE and res.conclusive and not res.found


def test_pruned_search_is_inconclusive():
    net = PetriNet(1, [((0,), (1,))])
    res = bounded_reach(net, (0,), (100,), SearchBudget(coordinate_bound=5))
    assert res.status == UNREACHABLE_WITHIN_BOUND and not res.conclusive


def test_state_budget():
    net = PetriNet(2, [((0, 0), (1, 0)), ((0, 0), (0, 1))])
    res = bounded_reach(net, (0, 0), (9, 9), SearchBudget(coordinate_bound=50, max_states=10))
    assert res.status == BUDGET_EXHAUSTED


def test_depth_budget():
    net = PetriNet(1, [((0,), (1,))])
    res = bounded_reach(net, (0,), (5,), SearchBudget(coordinate_bound=10, max_depth=3))
    assert res.status == BUDGET_EXHAUSTED


def test_empty_path_only_when_allowed(canceling):
    assert bounded_reach(canceling, (0, 0), (0, 0)).path == []
    res = brute_cyclic(canceling, (0, 0))
    assert res.found and res.path == [0, 1]
    assert not brute_cyclic(PetriNet(2, [((1, 0), (0, 1))]), (1, 0)).found


def test_bad_dimension():
    with pytest.raises(ValueError):
        bounded_reach(PetriNet(2), (0,), (0, 0))
    with pytest.raises(ValueError):
        SearchBudget(0)


def test_brute_sets(canceling, two_round):
    assert brute_forward_markable(two_round) == {0, 1}
    assert brute_zero_cycle_transitions(canceling) == {0, 1}
    assert brute_zero_cycle_transitions(two_round) == frozenset()
