import pytest

from structcyc import (
    ConstructionFailure,
    PetriNet,
    compute_lambda,
    is_structurally_cyclic,
    mu,
    synthesize_witness,
    verify_witness,
)
from structcyc.net import Concat, Leaf, Power, parikh


def test_canceling_pair(canceling):
    report = compute_lambda(canceling)
    assert report.structurally_cyclic
    assert report.lambda_set == {0, 1}
    assert report.rounds == [frozenset({0, 1})]
    assert report.witness == Concat((Leaf(0), Leaf(1)))
    assert verify_witness(canceling, report.witness).valid


def test_two_round_net(two_round):
    report = compute_lambda(two_round)
    assert report.rounds == [frozenset({0, 1, 2}), frozenset({2}), frozenset()]
    assert report.lambda_set == frozenset()
    assert not report.structurally_cyclic
    assert report.witness is None
    assert [r.result for r in report.round_details] == [frozenset({2}), frozenset()]


def test_zero_transition_is_a_cycle():
    net = PetriNet(2, [((0, 0), (0, 0))])
    report = compute_lambda(net)
    assert report.lambda_set == {0}
    assert report.witness == Leaf(0)


def test_needs_two_tokens():
    net = PetriNet(2, [((0, 0), (1, 1)), ((1, 1), (0, 0))])
    assert is_structurally_cyclic(net)


def test_swap_pair_is_not_cyclic():
    net = PetriNet(2, [((1, 0), (0, 1)), ((0, 1), (1, 0))])
    assert compute_lambda(net).lambda_set == frozenset()


def test_empty_net():
    report = compute_lambda(PetriNet(3))
    assert not report.structurally_cyclic
    assert report.rounds == [frozenset()]


def test_witness_uses_exactly_lambda():
    # producer 2 tokens, consumer 3 tokens, plus a dead transition
    net = PetriNet(2, [((0, 0), (2, 0)), ((3, 0), (0, 0)), ((0, 1), (1, 0))])
    report = compute_lambda(net)
    assert report.lambda_set == {0, 1}
    verdict = verify_witness(net, report.witness)
    assert verdict.valid and verdict.transitions_used == {0, 1}
    counts = parikh(report.witness)
    assert set(counts) == {0, 1}
    assert 2 * counts[0] == 3 * counts[1]


def test_mu(two_round):
    assert mu(two_round) == {2}
    assert mu(two_round, {2}) == frozenset()
    assert mu(two_round, []) == frozenset()


def test_synthesize_witness_rejects_non_fixpoints(canceling, two_round):
    with pytest.raises(ValueError):
        synthesize_witness(canceling, [])
    with pytest.raises(ValueError):
        synthesize_witness(two_round, [0, 1, 2])
    pw = synthesize_witness(canceling, [0, 1])
    assert verify_witness(canceling, pw).valid


def test_verify_witness_rejects():
    net = PetriNet(1, [((0,), (1,)), ((1,), (0,))])
    assert not verify_witness(net, Leaf(0)).valid
    bad = verify_witness(net, Leaf(1))
    assert not bad.valid and bad.error is not None
    assert not verify_witness(net, Concat(())).valid
    good = verify_witness(net, Power(Concat((Leaf(0), Leaf(1))), 10**40))
    assert good.valid and good.expanded_length == 2 * 10**40


def test_construction_failure_is_runtime_error():
    assert issubclass(ConstructionFailure, RuntimeError)


def test_rounds_strictly_decrease(two_round):
    rounds = compute_lambda(two_round).rounds
    assert all(b < a for a, b in zip(rounds, rounds[1:]))
