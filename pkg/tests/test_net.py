import pytest

from structcyc.net import (
    EMPTY,
    Concat,
    DimensionMismatch,
    ExpansionBudgetExceeded,
    Leaf,
    NotFireable,
    PetriNet,
    Power,
    Transition,
    concat,
    displacement,
    displacement_of_parikh,
    expand,
    fire,
    fire_power_word,
    fire_word,
    flat_length,
    parikh,
    power,
    reverse_net,
    reverse_word,
    support,
    word_of_parikh,
    word_trace,
)


@pytest.mark.parametrize("c, expected", [
    ((0, 0), set()),
    ((2, 0, 1), {0, 2}),
    ((5, 5), {0, 1}),
])
def test_support(c, expected):
    assert support(c) == expected


def test_fire():
    assert fire((1, 0), Transition((1, 0), (0, 1))) == (0, 1)
    assert fire((3, 2), Transition((0, 0), (1, 0))) == (4, 2)
    with pytest.raises(NotFireable) as e:
        fire((0, 0), Transition((1, 0), (0, 1)))
    assert e.value.index == 0


def test_fire_reports_lowest_violating_index():
    with pytest.raises(NotFireable) as e:
        fire((1, 0, 0), Transition((1, 2, 3), (0, 0, 0)))
    assert e.value.index == 1


def test_fire_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fire((1,), Transition((1, 0), (0, 1)))


@pytest.mark.parametrize("pre, post, delta", [
    ((1, 0), (0, 1), (-1, 1)),
    ((0, 0), (0, 0), (0, 0)),
    ((2, 1), (0, 3), (-2, 2)),
])
def test_displacement(pre, post, delta):
    assert displacement(Transition(pre, post)) == delta


def test_displacement_of_parikh(canceling):
    assert displacement_of_parikh(canceling, {}) == (0, 0)
    assert displacement_of_parikh(canceling, {0: 1, 1: 1}) == (0, 0)
    assert displacement_of_parikh(PetriNet(2, [((0, 0), (1, 0))]), {0: 3}) == (3, 0)


def test_fire_word(canceling):
    assert fire_word((0, 0), canceling, [0, 1]) == (0, 0)
    with pytest.raises(NotFireable) as e:
        fire_word((0, 0), canceling, [1, 0])
    assert (e.value.position, e.value.transition) == (0, 1)
    assert fire_word((1, 1), canceling, []) == (1, 1)


def test_word_trace(canceling):
    assert word_trace((0, 0), canceling, [0, 0, 1]) == [(0, 0), (1, 0), (2, 0), (1, 0)]
    with pytest.raises(NotFireable) as e:
        word_trace((0, 0), canceling, [0, 1, 1])
    assert e.value.position == 2


def test_fire_power_word(canceling):
    pw = Power(Concat((Leaf(0), Leaf(1))), 5)
    assert fire_power_word((0, 0), canceling, pw) == fire_word((0, 0), canceling, expand(pw))
    assert fire_power_word((0, 0), canceling, pw) == (0, 0)
    producer = PetriNet(2, [((0, 0), (1, 0))])
    assert fire_power_word((0, 0), producer, Power(Leaf(0), 3)) == (3, 0)
    consumer = PetriNet(2, [((1, 0), (0, 0))])
    with pytest.raises(NotFireable):
        fire_power_word((0, 0), consumer, Power(Leaf(0), 2))


def test_power_word_failure_location(canceling):
    # t1^2 (t2^3): the third t2 fails at flat position 4
    pw = Concat((Power(Leaf(0), 2), Power(Leaf(1), 3)))
    with pytest.raises(NotFireable) as e:
        fire_power_word((0, 0), canceling, pw)
    assert (e.value.position, e.value.transition, e.value.index) == (4, 1, 0)
    assert e.value.path == (1, 2)
    with pytest.raises(NotFireable) as flat:
        fire_word((0, 0), canceling, expand(pw))
    assert flat.value.key() == e.value.key()


def test_power_word_huge_exponent_replays_without_expansion(canceling):
    pw = Power(Concat((Leaf(0), Leaf(1))), 10**30)
    assert fire_power_word((0, 0), canceling, pw) == (0, 0)
    assert flat_length(pw) == 2 * 10**30
    with pytest.raises(ExpansionBudgetExceeded):
        expand(pw)


def test_deeply_nested_power_word(canceling):
    pw = Leaf(0)
    for _ in range(3000):
        pw = Concat((Power(pw, 2), Leaf(0)))
    end = fire_power_word((0, 0), canceling, pw)
    assert end == (2**3001 - 1, 0)
    assert parikh(pw) == {0: 2**3001 - 1}


def test_parikh():
    assert parikh([]) == {}
    assert parikh([0, 1, 0]) == {0: 2, 1: 1}
    assert parikh(Power(Concat((Leaf(0), Leaf(1))), 4)) == {0: 4, 1: 4}
    assert parikh(EMPTY) == {}


def test_reverse_net():
    net = PetriNet(2, [((1, 0), (0, 1))])
    assert reverse_net(net) == PetriNet(2, [((0, 1), (1, 0))])
    ident = PetriNet(2, [((0, 0), (0, 0))])
    assert reverse_net(ident) == ident


def test_reverse_net_is_involution_and_keeps_labels():
    net = PetriNet(2, [Transition((1, 0), (0, 1), "a"), Transition((0, 0), (2, 0), "b")])
    assert reverse_net(reverse_net(net)) == net
    assert [t.label for t in reverse_net(net)] == ["a", "b"]


def test_net_deduplicates_with_warning():
    with pytest.warns(UserWarning, match="duplicate"):
        net = PetriNet(1, [((1,), (0,)), ((0,), (1,)), ((1,), (0,))])
    assert len(net) == 2


def test_net_rejects_duplicate_labels_and_bad_dimensions():
    with pytest.raises(ValueError):
        PetriNet(1, [Transition((1,), (0,), "x"), Transition((0,), (1,), "x")])
    with pytest.raises(DimensionMismatch):
        PetriNet(2, [((1,), (0,))])
    with pytest.raises(DimensionMismatch):
        Transition((1, 0), (0,))
    with pytest.raises(ValueError):
        Transition((-1,), (0,))


def test_smart_constructors():
    assert concat() == EMPTY
    assert concat(EMPTY, Leaf(2)) == Leaf(2)
    assert concat(Concat((Leaf(0), Leaf(1))), Leaf(2)) == Concat((Leaf(0), Leaf(1), Leaf(2)))
    assert power(Leaf(0), 1) == Leaf(0)
    assert power(EMPTY, 7) == EMPTY
    assert power(Power(Leaf(0), 3), 4) == Power(Leaf(0), 12)
    assert word_of_parikh({2: 1, 0: 3}) == Concat((Power(Leaf(0), 3), Leaf(2)))
    with pytest.raises(ValueError):
        Power(Leaf(0), 0)


def test_reverse_word():
    pw = Concat((Leaf(0), Power(Concat((Leaf(1), Leaf(2))), 2)))
    assert expand(reverse_word(pw)) == list(reversed(expand(pw)))


def test_leaf_index_validated(canceling):
    with pytest.raises(IndexError):
        fire_power_word((0, 0), canceling, Leaf(5))
