import pytest

from structcyc import PetriNet, is_structurally_cyclic
from structcyc.oracle import SearchBudget, bounded_reach, brute_cyclic
from structcyc.reductions import (
    DagAutomaton,
    Grammar,
    LossyInstance,
    NotLossy,
    Rule,
    UnknownState,
    UnknownSymbol,
    cfg_to_net,
    cyclicity_to_revreach,
    dag_automaton_to_net,
    lossy_to_cyclicity,
    make_lossy,
    missing_loss_transitions,
    nullable_epsilon,
)


def test_cfg_net_shape():
    g = Grammar(("S", "A"), [("S", ("A", "a")), ("A", ())], ("a",))
    net = cfg_to_net(g)
    assert net.dimension == 3
    assert [t.label for t in net] == ["t0", "p1", "p2"]
    assert net[0].pre == (0, 0, 0) and net[0].post == (1, 0, 0)
    assert net[1].pre == (1, 0, 0) and net[1].post == (0, 1, 1)


@pytest.mark.parametrize("productions, nullable", [
    ([("S", ())], True),
    ([("S", ("A",)), ("A", ())], True),
    ([("S", ("A", "A")), ("A", ("S",))], False),
    ([("S", ("A", "a")), ("A", ())], False),
    ([("S", ("S",))], False),
    ([("S", ("A", "A")), ("A", ("A", "A")), ("A", ())], True),
])
def test_cfg_equivalence(productions, nullable):
    nts = tuple(dict.fromkeys([p[0] for p in productions] +
                              [s for p in productions for s in p[1] if s.isupper()]))
    terms = tuple(dict.fromkeys(s for p in productions for s in p[1] if s.islower()))
    g = Grammar(nts, productions, terms)
    assert nullable_epsilon(g) == nullable
    assert is_structurally_cyclic(cfg_to_net(g)) == nullable


def test_grammar_validation():
    with pytest.raises(UnknownSymbol):
        Grammar(("S",), [("S", ("B",))])
    with pytest.raises(UnknownSymbol):
        Grammar(("S",), [("B", ())])


def test_dag_automaton():
    a = DagAutomaton(("p", "q"), [Rule((), "init", ("p", "p")), Rule(("p", "p"), "fin", ())])
    net = dag_automaton_to_net(a)
    assert [(t.pre, t.post) for t in net] == [((0, 0), (2, 0)), ((2, 0), (0, 0))]
    assert is_structurally_cyclic(net)
    with pytest.raises(UnknownState):
        DagAutomaton(("p",), [Rule(("r",), "x", ())])


def _lossy(d, ts):
    with pytest.warns(UserWarning):
        return make_lossy(PetriNet(d, ts))


def test_missing_loss_transitions():
    net = PetriNet(2, [((1, 0), (0, 0))])
    assert missing_loss_transitions(net) == [1]
    with pytest.raises(NotLossy, match="index 2"):
        lossy_to_cyclicity(LossyInstance(net, (1, 0), (0, 0)))


def test_lossy_reduction_layout():
    net = _lossy(2, [((1, 0), (0, 2))])
    s, query = lossy_to_cyclicity(LossyInstance(net, (1, 0), (0, 1)))
    assert s.dimension == 3 and query == (1, 0, 0)
    assert [t.label for t in s][-2:] == ["s_down", "s_reset"]
    assert s[0].pre == (1, 0, 0) and s[0].post == (0, 2, 1)


@pytest.mark.parametrize("source, target, expected", [
    ((1, 0), (0, 1), True),
    ((1, 0), (0, 2), True),
    ((1, 0), (0, 3), False),
    ((0, 1), (1, 0), False),
])
def test_lossy_reduction_agrees(source, target, expected):
    net = _lossy(2, [((1, 0), (0, 2))])
    budget = SearchBudget(coordinate_bound=8)
    assert bounded_reach(net, source, target, budget).found == expected
    s, query = lossy_to_cyclicity(LossyInstance(net, source, target))
    assert brute_cyclic(s, query, budget).found == expected


def test_auto_insert():
    with pytest.warns(UserWarning, match="inserted"):
        s, _ = lossy_to_cyclicity(LossyInstance(PetriNet(1), (1,), (0,)), auto_insert=True)
    assert len(s) == 3


def test_revreach_instances():
    # both transitions lead from (2, 0) to (1, 1); one instance per successor
    net = PetriNet(2, [((1, 0), (0, 1)), ((2, 0), (1, 1)), ((0, 1), (0, 0))])
    inst = cyclicity_to_revreach(net, (2, 0))
    assert [(i.y, i.via) for i in inst] == [((1, 1), 0)]
    assert cyclicity_to_revreach(net, (0, 0)) == []
