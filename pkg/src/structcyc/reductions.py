"""Net transformers for grammars, DAG automata and lossy nets."""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .net import Configuration, PetriNet, Transition, as_config, fire, unit, zero, NotFireable


class UnknownSymbol(ValueError):
    pass


class UnknownState(ValueError):
    pass


class NotLossy(ValueError):
    def __init__(self, missing: Sequence[int]):
        self.missing = list(missing)
        super().__init__("net is not lossy: missing the loss transition e_i -> 0 for index "
                         + ", ".join(str(i + 1) for i in self.missing))


@dataclass(frozen=True)
class Grammar:
    """Context-free grammar; the first nonterminal is the start symbol.

    Terminals get dimensions of their own in :func:`cfg_to_net` that no
    transition consumes.
    """

    nonterminals: tuple[str, ...]
    productions: tuple[tuple[str, tuple[str, ...]], ...]
    terminals: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "productions",
                           tuple((lhs, tuple(rhs)) for lhs, rhs in self.productions))
        if not self.nonterminals:
            raise ValueError("a grammar needs at least the start symbol")
        if len(set(self.nonterminals) | set(self.terminals)) != \
                len(self.nonterminals) + len(self.terminals):
            raise ValueError("symbols must be distinct")
        symbols = set(self.nonterminals) | set(self.terminals)
        for lhs, rhs in self.productions:
            if lhs not in self.nonterminals:
                raise UnknownSymbol(f"left-hand side {lhs!r} is not a nonterminal")
            for s in rhs:
                if s not in symbols:
                    raise UnknownSymbol(f"unknown symbol {s!r} in production of {lhs!r}")

    @property
    def start(self) -> str:
        return self.nonterminals[0]

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.nonterminals + self.terminals


def _count_vector(items, index: dict[str, int], dimension: int) -> Configuration:
    v = [0] * dimension
    for s in items:
        v[index[s]] += 1
    return tuple(v)


def cfg_to_net(g: Grammar) -> PetriNet:
    """Net that is structurally cyclic iff the grammar derives the empty word.

    Transition 0 creates one start symbol; transition ``k`` (k >= 1)
    rewrites according to the ``k``-th production.
    """
    index = {s: i for i, s in enumerate(g.symbols)}
    d = len(index)
    ts = [Transition(zero(d), unit(d, 0), "t0")]
    for k, (lhs, rhs) in enumerate(g.productions, start=1):
        ts.append(Transition(_count_vector([lhs], index, d), _count_vector(rhs, index, d), f"p{k}"))
    with warnings.catch_warnings():
        # permuted right-hand sides give the same transition; that is harmless
        warnings.simplefilter("ignore")
        return PetriNet(d, ts)


def nullable_epsilon(g: Grammar) -> bool:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in nullable and all(s in nullable for s in rhs):
                nullable.add(lhs)
                changed = True
    return g.start in nullable


@dataclass(frozen=True)
class Rule:
    heads: tuple[str, ...]
    label: str
    tails: tuple[str, ...]


@dataclass(frozen=True)
class DagAutomaton:
    states: tuple[str, ...]
    rules: tuple[Rule, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "rules", tuple(
            r if isinstance(r, Rule) else Rule(tuple(r[0]), r[1], tuple(r[2]))
            for r in self.rules))
        if len(set(self.states)) != len(self.states):
            raise ValueError("states must be distinct")
        known = set(self.states)
        for r in self.rules:
            for q in r.heads + r.tails:
                if q not in known:
                    raise UnknownState(f"state {q!r} in rule {r} is not declared")


def dag_automaton_to_net(a: DagAutomaton) -> PetriNet:
    """One dimension per state, one transition per rule (multisets as counts)."""
    index = {q: i for i, q in enumerate(a.states)}
    d = len(index)
    ts = [(_count_vector(r.heads, index, d), _count_vector(r.tails, index, d)) for r in a.rules]
    with warnings.catch_warnings():
        # rules differing only in their label collapse to one transition
        warnings.simplefilter("ignore")
        return PetriNet(d, ts)


@dataclass(frozen=True)
class LossyInstance:
    net: PetriNet
    source: Configuration
    target: Configuration

    def __post_init__(self):
        object.__setattr__(self, "source", as_config(self.source, self.net.dimension))
        object.__setattr__(self, "target", as_config(self.target, self.net.dimension))


@dataclass(frozen=True)
class RevReachInstance:
    x: Configuration
    net: PetriNet
    y: Configuration
    via: int        # a transition taking x to y in one step


def missing_loss_transitions(net: PetriNet) -> list[int]:
    pairs = {(t.pre, t.post) for t in net}
    d = net.dimension
    return [i for i in range(d) if (unit(d, i), zero(d)) not in pairs]


def make_lossy(net: PetriNet) -> PetriNet:
    """Append the missing unit-loss transitions, warning about each."""
    missing = missing_loss_transitions(net)
    if not missing:
        return net
    warnings.warn("inserted loss transitions for index " + ", ".join(str(i + 1) for i in missing),
                  stacklevel=2)
    d = net.dimension
    return PetriNet(d, list(net) + [(unit(d, i), zero(d)) for i in missing])


def _fresh_label(taken: set, base: str) -> str:
    label = base
    while label in taken:
        label += "'"
    return label


def lossy_to_cyclicity(inst: LossyInstance, auto_insert: bool = False) -> tuple[PetriNet, Configuration]:
    """Net ``S`` and configuration ``(x, 0)`` cyclic in ``S`` iff ``x ->* y`` in the lossy net.

    The extra last coordinate counts steps of the original net; ``s_down``
    removes one count while sitting at ``y`` and ``s_reset`` jumps from
    ``(y, 0)`` back to ``(x, 0)``.  Transitions of the original net keep
    their positions, followed by ``s_down`` and ``s_reset``.
    """
    net = inst.net
    if auto_insert:
        net = make_lossy(net)
    missing = missing_loss_transitions(net)
    if missing:
        raise NotLossy(missing)
    x, y = inst.source, inst.target
    ts = [Transition(t.pre + (0,), t.post + (1,), t.label) for t in net]
    taken = {t.label for t in net if t.label is not None}
    down = _fresh_label(taken, "s_down")
    reset = _fresh_label(taken | {down}, "s_reset")
    ts.append(Transition(y + (1,), y + (0,), down))
    ts.append(Transition(y + (0,), x + (0,), reset))
    return PetriNet(net.dimension + 1, ts), x + (0,)


def cyclicity_to_revreach(net: PetriNet, x: Sequence[int]) -> list[RevReachInstance]:
    """One reversible-reachability instance per distinct one-step successor of ``x``."""
    x = as_config(x, net.dimension)
    out: list[RevReachInstance] = []
    seen: set[Configuration] = set()
    for j, t in enumerate(net):
        try:
            y = fire(x, t)
        except NotFireable:
            continue
        if y not in seen:
            seen.add(y)
            out.append(RevReachInstance(x, net, y, j))
    return out
