"""Petri net data model, firing semantics and power-word replay.

Configurations are plain tuples of non-negative Python ints (arbitrary
precision).  Transitions and coordinates are indexed from 0 internally;
the text and JSON formats in :mod:`structcyc.io` render them from 1.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

Configuration = tuple[int, ...]
Displacement = tuple[int, ...]
ParikhVector = dict[int, int]

DEFAULT_EXPANSION_BUDGET = 10**6


class DimensionMismatch(ValueError):
    pass


class NotFireable(Exception):
    """A firing sequence got stuck.

    ``position`` is the 0-based step of the (expanded) word that failed,
    ``transition`` the transition attempted there and ``index`` the lowest
    coordinate whose token count was insufficient.  For power words
    ``path`` gives the route into the tree: a child number for each
    ``Concat`` and an iteration number for each ``Power``.
    """

    def __init__(self, position: int, transition: Optional[int], index: int,
                 path: tuple[int, ...] = ()):
        self.position = position
        self.transition = transition
        self.index = index
        self.path = path
        what = "transition" if transition is None else f"transition {transition}"
        super().__init__(
            f"{what} not fireable at position {position}: "
            f"insufficient tokens at index {index}"
        )

    def key(self) -> tuple[int, Optional[int], int]:
        return (self.position, self.transition, self.index)


class ExpansionBudgetExceeded(ValueError):
    pass


def as_config(values: Iterable[int], dimension: Optional[int] = None) -> Configuration:
    c = tuple(int(v) for v in values)
    if any(v < 0 for v in c):
        raise ValueError(f"configuration has a negative entry: {c}")
    if dimension is not None and len(c) != dimension:
        raise DimensionMismatch(f"expected dimension {dimension}, got {len(c)}")
    return c


def zero(dimension: int) -> Configuration:
    return (0,) * dimension


def unit(dimension: int, i: int) -> Configuration:
    return tuple(1 if j == i else 0 for j in range(dimension))


def support(c: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(c) if v > 0)


def leq(x: Sequence[int], y: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(x, y))


def add(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(x, y))


def scale(k: int, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(k * a for a in x)


@dataclass(frozen=True)
class Transition:
    pre: Configuration
    post: Configuration
    label: Optional[str] = None

    def __post_init__(self):
        pre = as_config(self.pre)
        post = as_config(self.post)
        if len(pre) != len(post):
            raise DimensionMismatch(
                f"pre has dimension {len(pre)} but post has {len(post)}")
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "post", post)

    @property
    def dimension(self) -> int:
        return len(self.pre)

    @property
    def delta(self) -> Displacement:
        return displacement(self)

    def reversed(self) -> Transition:
        return Transition(self.post, self.pre, self.label)


TransitionLike = Union[Transition, tuple]


def _as_transition(t: TransitionLike) -> Transition:
    if isinstance(t, Transition):
        return t
    return Transition(*t)


class PetriNet:
    """A finite, ordered set of transitions of a common dimension.

    Duplicate ``(pre, post)`` pairs are dropped with a warning, keeping the
    first occurrence; the position in :attr:`transitions` is the identity
    of a transition.
    """

    __slots__ = ("_dimension", "_transitions", "_deltas")

    def __init__(self, dimension: int, transitions: Iterable[TransitionLike] = ()):
        if dimension < 0:
            raise ValueError("dimension must be non-negative")
        kept: list[Transition] = []
        seen: set[tuple[Configuration, Configuration]] = set()
        labels: set[str] = set()
        for t in map(_as_transition, transitions):
            if t.dimension != dimension:
                raise DimensionMismatch(
                    f"transition {t} has dimension {t.dimension}, net has {dimension}")
            if (t.pre, t.post) in seen:
                warnings.warn(f"duplicate transition {t.pre} -> {t.post} dropped",
                              stacklevel=2)
                continue
            if t.label is not None:
                if t.label in labels:
                    raise ValueError(f"duplicate transition label {t.label!r}")
                labels.add(t.label)
            seen.add((t.pre, t.post))
            kept.append(t)
        self._dimension = dimension
        self._transitions = tuple(kept)
        self._deltas = tuple(displacement(t) for t in kept)

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def transitions(self) -> tuple[Transition, ...]:
        return self._transitions

    @property
    def deltas(self) -> tuple[Displacement, ...]:
        return self._deltas

    def __len__(self) -> int:
        return len(self._transitions)

    def __iter__(self) -> Iterator[Transition]:
        return iter(self._transitions)

    def __getitem__(self, i: int) -> Transition:
        return self._transitions[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PetriNet):
            return NotImplemented
        return (self._dimension == other._dimension
                and self._transitions == other._transitions)

    def __hash__(self) -> int:
        return hash((self._dimension, self._transitions))

    def __repr__(self) -> str:
        body = ", ".join(f"{t.pre}->{t.post}" for t in self._transitions)
        return f"PetriNet({self._dimension}, [{body}])"

    def label_of(self, i: int) -> str:
        """Label of transition ``i``, or its 1-based number as a string."""
        label = self._transitions[i].label
        return label if label is not None else str(i + 1)

    def restrict(self, indices: Iterable[int]) -> PetriNet:
        """Subnet on the given transition indices, in ascending order."""
        return PetriNet(self._dimension, [self._transitions[i] for i in sorted(indices)])


def displacement(t: Transition) -> Displacement:
    return tuple(b - a for a, b in zip(t.pre, t.post))


def displacement_of_parikh(net: PetriNet, psi: Mapping[int, int]) -> Displacement:
    total = [0] * net.dimension
    for j, k in psi.items():
        if not 0 <= j < len(net):
            raise IndexError(f"transition index {j} out of range")
        if k:
            for i, v in enumerate(net.deltas[j]):
                total[i] += k * v
    return tuple(total)


def _first_deficit(c: Sequence[int], need: Sequence[int]) -> Optional[int]:
    for i, (a, b) in enumerate(zip(c, need)):
        if a < b:
            return i
    return None


def fire(c: Sequence[int], t: Transition) -> Configuration:
    if len(c) != t.dimension:
        raise DimensionMismatch(f"configuration has dimension {len(c)}, "
                                f"transition has {t.dimension}")
    i = _first_deficit(c, t.pre)
    if i is not None:
        raise NotFireable(0, None, i)
    return tuple(a - u + v for a, u, v in zip(c, t.pre, t.post))


def fire_word(c: Sequence[int], net: PetriNet, word: Sequence[int]) -> Configuration:
    if len(c) != net.dimension:
        raise DimensionMismatch(f"configuration has dimension {len(c)}, net has {net.dimension}")
    cur = tuple(c)
    for pos, j in enumerate(word):
        t = net[j]
        i = _first_deficit(cur, t.pre)
        if i is not None:
            raise NotFireable(pos, j, i)
        cur = add(cur, net.deltas[j])
    return cur


def word_trace(c: Sequence[int], net: PetriNet, word: Sequence[int]) -> list[Configuration]:
    """All intermediate configurations ``c_0, ..., c_k`` of a firing sequence."""
    trace = [tuple(c)]
    for pos, j in enumerate(word):
        try:
            trace.append(fire(trace[-1], net[j]))
        except NotFireable as e:
            raise NotFireable(pos, j, e.index) from None
    return trace


def reverse_net(net: PetriNet) -> PetriNet:
    return PetriNet(net.dimension, [t.reversed() for t in net])


# -- power words -------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    index: int


@dataclass(frozen=True)
class Concat:
    parts: tuple


@dataclass(frozen=True)
class Power:
    body: object
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("power exponent must be at least 1")


PowerWord = Union[Leaf, Concat, Power]

EMPTY = Concat(())


def _children(node: PowerWord) -> tuple:
    if isinstance(node, Concat):
        return node.parts
    if isinstance(node, Power):
        return (node.body,)
    return ()


def postorder(pw: PowerWord) -> list[PowerWord]:
    """Distinct nodes of ``pw`` (by identity), children before parents.

    Iterative, so deeply nested witnesses do not hit the recursion limit.
    """
    order: list[PowerWord] = []
    done: set[int] = set()
    stack: list[tuple[PowerWord, bool]] = [(pw, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in done:
            continue
        if expanded:
            done.add(id(node))
            order.append(node)
            continue
        stack.append((node, True))
        for child in reversed(_children(node)):
            if id(child) not in done:
                stack.append((child, False))
    return order


def concat(*parts: PowerWord) -> PowerWord:
    """Concatenation that flattens nested ``Concat`` and drops empty parts."""
    flat: list[PowerWord] = []
    for p in parts:
        if isinstance(p, Concat):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def power(body: PowerWord, exponent: int) -> PowerWord:
    """``body`` repeated ``exponent`` times, with trivial cases simplified."""
    if exponent < 0:
        raise ValueError("negative exponent")
    if exponent == 0 or body == EMPTY:
        return EMPTY
    if exponent == 1:
        return body
    if isinstance(body, Power):
        return Power(body.body, body.exponent * exponent)
    return Power(body, exponent)


def word_of_parikh(psi: Mapping[int, int]) -> PowerWord:
    """Canonical word for a Parikh vector: ascending index, each repeated."""
    return concat(*(power(Leaf(j), k) for j, k in sorted(psi.items()) if k))


def flat_length(pw: PowerWord) -> int:
    lengths: dict[int, int] = {}
    for node in postorder(pw):
        if isinstance(node, Leaf):
            n = 1
        elif isinstance(node, Concat):
            n = sum(lengths[id(p)] for p in node.parts)
        else:
            n = node.exponent * lengths[id(node.body)]
        lengths[id(node)] = n
    return lengths[id(pw)]


def expand(pw: PowerWord, budget: Optional[int] = DEFAULT_EXPANSION_BUDGET) -> list[int]:
    if budget is not None:
        n = flat_length(pw)
        if n > budget:
            raise ExpansionBudgetExceeded(
                f"expanded length {n} exceeds the budget of {budget} steps")
    words: dict[int, list[int]] = {}
    for node in postorder(pw):
        if isinstance(node, Leaf):
            w = [node.index]
        elif isinstance(node, Concat):
            w = [j for p in node.parts for j in words[id(p)]]
        else:
            w = words[id(node.body)] * node.exponent
        words[id(node)] = w
    return words[id(pw)]


def reverse_word(pw: PowerWord) -> PowerWord:
    """Mirror image of a power word (read right to left)."""
    out: dict[int, PowerWord] = {}
    for node in postorder(pw):
        if isinstance(node, Leaf):
            r = node
        elif isinstance(node, Concat):
            r = Concat(tuple(out[id(p)] for p in reversed(node.parts)))
        else:
            r = Power(out[id(node.body)], node.exponent)
        out[id(node)] = r
    return out[id(pw)]


def remap_word(pw: PowerWord, mapping: Sequence[int]) -> PowerWord:
    """Rename every leaf ``j`` to ``mapping[j]``."""
    out: dict[int, PowerWord] = {}
    for node in postorder(pw):
        if isinstance(node, Leaf):
            r = Leaf(mapping[node.index])
        elif isinstance(node, Concat):
            r = Concat(tuple(out[id(p)] for p in node.parts))
        else:
            r = Power(out[id(node.body)], node.exponent)
        out[id(node)] = r
    return out[id(pw)]


def parikh(word: Union[PowerWord, Iterable[int]]) -> ParikhVector:
    if not isinstance(word, (Leaf, Concat, Power)):
        return dict(Counter(word))
    counts: dict[int, Counter] = {}
    for node in postorder(word):
        if isinstance(node, Leaf):
            c = Counter({node.index: 1})
        elif isinstance(node, Concat):
            c = Counter()
            for p in node.parts:
                c.update(counts[id(p)])
        else:
            c = Counter({j: node.exponent * k for j, k in counts[id(node.body)].items()})
        counts[id(node)] = c
    return {j: k for j, k in counts[id(word)].items() if k}


@dataclass
class _Summary:
    need: list[int]     # least configuration from which the word fires
    delta: list[int]
    length: int


def _summaries(net: PetriNet, pw: PowerWord) -> dict[int, _Summary]:
    d = net.dimension
    out: dict[int, _Summary] = {}
    for node in postorder(pw):
        if isinstance(node, Leaf):
            if not 0 <= node.index < len(net):
                raise IndexError(f"transition index {node.index} out of range")
            s = _Summary(list(net[node.index].pre), list(net.deltas[node.index]), 1)
        elif isinstance(node, Concat):
            need, delta, length = [0] * d, [0] * d, 0
            for p in node.parts:
                sp = out[id(p)]
                for i in range(d):
                    req = sp.need[i] - delta[i]
                    if req > need[i]:
                        need[i] = req
                    delta[i] += sp.delta[i]
                length += sp.length
            s = _Summary(need, delta, length)
        else:
            sb = out[id(node.body)]
            n = node.exponent
            # per coordinate the requirement of iteration k is need - k*delta,
            # largest at k = 0 or k = n - 1
            need = [r + (n - 1) * max(0, -dl) for r, dl in zip(sb.need, sb.delta)]
            s = _Summary(need, [n * dl for dl in sb.delta], n * sb.length)
        out[id(node)] = s
    return out


def power_word_requirement(net: PetriNet, pw: PowerWord) -> tuple[Configuration, Displacement]:
    """``(need, delta)``: ``pw`` fires from ``c`` iff ``c >= need``, ending at ``c + delta``."""
    s = _summaries(net, pw)[id(pw)]
    return tuple(s.need), tuple(s.delta)


def displacement_of_word(net: PetriNet, pw: PowerWord) -> Displacement:
    return tuple(_summaries(net, pw)[id(pw)].delta)


def fire_power_word(c: Sequence[int], net: PetriNet, pw: PowerWord) -> Configuration:
    """Replay a power word without expanding it.

    ``Power(w, n)`` fires from ``c`` iff ``w`` fires from both ``c`` and
    ``c + (n-1)*delta(w)``: each coordinate of the requirement is affine
    in the iteration number.
    """
    if len(c) != net.dimension:
        raise DimensionMismatch(f"configuration has dimension {len(c)}, net has {net.dimension}")
    summ = _summaries(net, pw)
    top = summ[id(pw)]
    if leq(top.need, c):
        return tuple(a + b for a, b in zip(c, top.delta))
    _locate_failure(list(c), pw, summ)
    raise AssertionError("unreachable: requirement violated but no failure located")


def _locate_failure(c: list[int], node: PowerWord, summ: dict[int, _Summary]) -> None:
    offset = 0
    path: list[int] = []
    while True:
        if isinstance(node, Leaf):
            i = _first_deficit(c, summ[id(node)].need)
            raise NotFireable(offset, node.index, i, tuple(path))
        if isinstance(node, Concat):
            for k, p in enumerate(node.parts):
                sp = summ[id(p)]
                if leq(sp.need, c):
                    for i, v in enumerate(sp.delta):
                        c[i] += v
                    offset += sp.length
                else:
                    path.append(k)
                    node = p
                    break
            else:
                raise AssertionError("concat fired completely")
            continue
        sb = summ[id(node.body)]
        first = node.exponent
        for a, r, dl in zip(c, sb.need, sb.delta):
            if a < r:
                first = 0
                break
            if dl < 0:
                first = min(first, (a - r) // -dl + 1)
        path.append(first)
        for i, v in enumerate(sb.delta):
            c[i] += first * v
        offset += first * sb.length
        node = node.body
