"""Forward/backward markable indices and mutually fireable transitions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .net import (
    EMPTY,
    Leaf,
    PetriNet,
    PowerWord,
    concat,
    power,
    reverse_net,
    reverse_word,
    support,
)


@dataclass(frozen=True)
class MarkableResult:
    i_plus: frozenset[int]
    i_minus: frozenset[int]
    i_both: frozenset[int]
    forward_witness: PowerWord
    backward_witness: PowerWord
    mutually_fireable: frozenset[int]


def prop_step(net: PetriNet, indices: Iterable[int]) -> frozenset[int]:
    """Union of post-supports over transitions whose pre-support lies in ``indices``."""
    allowed = frozenset(indices)
    out: set[int] = set()
    for t in net:
        if support(t.pre) <= allowed:
            out |= support(t.post)
    return frozenset(out)


def forward_markable(net: PetriNet) -> tuple[frozenset[int], PowerWord]:
    """Least fixpoint of :func:`prop_step` together with a witness word.

    Kleene rounds start from the empty set.  Within a round the enabled
    transitions (pre-support inside the previous iterate) are scanned in
    index order and each one that brings a new index is appended: if ``w``
    reaches ``y`` then ``w^n t`` reaches ``n*y - u + v`` whose support is
    ``supp(y) | supp(v)`` as soon as ``n > max u``.
    """
    pre_supp = [support(t.pre) for t in net]
    post_supp = [support(t.post) for t in net]
    word: PowerWord = EMPTY
    reached = [0] * net.dimension
    current: frozenset[int] = frozenset()
    while True:
        previous = current
        for j, t in enumerate(net):
            if not pre_supp[j] <= previous or post_supp[j] <= current:
                continue
            n = 1 + max((t.pre[i] for i in pre_supp[j]), default=0)
            word = concat(power(word, n), Leaf(j))
            reached = [n * y - u + v for y, u, v in zip(reached, t.pre, t.post)]
            current = current | post_supp[j]
        if current == previous:
            break
    assert support(reached) == current
    return current, word


def backward_markable(net: PetriNet) -> tuple[frozenset[int], PowerWord]:
    """Backward markable indices and a word over ``net`` that empties them.

    The returned word ``w`` satisfies ``y --w--> 0`` for some ``y`` whose
    support is exactly the returned index set.
    """
    indices, word = forward_markable(reverse_net(net))
    return indices, reverse_word(word)


def mutually_fireable_set(net: PetriNet) -> MarkableResult:
    i_plus, fwd = forward_markable(net)
    i_minus, bwd = backward_markable(net)
    both = i_plus & i_minus
    mutual = frozenset(
        j for j, t in enumerate(net)
        if support(t.pre) | support(t.post) <= both
    )
    return MarkableResult(i_plus, i_minus, both, fwd, bwd, mutual)
