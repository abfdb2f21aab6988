"""Bounded breadth-first oracles over the marking graph.

These are for testing and desk-scale cross-checks only.  A search never
visits configurations with an entry above ``coordinate_bound`` and stops
after ``max_states`` distinct configurations, so a negative answer only
means "not found in the explored region"; see :class:`SearchResult`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .net import Configuration, PetriNet, support, zero

REACHED = "reached"
UNREACHABLE = "unreachable"                     # full closure, nothing pruned
UNREACHABLE_WITHIN_BOUND = "unreachable_within_bound"
BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SearchBudget:
    coordinate_bound: int = 6
    max_states: int = 100_000
    max_depth: Optional[int] = None

    def __post_init__(self):
        if self.coordinate_bound < 1 or self.max_states < 1:
            raise ValueError("search budget entries must be positive")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be positive")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a bounded search.

    ``status`` is one of ``reached``, ``unreachable`` (the whole reachable
    set was explored without pruning, so this is a proof),
    ``unreachable_within_bound`` (closure completed, but configurations
    above the coordinate bound were pruned) or ``budget_exhausted``.
    """

    status: str
    path: Optional[list[int]] = None
    states: int = 0

    @property
    def found(self) -> bool:
        return self.status == REACHED

    @property
    def conclusive(self) -> bool:
        return self.status in (REACHED, UNREACHABLE)


def _successors(net: PetriNet, c: Configuration):
    for j, t in enumerate(net):
        if all(a >= u for a, u in zip(c, t.pre)):
            yield j, tuple(a - u + v for a, u, v in zip(c, t.pre, t.post))


def _explore(net: PetriNet, start: Configuration, budget: SearchBudget,
             target: Optional[Configuration] = None, allow_empty: bool = False):
    """BFS from ``start``.  Returns ``(parents, status, hit)``.

    ``parents`` maps each visited configuration to ``(predecessor,
    transition)``.  When ``target`` is given the search stops at the first
    non-empty path to it (or the empty one if ``allow_empty``).
    """
    parents: dict[Configuration, Optional[tuple[Configuration, int]]] = {start: None}
    if target is not None and allow_empty and start == target:
        return parents, REACHED, None
    depth = {start: 0}
    queue = deque([start])
    pruned = False
    truncated = False
    while queue:
        c = queue.popleft()
        if budget.max_depth is not None and depth[c] >= budget.max_depth:
            truncated = True
            continue
        for j, nxt in _successors(net, c):
            if target is not None and nxt == target:
                return parents, REACHED, (c, j)
            if nxt in parents:
                continue
            if any(v > budget.coordinate_bound for v in nxt):
                pruned = True
                continue
            if len(parents) >= budget.max_states:
                return parents, BUDGET_EXHAUSTED, None
            parents[nxt] = (c, j)
            depth[nxt] = depth[c] + 1
            queue.append(nxt)
    if truncated:
        return parents, BUDGET_EXHAUSTED, None
    return parents, (UNREACHABLE_WITHIN_BOUND if pruned else UNREACHABLE), None


def _path_to(parents, c: Configuration) -> list[int]:
    path: list[int] = []
    step = parents[c]
    while step is not None:
        c, j = step
        path.append(j)
        step = parents[c]
    path.reverse()
    return path


def bounded_reach(net: PetriNet, source: Sequence[int], target: Sequence[int],
                  budget: SearchBudget = SearchBudget(), allow_empty: bool = True) -> SearchResult:
    """Shortest path from ``source`` to ``target`` within the budget.

    With ``allow_empty=False`` only non-empty paths count, so
    ``source == target`` asks for a cycle.
    """
    src, dst = tuple(source), tuple(target)
    if len(src) != net.dimension or len(dst) != net.dimension:
        raise ValueError("configuration dimension does not match the net")
    parents, status, hit = _explore(net, src, budget, dst, allow_empty)
    if status != REACHED:
        return SearchResult(status, None, len(parents))
    if hit is None:
        return SearchResult(REACHED, [], len(parents))
    c, j = hit
    return SearchResult(REACHED, _path_to(parents, c) + [j], len(parents))


def brute_cyclic(net: PetriNet, c: Sequence[int],
                 budget: SearchBudget = SearchBudget()) -> SearchResult:
    return bounded_reach(net, c, c, budget, allow_empty=False)


def brute_forward_markable(net: PetriNet, budget: SearchBudget = SearchBudget()) -> frozenset[int]:
    parents, _, _ = _explore(net, zero(net.dimension), budget)
    out: set[int] = set()
    for c in parents:
        out |= support(c)
    return frozenset(out)


def brute_zero_cycle_transitions(net: PetriNet,
                                 budget: SearchBudget = SearchBudget()) -> frozenset[int]:
    """Transitions on some non-empty ``0 -> ... -> 0`` path inside the explored graph.

    An edge ``c --t--> c'`` out of an explored ``c`` counts when ``c'`` leads
    back to 0 within the explored graph.
    """
    origin = zero(net.dimension)
    parents, _, _ = _explore(net, origin, budget)
    reverse: dict[Configuration, list[Configuration]] = {}
    edges: list[tuple[Configuration, int, Configuration]] = []
    for c in parents:
        for j, nxt in _successors(net, c):
            if nxt in parents:
                edges.append((c, j, nxt))
                reverse.setdefault(nxt, []).append(c)
    back = {origin}
    queue = deque([origin])
    while queue:
        c = queue.popleft()
        for p in reverse.get(c, ()):
            if p not in back:
                back.add(p)
                queue.append(p)
    return frozenset(j for c, j, nxt in edges if nxt in back)
