"""Exact LP feasibility and the ultimately cyclic transitions U(T).

Everything here is exact.  The simplex stores each tableau row as a sparse
dict of Python ints scaled by an arbitrary positive factor (a row of
``[A | b]`` describes the same constraint after positive scaling), so no
division happens while pivoting; basic values are read off as
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .net import DimensionMismatch, PetriNet, displacement_of_parikh


class NegativeInput(ValueError):
    pass


@dataclass(frozen=True)
class CyclicCertificate:
    """``psi`` has zero displacement, is >= 1 on ``u_set`` and 0 elsewhere."""

    u_set: frozenset[int]
    psi: dict[int, int] = field(hash=False)


def _normalize(row: dict[int, int]) -> None:
    g = math.gcd(*row.values())
    if g > 1:
        for k in row:
            row[k] //= g


def _combine(p: int, row: dict[int, int], q: int, prow: dict[int, int]) -> dict[int, int]:
    """``p*row - q*prow`` with zero entries dropped, reduced by its gcd."""
    out = {k: p * v for k, v in row.items()}
    for k, v in prow.items():
        nv = out.get(k, 0) - q * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    _normalize(out)
    return out


def _pivot(tab: list[dict[int, int]], pr: int, enter: int,
           obj: Optional[dict[int, int]] = None) -> Optional[dict[int, int]]:
    """Eliminate ``enter`` from every row but ``pr`` (whose entry must be positive)."""
    prow = tab[pr]
    p = prow[enter]
    for i, r in enumerate(tab):
        q = r.get(enter, 0)
        if i != pr and q:
            tab[i] = _combine(p, r, q, prow)
    if obj is not None and obj.get(enter, 0):
        obj = _combine(p, obj, obj[enter], prow)
    return obj


def _ratio_row(tab: list[dict[int, int]], basis: list[int], enter: int, rhs: int) -> Optional[int]:
    best: Optional[tuple[Fraction, int, int]] = None
    for i, r in enumerate(tab):
        a = r.get(enter, 0)
        if a > 0:
            cand = (Fraction(r.get(rhs, 0), a), basis[i], i)
            if best is None or cand < best:
                best = cand
    return None if best is None else best[2]


def _bland(tab: list[dict[int, int]], basis: list[int], obj: dict[int, int], rhs: int) -> dict[int, int]:
    """Pivot until no column of ``obj`` is negative; entering and leaving follow Bland's rule."""
    while True:
        enter = min((j for j, v in obj.items() if v < 0 and j != rhs), default=None)
        if enter is None:
            return obj
        pr = _ratio_row(tab, basis, enter, rhs)
        if pr is None:
            raise _Unbounded
        obj = _pivot(tab, pr, enter, obj)
        basis[pr] = enter


class _Unbounded(Exception):
    pass


def _phase_one(rows: list[dict[int, int]], ncols: int) -> Optional[tuple[list[dict[int, int]], list[int]]]:
    """Basic feasible tableau for sparse rows of ``[A | b]`` with ``b >= 0``.

    Column ``ncols`` of each row holds the right-hand side.  Returns the
    rows and their basic columns, with every artificial driven out and
    redundant rows dropped, or ``None`` when ``A x = b, x >= 0`` is
    infeasible.
    """
    rhs = ncols
    tab = [dict(r) for r in rows]
    # A column with a positive entry in one row and nowhere else can start
    # basic there.  Other rows get artificial k = ncols + row, basic in its
    # row and never stored as a column, so once it leaves the basis it is
    # gone for good (sound for phase one).
    seen: dict[int, int] = {}
    for r in tab:
        for j in r:
            seen[j] = seen.get(j, 0) + 1
    basis = []
    used: set[int] = set()
    for i, r in enumerate(tab):
        slack = min((j for j, v in r.items() if j != rhs and v > 0 and seen[j] == 1
                     and j not in used), default=None)
        basis.append(ncols + i if slack is None else slack)
        if slack is not None:
            used.add(slack)
    obj: dict[int, int] = {}
    for i, r in enumerate(tab):
        if basis[i] >= ncols:
            for k, v in r.items():
                obj[k] = obj.get(k, 0) - v
    obj = {k: v for k, v in obj.items() if v}
    try:
        obj = _bland(tab, basis, obj, rhs)
    except _Unbounded:
        raise AssertionError("unbounded phase one") from None
    if obj.get(rhs, 0) != 0:
        return None
    # artificials still basic sit at level zero; swap in any structural column
    keep = []
    for i in range(len(tab)):
        if basis[i] >= ncols:
            enter = min((j for j in tab[i] if j != rhs), default=None)
            if enter is None:
                continue
            if tab[i][enter] < 0:
                tab[i] = {k: -v for k, v in tab[i].items()}
            _pivot(tab, i, enter)
            basis[i] = enter
        keep.append(i)
    return [tab[i] for i in keep], [basis[i] for i in keep]


def _solution(tab: list[dict[int, int]], basis: list[int], ncols: int) -> list[Fraction]:
    x = [Fraction(0)] * ncols
    for r, b in zip(tab, basis):
        x[b] = Fraction(r.get(ncols, 0), r[b])
    return x


def _maximize(rows: list[dict[int, int]], ncols: int,
              cost: dict[int, int]) -> Optional[list[Fraction]]:
    """An optimal vertex for ``max cost.x`` over ``A x = b, x >= 0``; None if infeasible."""
    found = _phase_one(rows, ncols)
    if found is None:
        return None
    tab, basis = found
    obj = {j: -c for j, c in cost.items() if c}
    for i, b in enumerate(basis):
        if obj.get(b, 0):
            obj = _combine(tab[i][b], obj, obj[b], tab[i])
    try:
        _bland(tab, basis, obj, ncols)
    except _Unbounded:
        raise ValueError("objective is unbounded") from None
    return _solution(tab, basis, ncols)


def lp_feasible(matrix: Sequence[Sequence[int]],
                lower_bounds: Sequence) -> Optional[list[Fraction]]:
    """Find ``x >= max(lower_bounds, 0)`` with ``matrix @ x == 0``, or return None.

    ``matrix`` has one row per equation and one column per variable; the
    bounds are ints or Fractions.
    """
    n = len(lower_bounds)
    if any(len(row) != n for row in matrix):
        raise DimensionMismatch(f"matrix rows must have {n} columns")
    low = [max(Fraction(v), Fraction(0)) for v in lower_bounds]
    # substitute x = low + x' and clear denominators: den * x' = y
    den = math.lcm(*(v.denominator for v in low)) if low else 1
    low_scaled = [int(v * den) for v in low]
    rows: list[dict[int, int]] = []
    for row in matrix:
        coeffs = {j: int(a) for j, a in enumerate(row) if a}
        rhs = -sum(a * low_scaled[j] for j, a in coeffs.items())
        if not coeffs:
            if rhs != 0:
                return None
            continue
        if rhs < 0:
            coeffs = {j: -a for j, a in coeffs.items()}
            rhs = -rhs
        if rhs:
            coeffs[n] = rhs
        _normalize(coeffs)
        rows.append(coeffs)
    found = _phase_one(rows, n)
    if found is None:
        return None
    shift = _solution(*found, n)
    return [v + s / den for v, s in zip(low, shift)]


def clear_denominators(x: Iterable) -> list[int]:
    """Multiply a non-negative rational vector by the lcm of its denominators."""
    vals = [Fraction(v) for v in x]
    if any(v < 0 for v in vals):
        raise NegativeInput(f"negative entry in {vals}")
    lcm = math.lcm(*(v.denominator for v in vals)) if vals else 1
    return [int(v * lcm) for v in vals]


def _max_support(columns: Sequence[Sequence[int]], targets: Iterable[int]) -> list[int]:
    """Integer ``psi >= 0`` with zero displacement whose support contains every
    target that lies on some T-invariant (and no other target).

    Maximises the sum of ``y_t`` subject to ``y_t <= psi_t`` and ``y_t <= 1``;
    the invariants form a cone, so the optimum has ``y_t = 1`` exactly on
    the targets in U.
    """
    n = len(columns)
    d = len(columns[0]) if columns else 0
    chosen = sorted(set(targets))
    p = len(chosen)
    # columns: psi 0..n-1, y n..n+p-1, s (psi - y) next, r (1 - y) last
    ncols = n + 3 * p
    rows: list[dict[int, int]] = []
    for i in range(d):
        row = {j: columns[j][i] for j in range(n) if columns[j][i]}
        if row:
            _normalize(row)
            rows.append(row)
    for k, t in enumerate(chosen):
        rows.append({t: -1, n + k: 1, n + p + k: 1})
        rows.append({n + k: 1, n + 2 * p + k: 1, ncols: 1})
    sol = _maximize(rows, ncols, {n + k: 1 for k in range(p)})
    assert sol is not None  # psi = 0, y = 0 is feasible
    return clear_denominators(sol[:n])


def sign_prune(deltas: Sequence[Sequence[int]]) -> set[int]:
    """Transitions that may lie on a T-invariant after an exact sign argument.

    If on some coordinate no remaining transition has a negative
    displacement, no transition with a positive one can be part of a
    zero-sum combination (and symmetrically); drop those and repeat.
    """
    alive = set(range(len(deltas)))
    d = len(deltas[0]) if deltas else 0
    changed = True
    while changed:
        changed = False
        for i in range(d):
            pos = {j for j in alive if deltas[j][i] > 0}
            neg = {j for j in alive if deltas[j][i] < 0}
            if pos and not neg:
                alive -= pos
                changed = True
            elif neg and not pos:
                alive -= neg
                changed = True
    return alive


def ultimately_cyclic(net: PetriNet, candidates: Optional[Iterable[int]] = None) -> CyclicCertificate:
    """Transitions lying in the support of a non-negative T-invariant.

    A single LP over the transitions that survive :func:`sign_prune`
    finds an invariant whose support contains every candidate in U(T).
    With ``candidates`` only those transitions are decided; ``u_set`` then
    holds every candidate in U(T) plus whatever else the solutions covered.
    """
    alive = sorted(sign_prune(net.deltas))
    position = {j: k for k, j in enumerate(alive)}
    todo = [t for t in (range(len(net)) if candidates is None else sorted(set(candidates)))
            if t in position]
    # coordinates on which every remaining transition is neutral constrain nothing
    live = [i for i in range(net.dimension) if any(net.deltas[j][i] for j in alive)]
    columns = [[net.deltas[j][i] for i in live] for j in alive]
    total = [0] * len(net)
    covered: set[int] = set()
    if todo:
        for k, c in enumerate(_max_support(columns, [position[t] for t in todo])):
            if c:
                total[alive[k]] = c
                covered.add(alive[k])
    g = math.gcd(*total) if total else 0
    psi = {j: k // g for j, k in enumerate(total) if k}
    assert not any(displacement_of_parikh(net, psi))
    return CyclicCertificate(frozenset(covered), psi)
