"""Computation of Λ(T) by iterating μ(T) = M(T) ∩ U(T), and cycle witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .lp import CyclicCertificate, ultimately_cyclic
from .markable import MarkableResult, mutually_fireable_set
from .net import (
    NotFireable,
    PetriNet,
    PowerWord,
    concat,
    fire_power_word,
    flat_length,
    parikh,
    power,
    power_word_requirement,
    remap_word,
    word_of_parikh,
    zero,
)


class ConstructionFailure(RuntimeError):
    """The synthesized witness failed its own replay check (a bug, not a verdict)."""


@dataclass(frozen=True)
class RoundInfo:
    """What one application of μ saw: the active set and the sets it derived."""

    active: frozenset[int]
    markable: MarkableResult
    u_set: frozenset[int]       # decided on M only, plus transitions covered on the way
    result: frozenset[int]


@dataclass
class AnalysisReport:
    markable: MarkableResult
    u_certificate: CyclicCertificate
    lambda_set: frozenset[int]
    rounds: list[frozenset[int]]
    structurally_cyclic: bool
    witness: Optional[PowerWord] = None
    round_details: list[RoundInfo] = field(default_factory=list)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    transitions_used: frozenset[int]
    expanded_length: int
    error: Optional[NotFireable] = None


def _remap_markable(mk: MarkableResult, idx: list[int]) -> MarkableResult:
    return MarkableResult(
        mk.i_plus, mk.i_minus, mk.i_both,
        remap_word(mk.forward_witness, idx),
        remap_word(mk.backward_witness, idx),
        frozenset(idx[j] for j in mk.mutually_fireable),
    )


def _remap_certificate(cert: CyclicCertificate, idx: list[int]) -> CyclicCertificate:
    return CyclicCertificate(frozenset(idx[j] for j in cert.u_set),
                             {idx[j]: k for j, k in cert.psi.items()})


def _mu_round(net: PetriNet, active: frozenset[int]) -> tuple[RoundInfo, CyclicCertificate]:
    idx = sorted(active)
    sub = net.restrict(idx)
    mk = mutually_fireable_set(sub)
    # U is only needed on M; the LP still ranges over the whole subnet
    cert = ultimately_cyclic(sub, candidates=mk.mutually_fireable)
    mk, cert = _remap_markable(mk, idx), _remap_certificate(cert, idx)
    return RoundInfo(active, mk, cert.u_set, cert.u_set & mk.mutually_fireable), cert


def mu(net: PetriNet, active: Optional[Iterable[int]] = None) -> frozenset[int]:
    """M(T') ∩ U(T') for the subnet T' on ``active`` (original numbering)."""
    act = frozenset(range(len(net))) if active is None else frozenset(active)
    if not act:
        return frozenset()
    return _mu_round(net, act)[0].result


def compute_lambda(net: PetriNet, witness: bool = True) -> AnalysisReport:
    """Iterate μ from the full net to its fixpoint Λ(T).

    ``rounds`` lists the strictly decreasing chain ``T_0 ⊋ T_1 ⊋ ... ⊋ T_n``
    ending at the fixpoint.  When Λ(T) is non-empty and ``witness`` is set,
    a zero-to-zero cycle using exactly Λ(T) is built and replay-checked.
    """
    active = frozenset(range(len(net)))
    rounds = [active]
    details: list[RoundInfo] = []
    final_mk: Optional[MarkableResult] = None
    final_cert = CyclicCertificate(frozenset(), {})
    while active:
        info, cert = _mu_round(net, active)
        details.append(info)
        if info.result == active:
            final_mk, final_cert = info.markable, cert
            break
        active = info.result
        rounds.append(active)
    if final_mk is None:
        final_mk = mutually_fireable_set(PetriNet(net.dimension))
    report = AnalysisReport(
        markable=final_mk,
        u_certificate=final_cert,
        lambda_set=active,
        rounds=rounds,
        structurally_cyclic=bool(active),
        round_details=details,
    )
    if active and witness:
        report.witness = _synthesize(net, active, final_mk, final_cert)
    return report


def synthesize_witness(net: PetriNet, fixpoint: Iterable[int]) -> PowerWord:
    """Build ``w_+^n w^n w_-^n`` with ``0 -> 0`` over the subnet ``fixpoint``.

    ``fixpoint`` must be non-empty and satisfy ``mu(net, fixpoint) == fixpoint``.
    """
    fix = frozenset(fixpoint)
    if not fix:
        raise ValueError("fixpoint must be non-empty")
    info, cert = _mu_round(net, fix)
    if info.result != fix:
        raise ValueError("the given set is not a fixpoint of mu")
    return _synthesize(net, fix, info.markable, cert)


def _synthesize(net: PetriNet, fix: frozenset[int], mk: MarkableResult,
                cert: CyclicCertificate) -> PowerWord:
    w_plus, w_minus = mk.forward_witness, mk.backward_witness
    psi_plus, psi_minus = parikh(w_plus), parikh(w_minus)
    psi0 = cert.psi
    if set(psi0) != fix:
        raise ConstructionFailure(f"certificate support {sorted(psi0)} != fixpoint {sorted(fix)}")
    need = {t: psi_plus.get(t, 0) + psi_minus.get(t, 0) for t in fix}
    m = max(1, max(-(-need[t] // psi0[t]) for t in fix))
    psi = {t: m * psi0[t] - need[t] for t in fix}
    w = word_of_parikh(psi)
    req, _ = power_word_requirement(net, w)
    # w fires from n*z, z the indicator of I(T); outside I(T) nothing is consumed
    n = max([1] + [req[i] for i in mk.i_both])
    if any(req[i] for i in range(net.dimension) if i not in mk.i_both):
        raise ConstructionFailure(f"middle word consumes outside I(T): requirement {req}")
    witness = concat(power(w_plus, n), power(w, n), power(w_minus, n))
    verdict = verify_witness(net, witness)
    if not verdict.valid or verdict.transitions_used != fix:
        raise ConstructionFailure(
            f"witness rejected: valid={verdict.valid}, used={sorted(verdict.transitions_used)}, "
            f"fixpoint={sorted(fix)}, m={m}, n={n}, psi0={psi0}, error={verdict.error}")
    return witness


def verify_witness(net: PetriNet, pw: PowerWord) -> Verdict:
    """Check that ``pw`` is a non-empty firing sequence from 0 back to 0."""
    length = flat_length(pw)
    used = frozenset(parikh(pw))
    try:
        end = fire_power_word(zero(net.dimension), net, pw)
    except NotFireable as e:
        return Verdict(False, used, length, e)
    return Verdict(length >= 1 and not any(end), used, length)


