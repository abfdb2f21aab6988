"""Structural cyclicity of Petri nets in polynomial time.

The central entry point is :func:`compute_lambda`, which returns the set
of transitions occurring on some cycle from the zero configuration back to
itself, together with an independently checkable witness.
"""

from .engine import (
    AnalysisReport,
    ConstructionFailure,
    Verdict,
    compute_lambda,
    mu,
    synthesize_witness,
    verify_witness,
)
from .lp import CyclicCertificate, clear_denominators, lp_feasible, ultimately_cyclic
from .markable import (
    MarkableResult,
    backward_markable,
    forward_markable,
    mutually_fireable_set,
    prop_step,
)
from .net import (
    EMPTY,
    Concat,
    DimensionMismatch,
    Leaf,
    NotFireable,
    PetriNet,
    Power,
    Transition,
    displacement,
    displacement_of_parikh,
    expand,
    fire,
    fire_power_word,
    fire_word,
    flat_length,
    parikh,
    reverse_net,
    support,
)


def is_structurally_cyclic(net: PetriNet) -> bool:
    return compute_lambda(net, witness=False).structurally_cyclic


__version__ = "0.1.0"
