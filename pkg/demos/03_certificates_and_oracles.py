"""
Certificates and brute-force cross-checks
=========================================

Every positive answer comes with something that can be replayed: a word
reaching the markable indices, a T-invariant, or a cycle.  A bounded
breadth-first search gives an independent view on small nets.
"""

from structcyc import PetriNet, fire_power_word
from structcyc.lp import ultimately_cyclic
from structcyc.markable import mutually_fireable_set
from structcyc.net import reverse_net, support
from structcyc.oracle import SearchBudget, bounded_reach, brute_zero_cycle_transitions

net = PetriNet(3, [
    ((0, 0, 0), (1, 0, 0)),
    ((1, 0, 0), (0, 1, 0)),
    ((0, 1, 0), (0, 0, 0)),
    ((0, 0, 1), (1, 0, 0)),
])

mk = mutually_fireable_set(net)
print("forward markable:", sorted(mk.i_plus))
print("backward markable:", sorted(mk.i_minus))
print("mutually fireable transitions:", sorted(mk.mutually_fireable))

end = fire_power_word((0, 0, 0), net, mk.forward_witness)
print("forward witness", mk.forward_witness, "reaches", end, "with support", sorted(support(end)))

cert = ultimately_cyclic(net)
print("\nT-invariant:", cert.psi, "covers", sorted(cert.u_set))

budget = SearchBudget(coordinate_bound=4)
print("\nbrute-force zero-cycle transitions:", sorted(brute_zero_cycle_transitions(net, budget)))

# reachability statuses tell proofs from budget artefacts apart
print(bounded_reach(net, (0, 0, 1), (0, 0, 0), budget))
print(bounded_reach(reverse_net(net), (0, 0, 0), (0, 0, 1), budget))
