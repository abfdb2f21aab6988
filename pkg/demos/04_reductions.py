"""
Reductions from grammars and lossy nets
=======================================

A grammar derives the empty word exactly when its net is structurally
cyclic.  Reachability in a lossy net becomes cyclicity of one
configuration in a slightly larger net.
"""

from structcyc import PetriNet, is_structurally_cyclic
from structcyc.io import serialize_net
from structcyc.oracle import bounded_reach, brute_cyclic
from structcyc.reductions import (
    Grammar,
    LossyInstance,
    cfg_to_net,
    lossy_to_cyclicity,
    make_lossy,
    nullable_epsilon,
)

g = Grammar(("S", "A"), [("S", ("A", "A")), ("A", ("A", "S")), ("A", ())])
net = cfg_to_net(g)
print(serialize_net(net))
print("derives the empty word:", nullable_epsilon(g))
print("structurally cyclic:   ", is_structurally_cyclic(net))

g = Grammar(("S", "A"), [("S", ("A", "b")), ("A", ())], ("b",))
print("\nwith a terminal:", nullable_epsilon(g), is_structurally_cyclic(cfg_to_net(g)))

# merge two tokens into one; loss transitions are added with a warning
lossy = make_lossy(PetriNet(2, [((2, 0), (0, 1))]))
for source, target in [((4, 0), (0, 2)), ((4, 0), (0, 3))]:
    s, query = lossy_to_cyclicity(LossyInstance(lossy, source, target))
    print(f"\n{source} -> {target}: reachable {bounded_reach(lossy, source, target).found}, "
          f"{query} cyclic in S {brute_cyclic(s, query).found}")
