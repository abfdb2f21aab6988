"""
Deciding structural cyclicity
=============================

A net is structurally cyclic when the zero configuration can return to
itself in at least one step.  ``compute_lambda`` computes the set of
transitions that occur on such cycles by shrinking the net until the
markable and cyclic parts agree.
"""

from structcyc import PetriNet, compute_lambda, verify_witness
from structcyc.net import flat_length, parikh

spacer = "-" * 60

# A producer and a consumer that needs three tokens.
net = PetriNet(1, [((0,), (2,)), ((3,), (0,))])
report = compute_lambda(net)
print("structurally cyclic:", report.structurally_cyclic)
print("transitions on zero cycles:", sorted(report.lambda_set))
print("certificate with zero displacement:", report.u_certificate.psi)
print("witness:", report.witness)
print("witness Parikh image:", parikh(report.witness))
print("verified:", verify_witness(net, report.witness).valid)

print(spacer)

# Here t2 needs counter 2, which only t2 itself can refill, and t1's token
# on counter 1 can never be removed.  The analysis peels the net in rounds.
net = PetriNet(2, [((0, 0), (1, 0)), ((1, 0), (1, 1)), ((0, 1), (0, 0))])
report = compute_lambda(net)
for k, active in enumerate(report.rounds):
    print(f"T{k} =", sorted(active))
print("structurally cyclic:", report.structurally_cyclic)

print(spacer)

# Several gadgets at once: the witness is large but stays compressed.
net = PetriNet(3, [
    ((0, 0, 0), (1, 0, 0)),
    ((1, 0, 0), (0, 5, 0)),
    ((0, 3, 0), (0, 0, 1)),
    ((0, 0, 7), (0, 0, 0)),
])
report = compute_lambda(net)
print("Λ =", sorted(report.lambda_set))
print("witness expanded length:", flat_length(report.witness))
print("verified:", verify_witness(net, report.witness).valid)
