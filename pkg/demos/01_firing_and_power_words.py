"""
Firing transitions and compressed words
=======================================

A net over d counters is a list of transitions (pre, post).  Firing
subtracts pre and adds post, and is only allowed when the result stays
non-negative.
"""

from structcyc import Concat, Leaf, NotFireable, PetriNet, Power, fire_power_word, fire_word
from structcyc.net import expand, flat_length, parikh

# one transition creates a token on counter 1, the other moves two of them to counter 2
net = PetriNet(2, [((0, 0), (1, 0)), ((2, 0), (0, 1))])
print(net)

print("\nfire t1 t1 t2 from 0:", fire_word((0, 0), net, [0, 0, 1]))

try:
    fire_word((0, 0), net, [0, 1])
except NotFireable as e:
    print("t1 t2 is not fireable:", e)

# Power words describe long sequences without writing them out.
# (t1^2 t2)^1000 produces 1000 tokens on counter 2.
pw = Power(Concat((Power(Leaf(0), 2), Leaf(1))), 1000)
print("\nexpanded length:", flat_length(pw))
print("Parikh image:", parikh(pw))
print("replayed without expansion:", fire_power_word((0, 0), net, pw))
print("replayed after expansion:  ", fire_word((0, 0), net, expand(pw)))

# exponents can be far beyond anything that could be expanded
huge = Power(Leaf(0), 10**50)
print("\nt1^(10^50) ends at counter value with", len(str(fire_power_word((0, 0), net, huge)[0])), "digits")
