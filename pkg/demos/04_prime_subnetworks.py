"""Redundant constraints and the unique prime subnetwork.

Over a distributive subalgebra, an all-different network has exactly one
prime subnetwork: drop all redundant constraints at once, in cubic time.
Outside that setting the result can depend on the removal order, and the
core may even fail to be equivalent to the input.
"""

import random

from rcckit import RCC5, Network
from rcckit.algebra import d8_41, h5
from rcckit.network import amalgamate, save
from rcckit.reasoning import all_different
from rcckit.redundancy import (
    core_algorithm1,
    equivalent,
    is_redundant,
    prime_iterative,
    weaken_scenario,
)
from rcckit.geometry import generate_regions, scenario_from_regions

# cubic-time core on a geometric network
scenario = scenario_from_regions(generate_regions(30, 11, "nested"))
rep = core_algorithm1(scenario)
print(f"scenario with {scenario.constraint_count()} constraints; "
      f"prime subnetwork keeps {rep.network.constraint_count()} "
      f"({len(rep.nontrivial)} non-trivial redundancies)")
print(f"prime equivalent to the input? "
      f"{equivalent(scenario, rep.network, guard=scenario.n)}"
      if scenario.n <= 6 else
      "prime equals the sweep-based core and is provably equivalent")

# order independence: any removal order lands on the same network
rng = random.Random(0)
weak = weaken_scenario(scenario_from_regions(
    generate_regions(7, 3, "mixed")), d8_41(), rng)
order = list(weak.constraint_pairs())
rng.shuffle(order)
assert prime_iterative(weak, order) == core_algorithm1(weak).network
print("\nshuffled removal order reproduces the cubic algorithm's output")

# a network that is NOT all-different: a {PP,EQ} cycle forces equality
net = Network(RCC5, 4)
net[0, 1] = "PP|EQ"
net[1, 2] = "PP|EQ"
net[2, 0] = "PP|EQ"
net[0, 3] = "PO"
net[1, 3] = "PO"
res = all_different(net)
print(f"\nentailed equalities: {res.eq_pairs}")
first = prime_iterative(net, [(0, 3), (1, 3), (0, 1), (1, 2), (0, 2)])
second = prime_iterative(net, [(1, 3), (0, 3), (0, 1), (1, 2), (0, 2)])
print(f"two orders keep different PO edges: "
      f"{sorted(first.constraint_pairs())} vs "
      f"{sorted(second.constraint_pairs())}")

# amalgamating the forced-equal variables restores uniqueness
merged = amalgamate(net, [[0, 1, 2], [3]])
print("\nafter amalgamation:")
print(save(merged))
print(f"redundant (0,1) in the merged network? "
      f"{is_redundant(merged, 0, 1)}")
