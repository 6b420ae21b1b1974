"""Constraint networks, the a-closure, and the backtracking oracle.

Networks are n-by-n matrices of relations with an EQ diagonal and
converse-symmetric entries.  Enforcing path consistency (the a-closure)
either refines the network to a unique fixed point or proves it
inconsistent.
"""

from rcckit import RCC5, Network
from rcckit.network import loads, remove_constraint, save
from rcckit.reasoning import a_closure, entails, is_consistent, solve

# the five-region network whose (v1, v2) constraint turns out redundant
net = Network(RCC5, 5)
net[0, 1] = "PP"
net[0, 4] = "PP"
net[2, 0] = "PP"
net[3, 1] = "PP"
net[4, 1] = "DR|PP"
net[2, 3] = "PO"
print("input network:")
print(save(net))

reduced = remove_constraint(net, 0, 1)
closed = a_closure(reduced).network
print(f"after dropping (v1, v2), the closure still pins it: "
      f"v1 {closed[0, 1]} v2")
print(f"so the rest entails it: "
      f"{entails(reduced, 0, 1, RCC5.relation('PP'))}")

scenario = solve(net)
print("\none consistent scenario refining the network:")
print(save(scenario))

# an unsatisfiable triangle: PP . PP = PP, which excludes DR
bad = loads("""
calculus RCC5
vars 3
1 2 PP
2 3 PP
1 3 DR
""")
res = a_closure(bad)
print(f"PP/PP/DR triangle consistent? {is_consistent(bad)}; "
      f"witness triple {res.witness}")
