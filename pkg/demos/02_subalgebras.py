"""Distributive subalgebras: where path consistency is enough.

Starting from the basic relations and closing under converse,
intersection, and composition gives a small algebra (12 relations for
RCC5, 37 for RCC8).  Extending it while keeping weak composition
distributive over nonempty intersections yields exactly two maximal
families per calculus.
"""

from rcckit import RCC5, RCC8
from rcckit.algebra import (
    bhat,
    closure,
    helly_check,
    is_distributive,
    maximal_distributive,
)

b5 = bhat(RCC5)
print(f"closure of the RCC5 basics: {len(b5)} relations")
for rel in b5.relations():
    print("   ", rel)

for calc in (RCC5, RCC8):
    subs = maximal_distributive(calc)
    print(f"\n{calc.name} maximal distributive subalgebras: "
          + ", ".join(f"{s.name} ({len(s)})" for s in subs))

# distributivity fails as soon as an awkward relation joins the set
probe = set(b5.members) | {RCC5.parse("DR|PP")}
res = is_distributive(RCC5, probe)
print(f"\nB5 closure plus DR|PP distributive? {bool(res)}")
r, s, t = res.witness
print(f"  witness: R={r}, S={s}, T={t}")
print(f"  R.(S&T) = {r.compose(s & t)}")
print(f"  (R.S)&(R.T) = {r.compose(s) & r.compose(t)}")

# the Helly property: pairwise-compatible members are jointly compatible
print("\nHelly on a non-distributive triple:")
bad = helly_check(RCC5, ["PO|PP", "DR|PP", "DR|PO|PPi"])
print(f"  holds? {bool(bad)}; witness {[str(w) for w in bad.witness]}")

# closure of a single relation
print(f"\nclosure of EQ alone: "
      f"{[str(r) for r in closure(RCC5, ['EQ']).relations()]}")
