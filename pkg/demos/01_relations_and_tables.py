"""Relations, weak composition, and the embedded tables.

An RCC relation is a set of basic relations, held as a bit mask.  RCC5
talks about part-whole structure (DR, PO, PP, PPi, EQ); RCC8 refines the
"disconnected or touching" and "inside or touching from inside"
distinctions (DC, EC, PO, TPP, NTPP, TPPi, NTPPi, EQ).
"""

from rcckit import RCC5, RCC8, compose, converse, ct_path
from rcckit.calculus import verify_relation_algebra

# parse from the textual syntax: names joined by '|', '*' universal
r = RCC5.relation("DR|PO")
s = RCC5.relation("PP")
print(f"r = {r}, s = {s}")
print(f"r . s   = {compose(r, s)}       (weak composition)")
print(f"r & s   = {r & s}")
print(f"r | s   = {r | s}")
print(f"~s      = {~s}")
print(f"s^-1    = {converse(s)}")

# a chain of constraints composes along the path
chain = [RCC8.relation("NTPP"), RCC8.relation("NTPP")]
print(f"\nNTPP then NTPP  -> {ct_path(chain)}  (nesting is transitive)")
loose = [RCC8.relation("TPP"), RCC8.relation("TPPi")]
print(f"TPP then TPPi   -> {ct_path(loose)}")

# every cell of both composition tables is exercised by the exhaustive
# relation-algebra check: associativity, converses, identity, cycle law
for calc in (RCC5, RCC8):
    print("\n" + str(verify_relation_algebra(calc)))
