"""Coloring numbers, then the reduced versus dangerous split.

A member h of f is reduced when some s keeps every forbidden pattern
out of P(iota(h), H(s, l-1-s)); otherwise h is dangerous and each s has
a concrete violation certificate.  For triangle-free graphs the reduced
members are exactly the edgeless graphs, so almost everything here
lands on the dangerous side.
"""

from hfspeed import (
    Forb, coloring_number, complete, cycle, enumerate_family,
    enumerate_reduced, graph6, is_reduced, matching,
)

# chi_c first: the level every later question is asked at
for fam in (Forb([complete(2)]), Forb([complete(3)]), Forb([complete(4)]),
            Forb([matching(2)]), Forb([cycle(5)])):
    res = coloring_number(fam)
    print(f"chi_c({fam.text()}) = {res.l}  (witness s = {res.witness_s})")
print()

FAM = Forb([complete(3)])
L = 2

# every triangle-free graph on up to four vertices, classified
table = enumerate_family(FAM, 4)
for n in range(1, 5):
    for g in table.members[n]:
        verdict = is_reduced(g, FAM, L)
        tag = (f"reduced (s = {verdict.witness_s})" if verdict.reduced
               else f"dangerous ({len(verdict.violations)} violations)")
        print(f"  {graph6.encode(g):>4}  n={n}  {tag}")
print()

# the reduced family itself, enumerated directly
red = enumerate_reduced(FAM, L, 8)
print("red(forb(K3)) up to n = 8:", red.unlabeled)
print("members:", [graph6.encode(g) for n in range(9) for g in red.members[n]])
