"""Criticality verdicts and the exact-count experiments behind them.

A family at level l is critical when none of the eight-times-2^(l-1)
menu products sits inside it.  Verdicts carry their evidence: a
refutation table when critical, the offending product when not.
"""

from fractions import Fraction

from hfspeed import (
    Forb, S, complete, cycle, is_critical, matching,
    verify_constellation_cover, verify_kpr, verify_partition_fraction,
)

for fam in (Forb([complete(3)]), Forb([matching(2)]), Forb([cycle(5)])):
    v = is_critical(fam)
    if v.critical:
        print(f"{fam.text()}: critical at l = {v.l}, star-like from "
              f"s = {v.s} (horizon n = {v.n_check}, "
              f"{len(v.refutations)} tuples refuted)")
    else:
        texts = ", ".join(f.text() for f in v.witness)
        print(f"{fam.text()}: not critical, P({texts}) sits inside it")
print()

# -------------------------------------------------------------------
# how dominant is the benchmark inside its forbidding family?
rep = verify_kpr(2, 8)
print("bipartite share of triangle-free, labeled:")
for row in rep.rows:
    frac = Fraction(int(row["covered"]), int(row["total"]))
    print(f"  n = {row['n']}: {row['fraction']:>18s}  ~ {float(frac):.4f}")
print(f"trend up at the horizon: {rep.verdicts['trend_up']} "
      "(the limit is 1, but the approach starts far beyond ten vertices)")
print()

# same question via the partition counter, which also reports how many
# of the covered members split in exactly one balanced way
rep = verify_partition_fraction(Forb([complete(3)]), S, 2, 6)
print("two-independent-parts share:",
      [row["fraction"] for row in rep.rows])
print("uniquely balanced among covered:",
      [row["unique_balanced"] for row in rep.rows])
print()

# and the constellation cover for the matching forbidder
rep = verify_constellation_cover(Forb([matching(2)]), 2, 0, 7)
print(f"{rep.verdicts['selected']} constellation(s) selected;"
      " covered share by order:")
print("  ", [row["fraction"] for row in rep.rows])
