"""Star systems with small cores and the speed law they obey.

An s-star is a graph that turns into a crown once a core of at most s
vertices is deleted.  The irreducible systems (J, alpha, beta)
catalogue exactly which cores and attachments occur; the count grows
quickly with s but stays finite, which is the whole point.
"""

from hfspeed import (
    StarSystem, complete, graph6, irreducible_star_systems,
    minimal_nonstar_scan, verify_star_speed,
)

for s in (0, 1, 2):
    systems = irreducible_star_systems(s)
    print(f"s = {s}: {len(systems)} irreducible systems")
for sy in irreducible_star_systems(1)[:6]:
    print("  ", sy.to_json_obj())
print()

# -------------------------------------------------------------------
# vertex-minimal non-s-stars stop at 4s + 5 vertices; the scans agree
scan = minimal_nonstar_scan(0, 8)
print(f"minimal non-0-stars up to n = 8: {scan.witnesses} "
      f"(largest has {scan.max_order} vertices, bound allows 5)")
scan = minimal_nonstar_scan(1, 12, samples=10**4, seed=0)
print(f"seeded spot check at s = 1: {len(scan.witnesses)} witnesses, "
      f"largest {scan.max_order} (bound allows 9)")
print()

# -------------------------------------------------------------------
# h(P(J), n) = |V(J)| log2 n + O(1) against the edgeless benchmark.
# The dominating-apex system has a one-vertex core, so the gap should
# track one log2 n; the drift says how far the O(1) term wobbles.
dom = StarSystem(complete(1), (1,), 0)
rep = verify_star_speed(dom, 1, 12, n_min=6)
print("dominating apex, window", rep.verdicts["window"])
for row in rep.rows:
    if row["n"] >= 6:
        print(f"  n = {row['n']:2d}: labeled = {row['labeled']:>3s}, "
              f"residual = {row['residual_bits']:+.4f} bits")
print(f"drift = {rep.verdicts['drift_bits']:.4f} bits, "
      f"within tolerance: {rep.verdicts['within_tolerance']}")
