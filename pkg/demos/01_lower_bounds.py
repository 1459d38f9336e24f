# Lower bounds for three-colour cycle Ramsey numbers.
#
# Build the extremal colourings for a few (n, m, l) triples, then certify
# that none of them has a red C_n, blue C_m or green C_l.

from mixramsey.constructions import class_blocks, eoo_construction_1, lower_bound_colouring, theorem_c_value
from mixramsey.ramsey import RamseySpec, verify_lower_bound

# The headline instance: four red cliques of size 7, 28 vertices in total.
g = eoo_construction_1(8, 7, 7)
print("vertices:", g.n)
print("blocks:", [list(b) for b in class_blocks("eoo1", 8)])

cert = verify_lower_bound(g, RamseySpec.parse("C8:red,C7:blue,C7:green"))
print(cert.claim["statement"], "verified" if cert.verified else "REFUTED")
for row in cert.evidence["per_colour"]:
    print("  colour", row["colour"], "C%d" % row["length"], row["status"])

# Same exercise over a small grid.  The construction picked depends on which
# of 4n, n + 2m, n + 2l is largest.
print()
print(" n  m  l  N-1  certified")
for n, m, l in [(4, 5, 5), (4, 9, 5), (6, 7, 9), (10, 5, 5)]:
    g = lower_bound_colouring(n, m, l)
    ok = verify_lower_bound(g, RamseySpec((n, m, l))).verified
    print(f"{n:2d} {m:2d} {l:2d}  {g.n:3d}  {ok}  (formula {theorem_c_value(n, m, l)})")
