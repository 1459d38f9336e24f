# Connected matchings in one colour class, and the bipartite / odd split
# that exists when no odd component carries a large matching.

import numpy as np

from mixramsey.constructions import eoo_construction_1
from mixramsey.core import BLUE, RED, EdgeColouring
from mixramsey.decompose import decompose_no_odd_matching, verify_decomposition
from mixramsey.matchings import largest_connected_matching

g = eoo_construction_1(6, 5, 5)

for colour, name in ((RED, "red"), (BLUE, "blue")):
    cm = largest_connected_matching(g, colour)
    odd = largest_connected_matching(g, colour, require_odd=True)
    print(f"{name}: largest connected matching covers {cm.vertex_count} vertices,"
          f" odd component {'none' if odd is None else odd.vertex_count}")

# Blue is bipartite here, so the whole vertex set lands in V'.
d = decompose_no_odd_matching(g, BLUE, 5)
print("blue split:", len(d.V_prime), "+", len(d.V_doubleprime))

# A random sparse colour class usually mixes both kinds of component.
rng = np.random.default_rng(1)
col = rng.choice(2, size=(12, 12), p=[0.2, 0.8])
col = np.triu(col, 1)
col = col + col.T
np.fill_diagonal(col, -1)
h = EdgeColouring.from_matrix(col, 2)
big = largest_connected_matching(h, 0, require_odd=True)
m = (0 if big is None else big.vertex_count) + 1
d = decompose_no_odd_matching(h, 0, m)
rep = verify_decomposition(h, 0, d)
print(f"\nm = {m}: V' = {list(d.V_prime)}  V'' = {list(d.V_doubleprime)}")
for k, v in rep.conditions.items():
    print(" ", k, v)
