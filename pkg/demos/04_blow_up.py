"""From a reduced graph back to long cycles.

A K_4 template is blown up into four clusters of 20 vertices.  Each pair gets
its template colour on 70% of the cross edges, the reduced graph is built on
the clusters, and a red connected matching is lifted to red cycles of many
lengths.
"""

from fractions import Fraction

import numpy as np

from mixramsey.core import BLUE, GREEN, RED, EdgeColouring
from mixramsey.matchings import ConnectedMatching
from mixramsey.regularity import (CapacityError, Partition, blow_up_capacity, blow_up_matching_to_cycle,
                                  build_reduced_graph, plan_blow_up)

size = 20
template = {(0, 1): RED, (1, 2): RED, (2, 3): RED, (0, 2): RED, (0, 3): BLUE, (1, 3): GREEN}
rng = np.random.default_rng(1)


def colour(u, v):
    i, j = u // size, v // size
    if i == j:
        return int(rng.integers(3))
    c = template[min(i, j), max(i, j)]
    return c if rng.random() < 0.7 else int(rng.choice([x for x in range(3) if x != c]))


g = EdgeColouring.from_function(4 * size, 3, colour)
pi = Partition((), tuple(tuple(range(i * size, (i + 1) * size)) for i in range(4)))
eps = Fraction(1, 1000)

# Parts are beyond the exact regularity limit, so regularity is taken on trust.
rg = build_reduced_graph(g, pi, eps, Fraction(1, 2), mode="claimed")
print("reduced red edges:", rg.graph.colour_class(RED).edges())
print("provenance:", rg.provenance())

M = ConnectedMatching(((0, 1), (2, 3)), RED, (0, 1, 2, 3), True)
plan = plan_blow_up(rg, M, 40, RED, eps)
print("capacity:", blow_up_capacity(pi, M, plan.walks, eps))

# 0-3 is blue in the template, so the connector back to cluster 0 needs two steps
# and the shortest plan has 6 vertices.
for L in (6, 7, 17, 40, 74):
    w = blow_up_matching_to_cycle(g, pi, rg, M, L, RED, eps)
    print(f"C{L}: valid={w.validate(g)}  starts {w.vertices[:6]}")

try:
    blow_up_matching_to_cycle(g, pi, rg, M, 76, RED, eps)
except CapacityError as e:
    print("C76:", e)
