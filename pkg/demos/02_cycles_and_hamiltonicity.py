"""Cycle search and the classical Hamiltonicity conditions on small graphs."""

import numpy as np

from mixramsey.core import Graph
from mixramsey.cycles import (chvatal_check, dirac_check, find_cycle_exact, hamiltonian_cycle,
                              longest_cycle_length, ore_check)

rng = np.random.default_rng(7)


def random_graph(n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


# Exact search either returns a cycle or an exhaustive absence record.
petersen = Graph(10, [(i, (i + 1) % 5) for i in range(5)]
                 + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
                 + [(i, i + 5) for i in range(5)])
for L in (5, 6, 9, 10):
    res = find_cycle_exact(petersen, None, L)
    print(f"Petersen C{L}:", type(res).__name__)

print()
print("dirac ore chvatal  cycle")
for _ in range(6):
    h = random_graph(9, 0.6)
    w = hamiltonian_cycle(h)
    print(f"{dirac_check(h)!s:5} {ore_check(h)!s:5} {chvatal_check(h)!s:7}  "
          f"{getattr(w, 'vertices', None)}")

h = random_graph(8, 0.35)
print("\nlongest cycle in a sparse 8-vertex graph:", longest_cycle_length(h))
