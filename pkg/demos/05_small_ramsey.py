# Exact small Ramsey numbers by exhaustive search.
#
# The search colours edges in a fixed order and prunes by row-0 sorting and
# colour symmetry.  For tiny N the pruned and naive enumerations are compared
# up to isomorphism.

import time

from mixramsey.ramsey import (RamseySpec, canonical_classes, naive_avoiders, pruned_avoiders,
                              ramsey_exact)

for targets in ((3, 3), (4, 4), (4, 5), (5, 5)):
    spec = RamseySpec(targets)
    t = time.perf_counter()
    res = ramsey_exact(spec, 3, 10)
    dt = time.perf_counter() - t
    print(f"R({spec.describe()}) = {res.value}   [{dt:.2f}s]")

spec = RamseySpec((4, 4))
for N in (3, 4, 5):
    naive = canonical_classes(spec, N, naive_avoiders(spec, N))
    pruned = canonical_classes(spec, N, pruned_avoiders(spec, N))
    print(f"N={N}: {len(naive)} classes, pruned search agrees: {naive == pruned}")
