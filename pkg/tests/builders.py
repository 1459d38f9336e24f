"""Instance generators shared by the module tests and the acceptance suite."""

from mixramsey.core import BLUE, GREEN, RED, EdgeColouring, MultiColouredGraph
from mixramsey.regularity import Partition

TEMPLATE = {(0, 1): RED, (0, 2): BLUE, (0, 3): GREEN, (1, 2): GREEN, (1, 3): BLUE, (2, 3): RED}


def blow_up_template(size, template=TEMPLATE, K=4):
    part = lambda v: v // size  # noqa: E731
    return EdgeColouring.from_function(
        K * size, 3, lambda u, v: RED if part(u) == part(v) else template[part(u), part(v)])


def blocks_partition(K, size):
    return Partition((), tuple(tuple(range(i * size, (i + 1) * size)) for i in range(K)))


def plant_H(rng, n1, n2, noise=0):
    n = n1 + n2
    perm = rng.permutation(n).tolist()
    X1, X2 = perm[:n1], perm[n1:]
    s1 = set(X1)

    def colour(u, v):
        if u in s1 and v in s1:
            return RED
        if (u in s1) != (v in s1):
            return BLUE
        return int(rng.integers(2))

    g = EdgeColouring.from_function(n, 3, colour)
    cb = g.colour_bits.copy()
    # green edges inside X2 only eat into the c1 slack
    for _ in range(noise):
        u, v = rng.choice(X2, 2, replace=False).tolist()
        cb[u, v] = cb[v, u] = 1 << GREEN
    return MultiColouredGraph(n, 3, cb), sorted(X1), sorted(X2)


def plant_J(rng, n1, n2, holes=0):
    n = n1 + n2
    perm = rng.permutation(n).tolist()
    s1 = set(perm[:n1])
    g = EdgeColouring.from_function(n, 3, lambda u, v: RED if (u in s1) == (v in s1) else BLUE)
    cb = g.colour_bits.copy()
    for _ in range(holes):
        u, v = rng.choice(n, 2, replace=False).tolist()
        cb[u, v] = cb[v, u] = 0
    return MultiColouredGraph(n, 3, cb)
