"""Extremal colourings: coloured complete graphs that avoid prescribed monochromatic cycles.

All generators take resolved integer cycle lengths; turn an asymptotic length
such as ``<<a n>>`` into an integer with :func:`mixramsey.core.floor_even` first.
Vertex classes are laid out as consecutive index blocks, in the order listed in
each docstring, so ``class_blocks`` of the same parameters recovers them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .core import BLUE, GREEN, RED, EdgeColouring


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class CycleTarget:
    length: int
    parity: str

    def __post_init__(self):
        if self.length < 3:
            raise ParameterError(f"cycle length must be >= 3, got {self.length}")
        expected = "even" if self.length % 2 == 0 else "odd"
        if self.parity != expected:
            raise ParameterError(f"C_{self.length} is {expected}, not {self.parity}")

    @classmethod
    def of(cls, length: int) -> "CycleTarget":
        return cls(length, "even" if length % 2 == 0 else "odd")


def _even(name: str, x: int, least: int = 4) -> None:
    if x % 2 or x < least:
        raise ParameterError(f"{name} must be an even integer >= {least}, got {x}")


def _odd(name: str, x: int, least: int = 3) -> None:
    if x % 2 == 0 or x < least:
        raise ParameterError(f"{name} must be an odd integer >= {least}, got {x}")


def _blocks(sizes) -> list[range]:
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def _fill(col: np.ndarray, A, B, c: int) -> None:
    a, b = np.asarray(A, dtype=int), np.asarray(B, dtype=int)
    if a.size and b.size:
        col[np.ix_(a, b)] = c
        col[np.ix_(b, a)] = c


def _inside(col: np.ndarray, A, c: int) -> None:
    _fill(col, A, A, c)


def _finish(col: np.ndarray, r: int) -> EdgeColouring:
    np.fill_diagonal(col, -1)
    return EdgeColouring.from_matrix(col, r)


def class_blocks(family: str, *params: int) -> list[range]:
    """Vertex classes V1, V2, ... of a construction, as index ranges."""
    if family == "eoo1":
        n = params[0]
        return _blocks([n - 1] * 4)
    if family in ("eoo2", "eoo3"):
        n, m = params[:2]
        return _blocks([m - 1, m - 1, n // 2 - 1, n // 2 - 1])
    if family == "even2":
        n = params[0]
        return _blocks([n - 1, n // 2 - 1])
    if family == "evenr":
        n, r = params[:2]
        return _blocks([n - 1] + [n // 2 - 1] * (r - 1))
    if family == "odd2":
        n = params[0]
        return _blocks([n - 1, n - 1])
    raise ParameterError(f"unknown family {family!r}")


def eoo_construction_1(n: int, m: int, l: int) -> EdgeColouring:
    """Four classes of n - 1 vertices: red inside classes, blue on V1-V3 and V2-V4,
    green between V1 u V3 and V2 u V4.  4n - 4 vertices."""
    _even("n", n)
    _odd("m", m)
    _odd("l", l)
    V1, V2, V3, V4 = class_blocks("eoo1", n)
    N = 4 * (n - 1)
    col = np.zeros((N, N), dtype=np.int64)
    for V in (V1, V2, V3, V4):
        _inside(col, V, RED)
    _fill(col, V1, V3, BLUE)
    _fill(col, V2, V4, BLUE)
    _fill(col, list(V1) + list(V3), list(V2) + list(V4), GREEN)
    return _finish(col, 3)


InnerColouring = Callable[[int, int], int] | Mapping[tuple[int, int], int]


def _two_big_two_small(n: int, odd_len: int, inside_big: int, across: int,
                       inner: InnerColouring | None) -> EdgeColouring:
    V1, V2, V3, V4 = class_blocks("eoo2", n, odd_len)
    N = 2 * (odd_len - 1) + n - 2
    col = np.zeros((N, N), dtype=np.int64)
    _fill(col, V1, V3, RED)
    _fill(col, V2, V4, RED)
    _inside(col, V1, inside_big)
    _inside(col, V2, inside_big)
    _fill(col, list(V1) + list(V3), list(V2) + list(V4), across)
    _inside(col, V3, RED)
    _inside(col, V4, RED)
    if inner is not None:
        allowed = {RED, inside_big}
        for V in (V3, V4):
            for i, u in enumerate(V):
                for v in V[i + 1:]:
                    c = inner(u, v) if callable(inner) else inner.get((u, v), RED)
                    if c not in allowed:
                        raise ParameterError(f"edge ({u}, {v}) inside a small class must use "
                                             f"colour {RED} or {inside_big}, got {c}")
                    col[u, v] = col[v, u] = c
    return _finish(col, 3)


def eoo_construction_2(n: int, m: int, inner: InnerColouring | None = None) -> EdgeColouring:
    """|V1| = |V2| = m - 1, |V3| = |V4| = n/2 - 1; red on V1-V3 and V2-V4, blue inside
    V1 and V2, green between V1 u V3 and V2 u V4.  n + 2m - 4 vertices.

    Edges inside V3 and V4 may be red or blue; they default to red and ``inner``
    (a callable ``(u, v) -> colour`` or a mapping keyed by ``(u, v)``, ``u < v``)
    overrides them.
    """
    _even("n", n)
    _odd("m", m)
    return _two_big_two_small(n, m, BLUE, GREEN, inner)


def eoo_construction_3(n: int, l: int, inner: InnerColouring | None = None) -> EdgeColouring:
    """Construction 2 with blue and green exchanged; n + 2l - 4 vertices."""
    _even("n", n)
    _odd("l", l)
    return _two_big_two_small(n, l, GREEN, BLUE, inner)


def two_colour_even_extremal(n: int) -> EdgeColouring:
    """Class of n - 1 vertices coloured 0 inside, class of n/2 - 1 vertices, colour 1 elsewhere."""
    _even("n", n)
    return r_colour_even_extremal(n, 2)


def r_colour_even_extremal(n: int, r: int) -> EdgeColouring:
    """Nested even-cycle structure on (r+1)n/2 - r vertices.

    Class 0 has n - 1 vertices coloured 0 inside; classes 1..r-1 have n/2 - 1
    vertices each, and class i uses colour i inside itself and towards every
    earlier class.
    """
    _even("n", n)
    if r < 2:
        raise ParameterError("need at least two colours")
    blocks = class_blocks("evenr", n, r)
    N = blocks[-1].stop
    col = np.zeros((N, N), dtype=np.int64)
    _inside(col, blocks[0], 0)
    for i in range(1, r):
        _inside(col, blocks[i], i)
        for j in range(i):
            _fill(col, blocks[i], blocks[j], i)
    return _finish(col, r)


def two_colour_odd_extremal(n: int) -> EdgeColouring:
    """Two classes of n - 1 vertices, colour 0 inside each, colour 1 between."""
    _odd("n", n)
    A, B = class_blocks("odd2", n)
    N = 2 * (n - 1)
    col = np.zeros((N, N), dtype=np.int64)
    _inside(col, A, 0)
    _inside(col, B, 0)
    _fill(col, A, B, 1)
    return _finish(col, 2)


def odd_doubling(base: EdgeColouring, new_colour: int | None = None) -> EdgeColouring:
    """Two disjoint copies of ``base`` with every cross edge in a fresh colour."""
    if new_colour is None:
        new_colour = base.r
    if new_colour != base.r:
        raise ParameterError(f"new colour must be the next unused index {base.r}, got {new_colour}")
    N = base.n
    col = np.full((2 * N, 2 * N), new_colour, dtype=np.int64)
    inner = base.colour_matrix()
    col[:N, :N] = inner
    col[N:, N:] = inner
    return _finish(col, base.r + 1)


def odd_extremal(n: int, r: int) -> EdgeColouring:
    """r-colour odd-cycle structure on 2**(r-1) (n - 1) vertices by repeated doubling."""
    if r < 2:
        raise ParameterError("need at least two colours")
    g = two_colour_odd_extremal(n)
    for _ in range(r - 2):
        g = odd_doubling(g)
    return g


def mixed_parity_doubling(n: int, m: int, l: int) -> EdgeColouring:
    """Four-colour structure: two copies of :func:`eoo_construction_1`, cross edges colour 3."""
    return odd_doubling(eoo_construction_1(n, m, l), 3)


def theorem_c_value(n: int, m: int, l: int) -> int:
    """max{4n, n + 2m, n + 2l} - 3 for n even and m, l odd."""
    _even("n", n)
    _odd("m", m)
    _odd("l", l)
    return max(4 * n, n + 2 * m, n + 2 * l) - 3


def lower_bound_colouring(n: int, m: int, l: int) -> EdgeColouring:
    """The construction attaining max{4n, n+2m, n+2l} on that value minus 4 vertices."""
    sizes = [4 * n, n + 2 * m, n + 2 * l]
    best = sizes.index(max(sizes))
    if best == 0:
        return eoo_construction_1(n, m, l)
    if best == 1:
        return eoo_construction_2(n, m)
    return eoo_construction_3(n, l)
