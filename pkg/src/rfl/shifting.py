"""Within-part edge shifting and the bi-shifted fixpoint.

The (x, y)-shift with x < y in the same part rewires every edge at y whose
rewired copy at x is absent.  A graph fixed under all such shifts has an
edge set that is downward closed in both part orders: each X-neighborhood
is a prefix of Y and neighborhoods shrink as the X-index grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import BipartiteGraph, GraphError

ShiftStep = tuple[str, int, int]  # part "X"/"Y", x, y with x < y


@dataclass(frozen=True)
class ShiftTrace:
    """Every applied shift that changed the graph, in application order."""

    steps: tuple[ShiftStep, ...] = field(default=())

    def replay(self, g: BipartiteGraph) -> BipartiteGraph:
        for _part, x, y in self.steps:
            g = xy_shift(g, x, y)
        return g


def xy_shift(g: BipartiteGraph, x: int, y: int) -> BipartiteGraph:
    """Move every edge at y to x when the moved edge is not already present.

    x < y and both in X or both in Y.  Edge count is always preserved.
    """
    n = g.n
    if x >= y:
        raise GraphError(f"shift needs x < y, got ({x},{y})")
    if 1 <= x <= n and 1 <= y <= n:
        row_x, row_y = g.x_rows[x - 1], g.x_rows[y - 1]
        movable = row_y & ~row_x
        rows = list(g.x_rows)
        rows[x - 1] = row_x | movable
        rows[y - 1] = row_y & ~movable
        return BipartiteGraph(n, tuple(rows))
    if n < x <= 2 * n and n < y <= 2 * n:
        cols = g.y_cols
        col_x, col_y = cols[x - n - 1], cols[y - n - 1]
        movable = col_y & ~col_x
        new_x, new_y = col_x | movable, col_y & ~movable
        rows = list(g.x_rows)
        bx, by = 1 << (x - n - 1), 1 << (y - n - 1)
        for i in range(n):
            r = rows[i] & ~(bx | by)
            if new_x >> i & 1:
                r |= bx
            if new_y >> i & 1:
                r |= by
            rows[i] = r
        return BipartiteGraph(n, tuple(rows))
    raise GraphError(f"({x},{y}) must lie in the same part of 1..{2 * n}")


def is_bi_shifted(g: BipartiteGraph) -> bool:
    """Fixed under every within-part shift: each row is a prefix of Y and
    rows are nested downward as the X-index grows."""
    prev = (1 << g.n) - 1
    for row in g.x_rows:
        if row & (row + 1):  # not of the form 2^d - 1
            return False
        if row & ~prev:
            return False
        prev = row
    return True


def bi_shift_fixpoint(g: BipartiteGraph) -> tuple[BipartiteGraph, ShiftTrace]:
    """Sweep all pairs (x, y), x < y, within X then within Y in lexicographic
    order until a full sweep changes nothing.

    Terminates: every applied change strictly decreases the sum of endpoint
    labels over all edges.
    """
    n = g.n
    pairs = [("X", x, y) for x in range(1, n) for y in range(x + 1, n + 1)]
    pairs += [("Y", x, y) for x in range(n + 1, 2 * n) for y in range(x + 1, 2 * n + 1)]
    steps: list[ShiftStep] = []
    changed = True
    while changed:
        changed = False
        for part, x, y in pairs:
            shifted = xy_shift(g, x, y)
            if shifted != g:
                g = shifted
                steps.append((part, x, y))
                changed = True
    return g, ShiftTrace(tuple(steps))


def shift_family(members: tuple[BipartiteGraph, ...]) -> tuple[tuple[BipartiteGraph, ...], tuple[ShiftTrace, ...]]:
    """Member-wise bi-shift fixpoint."""
    shifted, traces = [], []
    for g in members:
        s, t = bi_shift_fixpoint(g)
        shifted.append(s)
        traces.append(t)
    return tuple(shifted), tuple(traces)
