"""Exact integer geometry for the self-intersection test.

A cycle drawn as a polygon joins the centers of consecutive cells with
straight segments.  It is simple (uncrossed) when no two edges share any
point beyond the single vertex that consecutive edges have in common.  All
predicates work in exact integer arithmetic; cell coordinates never exceed
17, so nothing here can overflow.
"""

from __future__ import annotations

from functools import lru_cache

from .board import BoardSpec, Coord, adjacency, coord_of
from .cycles import CycleSeq

Segment = tuple[Coord, Coord]


def orientation(p: Coord, q: Coord, r: Coord) -> int:
    """Sign of the cross product (q - p) x (r - p): 0 for collinear points,
    opposite signs for the two turning directions."""
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if cross > 0:
        return 1
    if cross < 0:
        return -1
    return 0


def _within_box(p: Coord, q: Coord, r: Coord) -> bool:
    # q assumed collinear with p-r; is it inside the closed bounding box?
    return (min(p[0], r[0]) <= q[0] <= max(p[0], r[0])
            and min(p[1], r[1]) <= q[1] <= max(p[1], r[1]))


def segments_cross(s1: Segment, s2: Segment) -> bool:
    """True iff the two segments share at least one point that is not an
    endpoint common to both.

    Proper interior crossings, an endpoint of one lying on the other, and
    collinear overlap all count; merely sharing an endpoint does not.
    """
    a, b = s1
    c, d = s2
    if {a, b} == {c, d}:
        return True
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    shared = {a, b} & {c, d}
    for p, u, v, o in ((c, a, b, o1), (d, a, b, o2), (a, c, d, o3), (b, c, d, o4)):
        if o == 0 and p not in shared and _within_box(u, p, v):
            return True
    return False


def is_simple(cycle: CycleSeq) -> bool:
    """True iff the cycle's polygon is non-self-intersecting: non-adjacent
    edges never touch, adjacent edges share only their common vertex."""
    pts = cycle.coords()
    k = len(pts)
    edges = [(pts[i], pts[(i + 1) % k]) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if segments_cross(edges[i], edges[j]):
                return False
    return True


class CrossingTable:
    """Precomputed pairwise crossings of every knight-move segment on one
    board, for the enumeration hot path.

    Knight segments have no interior lattice points, so a vertex of one edge
    can never sit inside another edge of the same cycle; between *distinct*
    knight edges the only possible conflict is a proper crossing or a shared
    endpoint touch, and those are exactly what the table records.
    """

    def __init__(self, board: BoardSpec):
        self.board = board
        adj = adjacency(board)
        coords = [None] + [coord_of(i, board) for i in range(1, board.size + 1)]
        edge_id: dict[tuple[int, int], int] = {}
        segs: list[Segment] = []
        for u in range(1, board.size + 1):
            for v in adj[u]:
                if v > u:
                    edge_id[(u, v)] = len(segs)
                    segs.append((coords[u], coords[v]))
        crossing: list[set[int]] = [set() for _ in segs]
        for e in range(len(segs)):
            for f in range(e + 1, len(segs)):
                if segments_cross(segs[e], segs[f]):
                    crossing[e].add(f)
                    crossing[f].add(e)
        self._edge_id = edge_id
        self._crossing = tuple(frozenset(s) for s in crossing)

    def is_simple_cells(self, cells) -> bool:
        """is_simple for a raw index sequence already known to be a cycle."""
        eid = self._edge_id
        k = len(cells)
        ids = []
        for i in range(k):
            u = cells[i]
            v = cells[i + 1] if i + 1 < k else cells[0]
            ids.append(eid[(u, v)] if u < v else eid[(v, u)])
        crossing = self._crossing
        for i in range(k):
            ci = crossing[ids[i]]
            for j in range(i + 1, k):
                if ids[j] in ci:
                    return False
        return True


@lru_cache(maxsize=8)
def crossing_table(board: BoardSpec) -> CrossingTable:
    return CrossingTable(board)
