"""Cycle representation and canonical forms.

A closed knight's path is stored as the sequence of cell numbers it visits.
Two cycles are equivalent when one maps onto the other by any combination of
board translation, quarter-turn rotation, mirroring, choice of starting cell,
and traversal direction.  Each equivalence class is represented by its
canonical form: the lexicographically smallest index sequence over all of
those re-expressions.  The enumeration engines only ever keep a cycle whose
own sequence already is the canonical one, which classifies without storing
previously seen solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .board import (
    BoardSpec,
    Coord,
    _DIHEDRAL_MAPS,
    apply_dihedral,
    coord_of,
    index_of,
    is_knight_move,
    normalize_translation,
)


class CycleValidationError(ValueError):
    """A cell sequence that is not a closed knight cycle.  ``position`` is
    the 0-based index of the first offending element (or None for length
    problems)."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class CycleSeq:
    """A closed knight cycle: k distinct cells, consecutive cells (and the
    last-to-first pair) a knight move apart on ``board``."""

    cells: tuple[int, ...]
    board: BoardSpec

    def __len__(self) -> int:
        return len(self.cells)

    def coords(self) -> list[Coord]:
        return [coord_of(i, self.board) for i in self.cells]


def validate_cycle(cells, board: BoardSpec) -> CycleSeq:
    """Check every cycle invariant and return the validated CycleSeq.

    Raises CycleValidationError naming the first offending position:
    bad length, out-of-range index, repeated cell, a step that is not a
    knight move, or endpoints that do not close up.
    """
    cells = tuple(cells)
    k = len(cells)
    if k % 2 != 0:
        raise CycleValidationError(f"cycle length must be even, got {k}")
    if k < 4:
        raise CycleValidationError(f"cycle length must be at least 4, got {k}")
    seen: set[int] = set()
    for pos, cell in enumerate(cells):
        if not (1 <= cell <= board.size):
            raise CycleValidationError(
                f"cell {cell} at position {pos} outside board 1..{board.size}",
                position=pos)
        if cell in seen:
            raise CycleValidationError(
                f"cell {cell} repeated at position {pos}", position=pos)
        seen.add(cell)
    coords = [coord_of(i, board) for i in cells]
    for pos in range(k - 1):
        if not is_knight_move(coords[pos], coords[pos + 1]):
            raise CycleValidationError(
                f"step {cells[pos]}->{cells[pos + 1]} at position {pos} "
                f"is not a knight move", position=pos)
    if not is_knight_move(coords[-1], coords[0]):
        raise CycleValidationError(
            f"endpoints {cells[-1]} and {cells[0]} do not close the cycle",
            position=k - 1)
    return CycleSeq(cells, board)


def _canonical_coords(coords: list[Coord]) -> tuple[Coord, ...]:
    """Canonical placement of a cycle, as coordinates.

    Minimum over the 8 dihedral images (each translation-normalized) of the
    smallest traversal of that image.  Within one image only the traversals
    starting at the minimal coordinate can win, so 2 candidates (one per
    direction) suffice per image; comparing (row, col) pairs lexicographically
    matches comparing cell indices on any board the placement fits.
    """
    k = len(coords)
    best: tuple[Coord, ...] | None = None
    for element in _DIHEDRAL_MAPS:
        pts = normalize_translation(apply_dihedral(coords, element))
        j = pts.index(min(pts))
        for step in (1, -1):
            cand = tuple(pts[(j + step * off) % k] for off in range(k))
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def canonicalize(cycle: CycleSeq) -> CycleSeq:
    """Canonical form of ``cycle`` on the same board.

    The result is a valid cycle, is a fixed point of canonicalize, starts at
    its smallest cell, and touches both the top row and leftmost column.
    """
    coords = list(_canonical_coords(cycle.coords()))
    return CycleSeq(tuple(index_of(p, cycle.board) for p in coords), cycle.board)


def canonical_key(cycle: CycleSeq) -> CycleSeq:
    """Canonical form re-encoded on the standard (k+1) x (k+1) board, the
    representation used by listings regardless of the input decode width."""
    board = BoardSpec.for_cycle_length(len(cycle))
    coords = list(_canonical_coords(cycle.coords()))
    return CycleSeq(tuple(index_of(p, board) for p in coords), board)


def is_minimal(cycle: CycleSeq) -> bool:
    """True iff the cycle's own sequence is the canonical one for its class
    (placement-wise: the board width does not affect the answer)."""
    if cycle.board.width == cycle.board.height:
        return _is_minimal_square(cycle.cells, cycle.board.width)
    return tuple(cycle.coords()) == _canonical_coords(cycle.coords())


def are_equivalent(a: CycleSeq, b: CycleSeq) -> bool:
    """True iff some combination of translation, rotation, mirroring, start
    choice and direction maps one cycle onto the other."""
    if len(a) != len(b):
        return False
    return _canonical_coords(a.coords()) == _canonical_coords(b.coords())


def canonical_cell_set(cycle: CycleSeq) -> tuple[int, ...]:
    """Symmetry-minimized visited-cell set, ascending, indexed on the
    standard (k+1) x (k+1) board.  Cycles tracing non-congruent polygons over
    congruent cell sets share this key; it is what twin detection groups by."""
    board = BoardSpec.for_cycle_length(len(cycle))
    coords = cycle.coords()
    best: tuple[int, ...] | None = None
    for element in _DIHEDRAL_MAPS:
        pts = normalize_translation(apply_dihedral(coords, element))
        cand = tuple(sorted(index_of(p, board) for p in pts))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


# Transform maps as (sign_r, sign_c, swap) triples, same order as
# _DIHEDRAL_MAPS: (r, c) -> (sr * x, sc * y) with (x, y) = (c, r) if swap.
_DIHEDRAL_TRIPLES = (
    (1, 1, False), (1, -1, True), (-1, -1, False), (-1, 1, True),
    (1, -1, False), (1, 1, True), (-1, 1, False), (-1, -1, True),
)


@lru_cache(maxsize=16)
def _board_transform_tables(side: int):
    """Cell permutations of a side x side board under the 8 symmetries,
    paired with (sign_c, swap) for O(1) column-extent bookkeeping."""
    tables = []
    for sr, sc, swap in _DIHEDRAL_TRIPLES:
        table = [0] * (side * side + 1)
        for i in range(1, side * side + 1):
            r, c = divmod(i - 1, side)
            x, y = (c, r) if swap else (r, c)
            rr = sr * x + (side - 1 if sr < 0 else 0)
            cc = sc * y + (side - 1 if sc < 0 else 0)
            table[i] = rr * side + cc + 1
        tables.append((tuple(table), sc, swap))
    return tuple(tables)


def _is_minimal_square(cells, side: int) -> bool:
    """Early-exit minimality test on a square board of the given side.

    Equivalent to comparing against canonicalize, but works image by image:
    transforming the whole board maps the placement to a translate of the
    normalized image, so each image is a cell permutation followed by a
    constant index shift.  An image whose normalized start cell differs from
    cells[0] settles in O(1); the full rotation comparison only runs on ties.
    Runs once per closed sequence the engines construct.
    """
    k = len(cells)
    # Reversal from the same start is always a candidate.
    if cells[1] > cells[-1]:
        return False
    first = cells[0]
    min_col = side
    max_col = -1
    for i in cells:
        c = (i - 1) % side
        if c < min_col:
            min_col = c
        if c > max_col:
            max_col = c
    min_row = (min(cells) - 1) // side
    max_row = (max(cells) - 1) // side
    for table, sc, swap in _board_transform_tables(side):
        image = [table[i] for i in cells]
        m = min(image)
        lo, hi = (min_row, max_row) if swap else (min_col, max_col)
        image_min_col = lo if sc > 0 else side - 1 - hi
        shift = ((m - 1) // side) * side + image_min_col
        start = m - shift
        if start > first:
            continue
        if start < first:
            return False
        j = image.index(m)
        for step in (1, -1):
            for off in range(k):
                a = image[(j + step * off) % k] - shift
                b = cells[off]
                if a != b:
                    if a < b:
                        return False
                    break
    return True
