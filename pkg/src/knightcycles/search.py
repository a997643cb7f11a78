"""The two construction engines and the parallel driver.

Both engines enumerate, for each admissible start cell s, closed knight
sequences that begin at s and never visit a cell numbered below s, and keep
exactly those whose sequence is the canonical form of its equivalence class.
Dropping sub-s cells is safe: a completed sequence through a smaller cell can
always be rotated to start there, which is lexicographically smaller, so such
sequences are never canonical.

The exhaustive engine extends one path cell by cell.  The assembly engine
builds all half-length paths from s to every possible opposite cell t and
glues disjoint pairs; each closed sequence arises from exactly one ordered
pair of halves, so canonical filtering again counts every class exactly once,
with no memory of previously found solutions in either engine.
"""

from __future__ import annotations

import heapq
import os
import tempfile
import time
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from multiprocessing import Pool

from .board import BoardSpec, adjacency
from .cycles import _is_minimal_square
from .geometry import crossing_table

UNREACHED = 255


@dataclass(frozen=True)
class StartSet:
    """Start cells {1..k/2+1}: the first cell of a canonical sequence of
    length k always lies in this prefix of the top row."""

    k: int
    cells: tuple[int, ...]


@dataclass(frozen=True)
class EnumerationOptions:
    simple_filter: bool = False
    # Forward only non-self-intersecting cycles to the sink (needs simple_filter).
    emit_only_simple: bool = False
    # Cap on half paths held in memory for one (s, t) pair.
    half_path_budget: int | None = None


@dataclass
class EnumerationSummary:
    k: int
    algorithm: str
    total: int
    simple: int | None
    per_start: dict[int, int]
    elapsed: float


class HalfPathBudgetError(RuntimeError):
    """Half-path storage for one (s, t) pair exceeded the configured budget."""

    def __init__(self, s: int, t: int, limit: int):
        super().__init__(
            f"more than {limit} half paths for start={s} end={t}; "
            f"raise the budget or use the dfs engine")
        self.s = s
        self.t = t
        self.limit = limit

    def __reduce__(self):
        return (type(self), (self.s, self.t, self.limit))


def _check_length(k: int) -> None:
    if k % 2 != 0 or k < 4:
        raise ValueError(f"cycle length must be an even number >= 4, got {k}")


def start_set(k: int) -> StartSet:
    _check_length(k)
    return StartSet(k, tuple(range(1, k // 2 + 2)))


@lru_cache(maxsize=64)
def _filtered_adjacency(board: BoardSpec, s: int) -> tuple[tuple[int, ...], ...]:
    """Adjacency restricted to cells >= s (the canonical-start prune)."""
    return tuple(tuple(v for v in nbrs if v >= s) for nbrs in adjacency(board))


def _distances(adj: list[tuple[int, ...]], sources, size: int) -> list[int]:
    """BFS move counts to the nearest source, over the filtered adjacency."""
    dist = [UNREACHED] * (size + 1)
    queue = deque()
    for c in sources:
        dist[c] = 0
        queue.append(c)
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] == UNREACHED:
                dist[v] = du
                queue.append(v)
    return dist


def _col0_cells(board: BoardSpec, s: int) -> list[int]:
    return [c for c in range(1, board.size + 1, board.width) if c >= s]


def _dfs_one_start(board: BoardSpec, k: int, s: int, options: EnumerationOptions,
                   sink, collect: bool):
    """Exhaustive backtracking from one start cell.

    Two sound cuts beyond the >= s rule: a partial path is dropped when the
    closing cell is no longer reachable in the remaining moves, or when the
    leftmost column can no longer be visited (a canonical placement always
    touches column 0, so such paths cannot produce a canonical sequence).
    """
    side = board.width
    adj_s = _filtered_adjacency(board, s)
    dist_s = _distances(adj_s, (s,), board.size)
    dist_col0 = _distances(adj_s, _col0_cells(board, s), board.size)
    table = crossing_table(board) if options.simple_filter else None

    count = 0
    simple = 0
    emitted: list[tuple[int, ...]] | None = [] if collect else None
    visited = bytearray(board.size + 1)
    visited[s] = 1
    path = [s]

    def extend(u: int, depth: int, col0_seen: bool) -> None:
        nonlocal count, simple
        if depth == k:
            if dist_s[u] == 1 and _is_minimal_square(path, side):
                count += 1
                keep = True
                if table is not None:
                    if table.is_simple_cells(path):
                        simple += 1
                    elif options.emit_only_simple:
                        keep = False
                if keep and (sink is not None or emitted is not None):
                    cycle = tuple(path)
                    if sink is not None:
                        sink(cycle)
                    if emitted is not None:
                        emitted.append(cycle)
            return
        remaining = k - depth
        for v in adj_s[u]:
            if not visited[v] and dist_s[v] <= remaining and (
                col0_seen or dist_col0[v] < remaining or v % side == 1
            ):
                visited[v] = 1
                path.append(v)
                extend(v, depth + 1, col0_seen or v % side == 1)
                path.pop()
                visited[v] = 0

    extend(s, 1, s % side == 1)
    return count, simple, emitted


def _half_paths_raw(board: BoardSpec, k: int, s: int, t: int,
                    budget: int | None):
    """All simple knight paths s -> t of exactly k/2 edges over cells >= s,
    as (cells, visited-bitmask) pairs in ascending path order.  t is never
    used as an interior cell."""
    m = k // 2
    adj_s = _filtered_adjacency(board, s)
    dist_t = _distances(adj_s, (t,), board.size)
    if dist_t[s] > m:
        return []
    out: list[tuple[tuple[int, ...], int]] = []
    visited = bytearray(board.size + 1)
    visited[s] = 1
    visited[t] = 1
    path = [s]

    def extend(u: int, edges_left: int, mask: int) -> None:
        if edges_left == 1:
            if dist_t[u] == 1:
                path.append(t)
                out.append((tuple(path), mask | (1 << t)))
                path.pop()
                if budget is not None and len(out) > budget:
                    raise HalfPathBudgetError(s, t, budget)
            return
        for v in adj_s[u]:
            if not visited[v] and dist_t[v] < edges_left:
                visited[v] = 1
                path.append(v)
                extend(v, edges_left - 1, mask | (1 << v))
                path.pop()
                visited[v] = 0

    extend(s, m, 1 << s)
    return out


@dataclass(frozen=True)
class HalfPath:
    """An open s -> t path of k/2 knight moves, the assembly building block."""

    cells: tuple[int, ...]
    visited: frozenset[int]
    board: BoardSpec

    @property
    def start(self) -> int:
        return self.cells[0]

    @property
    def end(self) -> int:
        return self.cells[-1]


def half_paths(s: int, t: int, k: int, board: BoardSpec) -> list[HalfPath]:
    """All connecting s -> t paths of length k/2 whose cells are all >= s,
    in deterministic (ascending) order.  Empty when none exist."""
    _check_length(k)
    raw = _half_paths_raw(board, k, s, t, budget=None)
    return [HalfPath(cells, frozenset(cells), board) for cells, _ in raw]


def assemble(a: HalfPath, b: HalfPath):
    """Glue two halves with the same endpoints into a closed cycle: a's cells
    followed by b's interior reversed.  None when their interiors collide."""
    if a.cells[0] != b.cells[0] or a.cells[-1] != b.cells[-1]:
        raise ValueError(
            f"halves do not share endpoints: {a.cells[0]}->{a.cells[-1]} "
            f"vs {b.cells[0]}->{b.cells[-1]}")
    if a.visited & b.visited != {a.cells[0], a.cells[-1]}:
        return None
    from .cycles import CycleSeq
    return CycleSeq(a.cells + b.cells[-2:0:-1], a.board)


def _mitm_one_pair(board: BoardSpec, k: int, s: int, t: int,
                   options: EnumerationOptions, sink, collect: bool):
    """Assemble and filter all cycles with start s and opposite cell t."""
    side = board.width
    halves = _half_paths_raw(board, k, s, t, options.half_path_budget)
    count = 0
    simple = 0
    emitted: list[tuple[int, ...]] | None = [] if collect else None
    if len(halves) < 2:
        return count, simple, emitted
    table = crossing_table(board) if options.simple_filter else None
    col0_mask = 0
    for c in _col0_cells(board, s):
        col0_mask |= 1 << c
    base = (1 << s) | (1 << t)
    n = len(halves)
    # Halves are in ascending order, so runs of equal second cell are
    # contiguous; a glued sequence reads a's second cell at position 1 and
    # b's at position k-1, and only pairs with the former smaller can be
    # canonical, so b always comes from a strictly later run.
    run_start: list[int] = []
    prev = None
    for i, (cells, _) in enumerate(halves):
        if cells[1] != prev:
            run_start.append(i)
            prev = cells[1]
    run_start.append(n)
    run_index = 0
    for i, (a_cells, a_mask) in enumerate(halves):
        if i == run_start[run_index + 1]:
            run_index += 1
        for j in range(run_start[run_index + 1], n):
            b_cells, b_mask = halves[j]
            if a_mask & b_mask != base:
                continue
            if not ((a_mask | b_mask) & col0_mask):
                continue
            seq = a_cells + b_cells[-2:0:-1]
            if _is_minimal_square(seq, side):
                count += 1
                keep = True
                if table is not None:
                    if table.is_simple_cells(seq):
                        simple += 1
                    elif options.emit_only_simple:
                        keep = False
                if keep:
                    if sink is not None:
                        sink(seq)
                    if emitted is not None:
                        emitted.append(seq)
    return count, simple, emitted


def _mitm_pairs_for_start(board: BoardSpec, k: int, s: int):
    """Opposite cells worth trying for start s: reachable in at most k/2
    moves of matching parity, above s.  Pure pre-filter; the half-path
    search is exact regardless."""
    adj_s = _filtered_adjacency(board, s)
    dist_s = _distances(adj_s, (s,), board.size)
    m = k // 2
    return [t for t in range(s + 1, board.size + 1)
            if dist_s[t] <= m and (dist_s[t] - m) % 2 == 0]


def enumerate_dfs(k: int, sink=None, options: EnumerationOptions | None = None,
                  ) -> EnumerationSummary:
    """Count (and optionally emit) every nonequivalent cycle of length k by
    exhaustive backtracking."""
    _check_length(k)
    options = options or EnumerationOptions()
    board = BoardSpec.for_cycle_length(k)
    started = time.perf_counter()
    per_start: dict[int, int] = {}
    total = 0
    simple = 0
    for s in start_set(k).cells:
        c, sc, _ = _dfs_one_start(board, k, s, options, sink, collect=False)
        per_start[s] = c
        total += c
        simple += sc
    return EnumerationSummary(
        k=k, algorithm="dfs", total=total,
        simple=simple if options.simple_filter else None,
        per_start=per_start, elapsed=time.perf_counter() - started)


def enumerate_mitm(k: int, sink=None, options: EnumerationOptions | None = None,
                   ) -> EnumerationSummary:
    """Count (and optionally emit) every nonequivalent cycle of length k by
    meet-in-the-middle half-path assembly."""
    _check_length(k)
    options = options or EnumerationOptions()
    board = BoardSpec.for_cycle_length(k)
    started = time.perf_counter()
    per_start: dict[int, int] = {}
    total = 0
    simple = 0
    for s in start_set(k).cells:
        c_start = 0
        for t in _mitm_pairs_for_start(board, k, s):
            c, sc, _ = _mitm_one_pair(board, k, s, t, options, sink, collect=False)
            c_start += c
            simple += sc
        per_start[s] = c_start
        total += c_start
    return EnumerationSummary(
        k=k, algorithm="mitm", total=total,
        simple=simple if options.simple_filter else None,
        per_start=per_start, elapsed=time.perf_counter() - started)


def _run_shard(args):
    """Worker entry: one start cell (dfs) or one (s, t) pair (mitm).
    Emissions, when requested, go to a sorted shard file."""
    algorithm, k, shard, options, shard_dir = args
    board = BoardSpec.for_cycle_length(k)
    collect = shard_dir is not None
    if algorithm == "dfs":
        (s,) = shard
        count, simple, emitted = _dfs_one_start(board, k, s, options, None, collect)
    else:
        s, t = shard
        count, simple, emitted = _mitm_one_pair(board, k, s, t, options, None, collect)
    shard_file = None
    if collect:
        shard_file = os.path.join(
            shard_dir, f"{algorithm}-{'-'.join(map(str, shard))}.shard")
        with open(shard_file, "w") as fh:
            for seq in sorted(emitted):
                fh.write(" ".join(map(str, seq)))
                fh.write("\n")
    return shard, count, simple, shard_file


def _read_shard(path: str):
    with open(path) as fh:
        for line in fh:
            yield tuple(int(x) for x in line.split())


def enumerate_cycles(k: int, algorithm: str = "dfs", *,
                     simple_filter: bool = False, emit_only_simple: bool = False,
                     jobs: int = 1, sink=None,
                     half_path_budget: int | None = None) -> EnumerationSummary:
    """Driver over both engines with optional parallel sharding.

    Work is partitioned by start cell (dfs) or by (s, t) pair (mitm); shard
    results only ever reach the caller through order-independent merging, so
    the summary and the sink stream are identical for every jobs value.  The
    sink, when given, receives canonical sequences in ascending order.
    """
    _check_length(k)
    if algorithm not in ("dfs", "mitm"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    if emit_only_simple and not simple_filter:
        raise ValueError("emit_only_simple requires simple_filter")
    options = EnumerationOptions(
        simple_filter=simple_filter, emit_only_simple=emit_only_simple,
        half_path_budget=half_path_budget)

    engine = enumerate_dfs if algorithm == "dfs" else enumerate_mitm
    if jobs == 1:
        if sink is None:
            return engine(k, None, options)
        buffer: list[tuple[int, ...]] = []
        summary = engine(k, buffer.append, options)
        for seq in sorted(buffer):
            sink(seq)
        return summary

    board = BoardSpec.for_cycle_length(k)
    started = time.perf_counter()
    if algorithm == "dfs":
        shards = [(s,) for s in start_set(k).cells]
    else:
        shards = [(s, t) for s in start_set(k).cells
                  for t in _mitm_pairs_for_start(board, k, s)]
    per_start = {s: 0 for s in start_set(k).cells}
    total = 0
    simple = 0
    with tempfile.TemporaryDirectory(prefix="knightcycles-") as tmp:
        shard_dir = tmp if sink is not None else None
        args = [(algorithm, k, shard, options, shard_dir) for shard in shards]
        shard_files = []
        with Pool(processes=min(jobs, len(args))) as pool:
            for shard, count, sc, shard_file in pool.imap_unordered(_run_shard, args):
                per_start[shard[0]] += count
                total += count
                simple += sc
                if shard_file is not None:
                    shard_files.append(shard_file)
        if sink is not None:
            for seq in heapq.merge(*(_read_shard(p) for p in sorted(shard_files))):
                sink(seq)
    return EnumerationSummary(
        k=k, algorithm=algorithm, total=total,
        simple=simple if simple_filter else None,
        per_start=per_start, elapsed=time.perf_counter() - started)
