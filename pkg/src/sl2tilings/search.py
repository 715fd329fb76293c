"""Exhaustive search for fully-wild periodic blocks over Z/NZ.

A candidate h x w block is read as a doubly periodic tiling (indices wrapped
mod h and mod w).  It is accepted when every wrapped 2x2 determinant is 1
and every wrapped centered 3x3 determinant is nonzero.

The DFS chooses row 0 and column 0 freely and derives each interior cell
from the determinant constraint of the 2x2 window above-left of it, which is
a linear congruence with gcd-many solutions.  Wrapped windows are checked as
soon as their last cell is placed.  Solutions are canonicalized by torus
translation and reported in lexicographic order.

A brute-force oracle enumerates every block with numpy for cross-checking.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import UnsupportedOperationError, ValidationError
from .matrices import CongruenceSolutions, solve_linear_congruence

ORACLE_STATE_GUARD = 1 << 28

Block = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SearchConfig:
    modulus: int
    rows: int = 4
    cols: int = 4
    prune_nonunits: bool = False
    node_budget: int | None = None
    worker_count: int = 1

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValidationError(f"modulus must be at least 2, got {self.modulus}")
        if self.rows < 2 or self.cols < 2:
            raise ValidationError("block shape must be at least 2x2")
        if self.node_budget is not None and self.node_budget < 1:
            raise ValidationError("node budget must be positive")
        if self.worker_count < 1:
            raise ValidationError("worker count must be positive")


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    solutions: int
    elapsed: float
    budget_exhausted: bool


@dataclass(frozen=True)
class SearchResult:
    solutions: tuple[Block, ...]
    stats: SearchStats


def propagate_cell(nw: int, ne: int, sw: int, modulus: int) -> CongruenceSolutions:
    """Admissible southeast cells x of a 2x2 window: nw*x = 1 + ne*sw."""
    return solve_linear_congruence(nw, 1 + ne * sw, modulus)


def block_is_sl2(block: Block, modulus: int) -> bool:
    """Every wrapped 2x2 determinant equals 1."""
    h = len(block)
    w = len(block[0])
    for i in range(h):
        for j in range(w):
            a = block[i][j]
            b = block[i][(j + 1) % w]
            c = block[(i + 1) % h][j]
            d = block[(i + 1) % h][(j + 1) % w]
            if (a * d - b * c) % modulus != 1:
                return False
    return True


def _wrapped_det3(block: Block, i: int, j: int, modulus: int) -> int:
    h = len(block)
    w = len(block[0])
    r = [
        [block[(i + di) % h][(j + dj) % w] for dj in (-1, 0, 1)]
        for di in (-1, 0, 1)
    ]
    (a, b, c), (d, e, f), (g, hh, ii) = r
    return (a * (e * ii - f * hh) - b * (d * ii - f * g) + c * (d * hh - e * g)) % modulus


def block_is_fully_wild(block: Block, modulus: int) -> bool:
    """Every wrapped centered 3x3 determinant is nonzero."""
    h = len(block)
    w = len(block[0])
    return all(
        _wrapped_det3(block, i, j, modulus) != 0 for i in range(h) for j in range(w)
    )


def canonical_block(block: Block) -> Block:
    """Minimum of the block over all torus translations."""
    h = len(block)
    w = len(block[0])
    best = None
    for di in range(h):
        for dj in range(w):
            shifted = tuple(
                tuple(block[(i + di) % h][(j + dj) % w] for j in range(w))
                for i in range(h)
            )
            if best is None or shifted < best:
                best = shifted
    return best


def _nonunits(modulus: int) -> list[int]:
    return [x for x in range(modulus) if gcd(x, modulus) != 1]


class _BudgetExhausted(Exception):
    pass


class _Dfs:
    def __init__(self, modulus, h, w, first_domain, free_domain, budget):
        self.n = modulus
        self.h = h
        self.w = w
        self.first_domain = first_domain
        self.free_domain = free_domain
        self.budget = budget
        self.block = [[0] * w for _ in range(h)]
        self.solutions: set[Block] = set()
        self.nodes = 0
        self.exhausted = False

    def run(self):
        try:
            self._fill(0)
        except _BudgetExhausted:
            self.exhausted = True
        return self

    def _wraps_ok(self, i: int, j: int) -> bool:
        n, b = self.n, self.block
        h, w = self.h, self.w
        if j == w - 1 and i >= 1:
            if (b[i - 1][w - 1] * b[i][0] - b[i - 1][0] * b[i][w - 1]) % n != 1:
                return False
        if i == h - 1 and j >= 1:
            if (b[h - 1][j - 1] * b[0][j] - b[h - 1][j] * b[0][j - 1]) % n != 1:
                return False
        if i == h - 1 and j == w - 1:
            if (b[h - 1][w - 1] * b[0][0] - b[h - 1][0] * b[0][w - 1]) % n != 1:
                return False
        return True

    def _fill(self, pos: int) -> None:
        if pos == self.h * self.w:
            block = tuple(tuple(row) for row in self.block)
            if block_is_fully_wild(block, self.n):
                self.solutions.add(canonical_block(block))
            return
        i, j = divmod(pos, self.w)
        if i == 0 and j == 0:
            candidates = self.first_domain
        elif i == 0 or j == 0:
            candidates = self.free_domain
        else:
            b = self.block
            candidates = propagate_cell(
                b[i - 1][j - 1], b[i - 1][j], b[i][j - 1], self.n
            ).values()
        for x in candidates:
            if self.budget is not None and self.nodes >= self.budget:
                raise _BudgetExhausted
            self.nodes += 1
            self.block[i][j] = x
            if self._wraps_ok(i, j):
                self._fill(pos + 1)


def _search_partition(args) -> tuple[tuple[Block, ...], int, bool]:
    modulus, h, w, first_domain, free_domain, budget = args
    dfs = _Dfs(modulus, h, w, first_domain, free_domain, budget).run()
    return tuple(sorted(dfs.solutions)), dfs.nodes, dfs.exhausted


def search_fully_wild(config: SearchConfig) -> SearchResult:
    start = time.perf_counter()
    domain = (
        _nonunits(config.modulus) if config.prune_nonunits else list(range(config.modulus))
    )
    workers = config.worker_count
    if workers == 1:
        parts = [(config.modulus, config.rows, config.cols, domain, domain, config.node_budget)]
        outcomes = [_search_partition(parts[0])]
    else:
        groups = [domain[k::workers] for k in range(workers)]
        groups = [g for g in groups if g]
        budget = config.node_budget
        per_worker = None if budget is None else -(-budget // len(groups))
        parts = [
            (config.modulus, config.rows, config.cols, g, domain, per_worker)
            for g in groups
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_search_partition, parts))
    merged: set[Block] = set()
    nodes = 0
    exhausted = False
    for sols, n, ex in outcomes:
        merged.update(sols)
        nodes += n
        exhausted = exhausted or ex
    solutions = tuple(sorted(merged))
    elapsed = time.perf_counter() - start
    return SearchResult(solutions, SearchStats(nodes, len(solutions), elapsed, exhausted))


def brute_force_oracle(
    modulus: int, rows: int = 4, cols: int = 4, allow_large: bool = False
) -> SearchResult:
    """Enumerate all modulus^(rows*cols) blocks and filter.

    Guarded at 2^28 states; pass ``allow_large`` to override.
    """
    if modulus < 2 or rows < 2 or cols < 2:
        raise ValidationError("need modulus >= 2 and a block of at least 2x2")
    cells = rows * cols
    total = modulus ** cells
    if total > ORACLE_STATE_GUARD and not allow_large:
        raise UnsupportedOperationError(
            f"{modulus}^{cells} = {total} states exceeds the 2^28 oracle guard; "
            "pass allow_large to override"
        )
    start = time.perf_counter()
    windows = []
    for i in range(rows):
        for j in range(cols):
            windows.append(
                (
                    i * cols + j,
                    i * cols + (j + 1) % cols,
                    ((i + 1) % rows) * cols + j,
                    ((i + 1) % rows) * cols + (j + 1) % cols,
                )
            )
    powers = np.array([modulus**k for k in range(cells)], dtype=np.int64)
    survivors: list[int] = []
    chunk = 1 << 20
    for base in range(0, total, chunk):
        ids = np.arange(base, min(base + chunk, total), dtype=np.int64)
        digits = ((ids[:, None] // powers[None, :]) % modulus).astype(np.int32)
        for a, b, c, d in windows:
            keep = (
                digits[:, a] * digits[:, d] - digits[:, b] * digits[:, c] - 1
            ) % modulus == 0
            ids = ids[keep]
            digits = digits[keep]
            if ids.size == 0:
                break
        survivors.extend(int(x) for x in ids)
    merged: set[Block] = set()
    for ident in survivors:
        flat = [(ident // modulus**k) % modulus for k in range(cells)]
        block = tuple(tuple(flat[i * cols : (i + 1) * cols]) for i in range(rows))
        if block_is_fully_wild(block, modulus):
            merged.add(canonical_block(block))
    solutions = tuple(sorted(merged))
    elapsed = time.perf_counter() - start
    return SearchResult(solutions, SearchStats(total, len(solutions), elapsed, False))
