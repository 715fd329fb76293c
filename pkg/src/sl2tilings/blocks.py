"""Equivalence classes of n x n blocks of the wildest tiling and their ranks.

Two blocks are equivalent when one maps to the other by a square symmetry
(rotation or reflection), a sign change of the +-1 background entries, and a
relabeling of the parameters.  Because the tiling's own translations realize
sign changes along alternating rows or columns (shifting the 4-periodic
background by two negates it), the sign-change part of the group is the 8
alternating patterns (-1)^(alpha*i + beta*j + gamma), not just the global
flip.  Parameters are never negated: they stand for arbitrary nonzero values.

Canonical encodings serialize a block row-major with tokens 0 / + / - / pK,
renaming parameters in first-occurrence order, and take the minimum over the
64 transforms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import StructuralError, UnsupportedOperationError, ValidationError
from .matrices import Matrix, bareiss_rank
from .rings import INTEGERS, RingValue, poly_eval
from .tiling import Patched, TilingModel, Window, extract_window

MAX_CLASS_DIM = 12
MAX_SYMBOLIC_DIM = 9

_ZERO = "0"
_PLUS = "+"
_MINUS = "-"


def _cell_token(v: RingValue) -> object:
    var = v.single_variable()
    if var is not None:
        return ("p", var)
    c = v.constant_value()
    if c == 0:
        return _ZERO
    if c == 1:
        return _PLUS
    if c == -1:
        return _MINUS
    raise StructuralError(f"entry {v} is outside the 0 / +1 / -1 / parameter alphabet")


def _dihedral_images(grid: list[list[object]]) -> list[list[list[object]]]:
    n = len(grid)
    idx = range(n)

    def build(f):
        return [[grid[f(r, c)[0]][f(r, c)[1]] for c in idx] for r in idx]

    return [
        build(lambda r, c: (r, c)),
        build(lambda r, c: (n - 1 - c, r)),
        build(lambda r, c: (n - 1 - r, n - 1 - c)),
        build(lambda r, c: (c, n - 1 - r)),
        build(lambda r, c: (c, r)),
        build(lambda r, c: (n - 1 - c, n - 1 - r)),
        build(lambda r, c: (r, n - 1 - c)),
        build(lambda r, c: (n - 1 - r, c)),
    ]


def _serialize(grid: list[list[object]], alpha: int, beta: int, gamma: int) -> str:
    rename: dict[int, int] = {}
    out = []
    for r, row in enumerate(grid):
        for c, tok in enumerate(row):
            if isinstance(tok, tuple):
                var = tok[1]
                if var not in rename:
                    rename[var] = len(rename) + 1
                out.append(f"p{rename[var]}")
            elif tok is _ZERO:
                out.append(_ZERO)
            elif (alpha * r + beta * c + gamma) % 2:
                out.append(_MINUS if tok is _PLUS else _PLUS)
            else:
                out.append(tok)
    return " ".join(out)


def canonical_block_form(win: Window) -> str:
    """Minimal serialization of a square block over its symmetry group."""
    if win.rows != win.cols:
        raise StructuralError(f"block must be square, got {win.rows}x{win.cols}")
    grid = [[_cell_token(win.at(r, c)) for c in range(win.cols)] for r in range(win.rows)]
    best = None
    for image in _dihedral_images(grid):
        for alpha in (0, 1):
            for beta in (0, 1):
                for gamma in (0, 1):
                    s = _serialize(image, alpha, beta, gamma)
                    if best is None or s < best:
                        best = s
    return best


@dataclass(frozen=True)
class BlockClass:
    """An equivalence class of n x n blocks.

    ``orbit_size`` counts how many of the m corner translates fall in the
    class, so orbit sizes over all classes sum to m.
    """

    encoding: str
    representative: Window
    orbit_size: int


def _require_formal_patched(t: TilingModel) -> Patched:
    if not isinstance(t, Patched) or not t.is_formal():
        raise StructuralError("block classes are defined for formal patched tilings")
    return t


def enumerate_block_classes(t: TilingModel, n: int) -> tuple[BlockClass, ...]:
    """Classes of all n x n blocks, sorted by encoding.

    The corner windows at (0, k) for k = 0..m-1 exhaust every block up to
    translation: translating by (1, -3) preserves the pattern exactly and
    translating by (0, m) composes it with a background sign flip, both of
    which the encoding quotients out.
    """
    if not 1 <= n <= MAX_CLASS_DIM:
        raise ValidationError(f"block size must be in 1..{MAX_CLASS_DIM}, got {n}")
    return _corner_classes(t, n)


def _corner_classes(t: TilingModel, n: int) -> tuple[BlockClass, ...]:
    t = _require_formal_patched(t)
    if n < 1:
        raise ValidationError(f"block size must be positive, got {n}")
    by_encoding: dict[str, tuple[Window, int]] = {}
    for k in range(t.lattice.m):
        win = extract_window(t, 0, k, n, n)
        enc = canonical_block_form(win)
        if enc in by_encoding:
            rep, count = by_encoding[enc]
            by_encoding[enc] = (rep, count + 1)
        else:
            by_encoding[enc] = (win, 1)
    classes = [
        BlockClass(enc, rep, count) for enc, (rep, count) in by_encoding.items()
    ]
    classes.sort(key=lambda c: c.encoding)
    return tuple(classes)


@dataclass(frozen=True)
class RankEntry:
    block_class: BlockClass
    deficiency: int
    method: str


@dataclass(frozen=True)
class RankReport:
    n: int
    entries: tuple[RankEntry, ...]


def _symbolic_deficiency(win: Window) -> int:
    return win.rows - bareiss_rank(win.matrix)


def _probe_deficiency(win: Window, seed: int, trials: int) -> int:
    variables = sorted({v for r in range(win.rows) for c in range(win.cols)
                        for v in win.at(r, c).variables()})
    best = win.rows
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        values = rng.sample(range(2, 1 << 16), len(variables))
        assignment = {f"a{k}": x for k, x in zip(variables, values)}
        rows = []
        for r in range(win.rows):
            rows.append(
                [poly_eval(win.at(r, c), assignment).payload for c in range(win.cols)]
            )
        rank = bareiss_rank(Matrix.from_ints(INTEGERS, rows))
        best = min(best, win.rows - rank)
    return best


def rank_deficiency_report(
    t: TilingModel,
    n: int,
    mode: str = "symbolic",
    seed: int = 0,
    trials: int = 5,
    allow_large: bool = False,
) -> RankReport:
    """Rank deficiencies (n - rank) of the class representatives.

    Symbolic mode eliminates over the polynomial ring and is exact; it is
    guarded at n <= 9 unless ``allow_large`` is set.  Probe mode evaluates
    the parameters at distinct random integers in [2, 2^16) and reports the
    best deficiency over ``trials`` independent assignments; evaluation can
    only lower rank, so the result is an upper bound on the symbolic
    deficiency.
    """
    if mode not in ("symbolic", "probe", "both"):
        raise ValidationError(f"unknown rank mode {mode!r}")
    if mode in ("symbolic", "both") and n > MAX_SYMBOLIC_DIM and not allow_large:
        raise UnsupportedOperationError(
            f"symbolic rank is guarded at n <= {MAX_SYMBOLIC_DIM}; "
            "pass allow_large to override"
        )
    classes = _corner_classes(t, n)
    entries = []
    for cls in classes:
        if mode in ("symbolic", "both"):
            entries.append(RankEntry(cls, _symbolic_deficiency(cls.representative), "symbolic"))
        if mode in ("probe", "both"):
            entries.append(
                RankEntry(cls, _probe_deficiency(cls.representative, seed, trials), "evaluation-bound")
            )
    return RankReport(n, tuple(entries))
