"""Edit distance, LCS, edit scripts, and the seeded insertion/deletion channel.

Strings are sequences of symbols (ints, or anything numpy can compare);
everything is converted to int64 arrays internally.  Only insertions and
deletions are modeled: a substitution is a deletion followed by an insertion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import UsageError

Symbols = Union[Sequence[int], np.ndarray, str]


def _as_array(x: Symbols) -> np.ndarray:
    if isinstance(x, str):
        return np.array([ord(c) for c in x], dtype=np.int64)
    return np.asarray(x, dtype=np.int64)


def _lcs_table(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Full (len(x)+1) x (len(y)+1) LCS length table, rows vectorized."""
    nx, ny = len(x), len(y)
    L = np.zeros((nx + 1, ny + 1), dtype=np.int64)
    for i in range(1, nx + 1):
        eq = (y == x[i - 1]).astype(np.int64)
        # L[i][j] = max(cand_j, L[i][j-1]) with cand from the previous row,
        # which a running maximum turns into one accumulate pass
        cand = np.maximum(L[i - 1, 1:], L[i - 1, :-1] + eq)
        L[i, 1:] = np.maximum.accumulate(cand)
    return L


def lcs(x: Symbols, y: Symbols) -> tuple[int, list[tuple[int, int]]]:
    """LCS length and one maximal monotone alignment (0-based index pairs).

    The alignment pairs positions of equal symbols; ties in the traceback
    prefer stepping in x, making the result deterministic.
    """
    xa, ya = _as_array(x), _as_array(y)
    L = _lcs_table(xa, ya)
    pairs = []
    i, j = len(xa), len(ya)
    while i > 0 and j > 0:
        if xa[i - 1] == ya[j - 1] and L[i, j] == L[i - 1, j - 1] + 1:
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif L[i - 1, j] >= L[i, j - 1]:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return int(L[len(xa), len(ya)]), pairs


def lcs_length(x: Symbols, y: Symbols) -> int:
    xa, ya = _as_array(x), _as_array(y)
    if len(xa) == 0 or len(ya) == 0:
        return 0
    # two-row variant of _lcs_table; no traceback needed
    prev = np.zeros(len(ya) + 1, dtype=np.int64)
    for xi in xa:
        eq = (ya == xi).astype(np.int64)
        cand = np.maximum(prev[1:], prev[:-1] + eq)
        cur = np.maximum.accumulate(cand)
        prev[1:] = cur
    return int(prev[-1])


@dataclass(frozen=True)
class EditScript:
    """Ordered insert/delete operations transforming a source into a target.

    ops entries are ("del", pos) or ("ins", pos, symbol); positions refer to
    the current string as the script is applied left to right.
    """

    ops: tuple

    def __len__(self) -> int:
        return len(self.ops)

    def apply(self, x: Symbols) -> np.ndarray:
        cur = list(_as_array(x))
        for op in self.ops:
            if op[0] == "del":
                del cur[op[1]]
            else:
                cur.insert(op[1], op[2])
        return np.array(cur, dtype=np.int64)


def edit_distance(x: Symbols, y: Symbols) -> tuple[int, EditScript]:
    """Insertion/deletion edit distance with a realizing script.

    Always equals |x| + |y| - 2*LCS(x, y).  The script deletes the non-aligned
    symbols of x (right to left) and then inserts the non-aligned symbols of y.
    """
    xa, ya = _as_array(x), _as_array(y)
    length, pairs = lcs(xa, ya)
    keep_x = {i for i, _ in pairs}
    keep_y = {j for _, j in pairs}
    ops = [("del", i) for i in range(len(xa) - 1, -1, -1) if i not in keep_x]
    ops.extend(("ins", j, int(ya[j])) for j in range(len(ya)) if j not in keep_y)
    dist = len(xa) + len(ya) - 2 * length
    return dist, EditScript(tuple(ops))


def edit_distance_only(x: Symbols, y: Symbols) -> int:
    xa, ya = _as_array(x), _as_array(y)
    return len(xa) + len(ya) - 2 * lcs_length(xa, ya)


def insdel_channel(z: Symbols, n_ins: int, n_del: int, seed,
                   alphabet: int) -> np.ndarray:
    """Apply n_del uniform deletions then n_ins uniform insertions.

    Inserted symbols are uniform over range(alphabet).  Deterministic per
    seed; the output has length |z| + n_ins - n_del and edit distance at
    most n_ins + n_del from z.
    """
    za = _as_array(z)
    if n_del > len(za):
        raise UsageError(f"cannot delete {n_del} symbols from length {len(za)}")
    if n_ins < 0 or n_del < 0:
        raise UsageError("insertion/deletion counts must be non-negative")
    rng = np.random.default_rng(seed)
    if n_del:
        drop = rng.choice(len(za), size=n_del, replace=False)
        za = np.delete(za, drop)
    for _ in range(n_ins):
        pos = int(rng.integers(0, len(za) + 1))
        sym = int(rng.integers(0, alphabet))
        za = np.insert(za, pos, sym)
    return za


def min_pairwise_edit_distance(codewords: Sequence[Symbols]) -> int:
    """Exact minimum edit distance over all distinct pairs."""
    if len(codewords) < 2:
        raise UsageError("need at least 2 codewords")
    arrays = [_as_array(c) for c in codewords]
    best = None
    for i in range(len(arrays)):
        for j in range(i + 1, len(arrays)):
            d = len(arrays[i]) + len(arrays[j]) - 2 * lcs_length(arrays[i], arrays[j])
            if best is None or d < best:
                best = d
                if best == 0:
                    return 0
    return best
