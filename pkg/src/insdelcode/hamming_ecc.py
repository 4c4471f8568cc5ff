"""Linear block codes for Hamming errors: the inner codes of the insdel
constructions.

Provides Reed-Solomon codes with a Berlekamp-Welch errors-and-erasures
decoder, brute-force nearest-codeword decoding for tiny codes, uniformly
random generator matrices, the systematic left-block transform, and a
binary concatenated code (outer RS over GF(2^b), random inner code) for
callers that need a binary alphabet.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

import numpy as np

from . import linalg
from .errors import (CapacityError, DecodeFailure, ParameterError, UsageError)
from .gf import BinaryField, Field, field_from_json

BRUTE_FORCE_CAP = 1 << 20  # largest q^m a brute-force decode will scan
EXHAUSTIVE_CAP = 4096      # largest q^m for exact distance computation


def _poly_divmod(num: list[int], den: list[int], field: Field):
    """Divide coefficient lists (ascending powers) over field."""
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    dd = len(den) - 1
    lead_inv = field.inv(den[-1])
    quot = [0] * max(0, len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = field.mul(num[k], lead_inv)
        quot[k - dd] = c
        if c != 0:
            for j, dv in enumerate(den):
                num[k - dd + j] = field.sub(num[k - dd + j], field.mul(c, dv))
    while num and num[-1] == 0:
        num = num[:-1]
    while quot and quot[-1] == 0:
        quot = quot[:-1]
    return quot, num


def _poly_eval(coeffs: Sequence[int], x: int, field: Field) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


class LinearCode:
    """An (n, m, d) linear code given by a full-rank generator matrix.

    decoder strategies:
      "reed-solomon"        Berlekamp-Welch errors-and-erasures (needs
                            eval_points)
      "brute-force-nearest" scan all q^m codewords (q^m <= 2^20)
    """

    def __init__(self, field: Field, generator: linalg.Matrix, d: int,
                 strategy: str = "brute-force-nearest",
                 eval_points: Optional[list[int]] = None):
        m = len(generator)
        n = len(generator[0]) if m else 0
        if m < 1 or n < 1:
            raise UsageError("generator matrix must be non-empty")
        if m > n:
            raise ParameterError(f"message length {m} exceeds block length {n}")
        if d < 1 or d > n:
            raise ParameterError(f"designed distance {d} out of range for n={n}")
        if linalg.rank(generator, field) != m:
            raise ParameterError("generator matrix is not full rank")
        if strategy == "reed-solomon" and eval_points is None:
            raise UsageError("reed-solomon strategy requires eval_points")
        if strategy not in ("reed-solomon", "brute-force-nearest"):
            raise UsageError(f"unknown decoder strategy {strategy!r}")
        self.field = field
        self.generator = [list(map(int, row)) for row in generator]
        self.n = n
        self.m = m
        self.d = d
        self.kappa = (d - 1) // 2
        self.strategy = strategy
        self.eval_points = list(eval_points) if eval_points is not None else None

    # -- encoding ---------------------------------------------------------

    def encode(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.m:
            raise UsageError(f"message length {len(x)} != m={self.m}")
        return linalg.matvec([self.field.check(v) for v in x],
                             self.generator, self.field)

    def messages(self) -> Iterator[list[int]]:
        """All q^m messages in lexicographic order (small codes only)."""
        q = self.field.q
        if q ** self.m > EXHAUSTIVE_CAP:
            raise CapacityError(f"q^m = {q ** self.m} exceeds {EXHAUSTIVE_CAP}")
        msg = [0] * self.m
        while True:
            yield list(msg)
            k = self.m - 1
            while k >= 0 and msg[k] == q - 1:
                msg[k] = 0
                k -= 1
            if k < 0:
                return
            msg[k] += 1

    def codewords(self) -> Iterator[tuple[list[int], list[int]]]:
        for msg in self.messages():
            yield msg, self.encode(msg)

    def min_distance(self) -> int:
        """Exact minimum distance = minimum nonzero codeword weight."""
        best = self.n
        for msg, cw in self.codewords():
            if any(msg):
                w = sum(1 for v in cw if v != 0)
                best = min(best, w)
        return best

    # -- decoding ---------------------------------------------------------

    def decode(self, received: Sequence[int],
               erasures: Optional[Sequence[int]] = None) -> list[int]:
        """Recover the message from a corrupted codeword.

        Erasure positions are excluded from all distance counting; succeeds
        whenever 2*errors + erasures <= d - 1, raises DecodeFailure otherwise.
        """
        if len(received) != self.n:
            raise UsageError(f"received length {len(received)} != n={self.n}")
        era = sorted(set(int(e) for e in erasures)) if erasures else []
        if era and (era[0] < 0 or era[-1] >= self.n):
            raise UsageError("erasure position out of range")
        word = [self.field.check(v) for v in received]
        if self.strategy == "reed-solomon":
            return self._decode_bw(word, era)
        return self._decode_brute(word, era)

    def _check_radius(self, msg: list[int], received: list[int],
                      era: list[int]) -> Optional[list[int]]:
        cw = self.encode(msg)
        era_set = set(era)
        e = sum(1 for i in range(self.n)
                if i not in era_set and cw[i] != received[i])
        if 2 * e + len(era) <= self.d - 1:
            return msg
        return None

    def _codeword_table(self) -> np.ndarray:
        if getattr(self, "_cw_cache", None) is None:
            if self.field.q ** self.m > BRUTE_FORCE_CAP:
                raise CapacityError(
                    f"brute-force decode over q^m = {self.field.q ** self.m} "
                    "refused")
            rows = []
            q = self.field.q
            msg = [0] * self.m
            while True:
                rows.append(self.encode(msg))
                k = self.m - 1
                while k >= 0 and msg[k] == q - 1:
                    msg[k] = 0
                    k -= 1
                if k < 0:
                    break
                msg[k] += 1
            self._cw_cache = np.array(rows, dtype=np.int64)
        return self._cw_cache

    def _message_from_index(self, idx: int) -> list[int]:
        q = self.field.q
        digits = []
        for _ in range(self.m):
            digits.append(idx % q)
            idx //= q
        return digits[::-1]

    def _decode_brute(self, received: list[int], era: list[int]) -> list[int]:
        table = self._codeword_table()
        live = np.array([i for i in range(self.n) if i not in set(era)])
        word = np.asarray(received, dtype=np.int64)
        errs = (table[:, live] != word[live]).sum(axis=1) if live.size \
            else np.zeros(len(table), dtype=np.int64)
        best = int(errs.argmin())
        best_e = int(errs[best])
        if 2 * best_e + len(era) <= self.d - 1:
            return self._message_from_index(best)
        raise DecodeFailure(
            f"nearest codeword at {best_e} errors + {len(era)} erasures "
            f"is beyond radius (d={self.d})")

    def _decode_bw(self, received: list[int], era: list[int]) -> list[int]:
        """Berlekamp-Welch rational interpolation on the non-erased points."""
        field = self.field
        era_set = set(era)
        live = [i for i in range(self.n) if i not in era_set]
        if len(live) < self.m:
            raise DecodeFailure("too many erasures to interpolate")
        e_max = (len(live) - self.m) // 2
        nq = e_max + self.m   # number of Q coefficients
        ne = e_max + 1        # number of E coefficients
        rows = []
        for i in live:
            alpha = self.eval_points[i]
            powers = [1]
            for _ in range(max(nq, ne) - 1):
                powers.append(field.mul(powers[-1], alpha))
            yi = received[i]
            row = powers[:nq] + [field.neg(field.mul(yi, p)) for p in powers[:ne]]
            rows.append(row)
        u = linalg.nullspace_vector(rows, field)
        if u is None:
            raise DecodeFailure("Berlekamp-Welch system has no solution")
        q_coeffs, e_coeffs = u[:nq], u[nq:]
        if all(c == 0 for c in e_coeffs):
            raise DecodeFailure("degenerate error locator")
        f, rem = _poly_divmod(q_coeffs, e_coeffs, field)
        if rem:
            raise DecodeFailure("error locator does not divide interpolant")
        if len(f) > self.m:
            raise DecodeFailure("interpolated polynomial degree too high")
        msg = (f + [0] * self.m)[:self.m]
        result = self._check_radius(msg, received, era)
        if result is None:
            raise DecodeFailure("candidate codeword is beyond the radius")
        return result

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        out = {"field": self.field.to_json(), "n": self.n, "m": self.m,
               "d": self.d, "strategy": self.strategy,
               "generator": self.generator}
        if self.eval_points is not None:
            out["eval_points"] = self.eval_points
        return out

    @classmethod
    def from_json(cls, spec: dict) -> "LinearCode":
        return cls(field_from_json(spec["field"]), spec["generator"],
                   int(spec["d"]), spec.get("strategy", "brute-force-nearest"),
                   spec.get("eval_points"))


def rs_build(field: Field, n: int, m: int,
             eval_points: Optional[Sequence[int]] = None,
             strategy: str = "reed-solomon") -> LinearCode:
    """Reed-Solomon code: evaluate degree-<m polynomials at n distinct points.

    d = n - m + 1 (MDS); the generator is the Vandermonde matrix of the
    evaluation points, which default to the canonical elements 0..n-1.
    """
    if field.q < n:
        raise ParameterError(f"Reed-Solomon needs q >= n, got q={field.q} n={n}")
    if not 1 <= m <= n:
        raise ParameterError(f"need 1 <= m <= n, got m={m} n={n}")
    if eval_points is None:
        eval_points = list(range(n))
    else:
        eval_points = [field.check(p) for p in eval_points]
    if len(eval_points) != n or len(set(eval_points)) != n:
        raise UsageError("evaluation points must be n distinct elements")
    gen = []
    row = [1] * n
    for i in range(m):
        if i > 0:
            row = [field.mul(r, p) for r, p in zip(row, eval_points)]
        gen.append(list(row))
    return LinearCode(field, gen, n - m + 1, strategy, list(eval_points))


def random_generator(field: Field, m: int, n: int, seed) -> linalg.Matrix:
    """m x n matrix with i.i.d. uniform entries; deterministic per seed."""
    if m < 1 or n < 1:
        raise UsageError(f"matrix dimensions must be positive, got {m}x{n}")
    rng = np.random.default_rng(seed)
    if field.q <= 1 << 62:
        return [[int(v) for v in row]
                for row in rng.integers(0, field.q, size=(m, n), dtype=np.int64)]
    return [[field.sample(rng) for _ in range(n)] for _ in range(m)]


def random_linear_code(field: Field, m: int, n: int, seed,
                       max_attempts: int = 64) -> LinearCode:
    """Full-rank random code with its exact minimum distance computed.

    Resamples (seed, attempt) until the generator has rank m; requires
    q^m <= 4096 for the distance computation.
    """
    if field.q ** m > EXHAUSTIVE_CAP:
        raise CapacityError(f"q^m = {field.q ** m} exceeds {EXHAUSTIVE_CAP}")
    for attempt in range(max_attempts):
        gen = random_generator(field, m, n, [seed, attempt])
        if linalg.rank(gen, field) == m:
            code = LinearCode(field, gen, 1, "brute-force-nearest")
            dist = code.min_distance()
            return LinearCode(field, gen, dist, "brute-force-nearest")
    raise ParameterError(f"no full-rank generator found in {max_attempts} attempts")


def systematic_transform(generator: linalg.Matrix,
                         field: Field) -> Optional[linalg.Matrix]:
    """Left-multiply by the inverse of the leftmost m x m block.

    Returns the systematic generator [I | M^-1 V], or None when the left
    block is singular (caller resamples).  The codeword set is unchanged.
    """
    m = len(generator)
    left = [row[:m] for row in generator]
    inv = linalg.inverse(left, field)
    if inv is None:
        return None
    return linalg.matmul(inv, generator, field)


def full_rank_probability(q: int, m: int) -> float:
    """Exact probability that a uniform m x m matrix over GF(q) is invertible."""
    p = 1.0
    for i in range(1, m + 1):
        p *= 1.0 - q ** -i
    return p


class ConcatenatedBinaryCode:
    """Binary code: outer RS over GF(2^b), inner random binary code per symbol.

    Outer symbols are expanded to b bits (bit k of the canonical value is
    coordinate k) and encoded by a random full-rank inner generator; both
    stages are F2-linear, so the whole map is GF(2)-linear.  Decoding is
    two-stage: brute-force nearest inner codeword per block, then outer
    errors-only Reed-Solomon.  The declared radius follows the two-stage
    guarantee: errors <= kappa are corrected because fewer than
    floor((d_out-1)/2)+1 blocks can accumulate ceil(d_in/2) bit errors.
    """

    strategy = "concatenated"

    def __init__(self, outer: LinearCode, inner_generator: linalg.Matrix,
                 inner_d: int):
        if not isinstance(outer.field, BinaryField):
            raise UsageError("outer field must be a binary extension field")
        self.outer = outer
        self.b = outer.field.degree
        self.gf2 = BinaryField(1)
        self.inner_generator = [list(map(int, r)) for r in inner_generator]
        self.inner_len = len(inner_generator[0])
        self.inner_d = inner_d
        self.field = self.gf2
        self.n = outer.n * self.inner_len
        self.m = outer.m * self.b
        self.kappa = -(-inner_d // 2) * ((outer.d - 1) // 2 + 1) - 1
        self.d = 2 * self.kappa + 1
        self._inner_table = self._build_inner_table()

    def _build_inner_table(self) -> dict[tuple, int]:
        table = {}
        for sym in range(1 << self.b):
            bits = [(sym >> k) & 1 for k in range(self.b)]
            table[tuple(linalg.matvec(bits, self.inner_generator, self.gf2))] = sym
        return table

    def encode(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.m:
            raise UsageError(f"message length {len(x)} != m={self.m}")
        syms = []
        for i in range(self.outer.m):
            chunk = x[i * self.b:(i + 1) * self.b]
            syms.append(sum(int(bit) << k for k, bit in enumerate(chunk)))
        out = []
        for sym in self.outer.encode(syms):
            bits = [(sym >> k) & 1 for k in range(self.b)]
            out.extend(linalg.matvec(bits, self.inner_generator, self.gf2))
        return out

    def decode(self, received: Sequence[int],
               erasures: Optional[Sequence[int]] = None) -> list[int]:
        if erasures:
            raise UsageError("concatenated decoder does not take erasures")
        if len(received) != self.n:
            raise UsageError(f"received length {len(received)} != n={self.n}")
        syms = []
        for i in range(self.outer.n):
            block = tuple(int(v) for v in received[i * self.inner_len:
                                                   (i + 1) * self.inner_len])
            best_sym, best_dist = 0, self.inner_len + 1
            for cw, sym in self._inner_table.items():
                dist = sum(a != b for a, b in zip(cw, block))
                if dist < best_dist:
                    best_sym, best_dist = sym, dist
            syms.append(best_sym)
        outer_msg = self.outer.decode(syms)
        bits = []
        for sym in outer_msg:
            bits.extend((sym >> k) & 1 for k in range(self.b))
        return bits

    def generator_rows(self) -> linalg.Matrix:
        rows = []
        for i in range(self.m):
            unit = [0] * self.m
            unit[i] = 1
            rows.append(self.encode(unit))
        return rows


def concatenated_binary_code(b: int, n_out: int, m_out: int, inner_len: int,
                             seed, max_attempts: int = 64) -> ConcatenatedBinaryCode:
    """Default binary inner-code construction for the insdel codes."""
    outer = rs_build(BinaryField(b), n_out, m_out)
    gf2 = BinaryField(1)
    best = None
    for attempt in range(max_attempts):
        gen = random_generator(gf2, b, inner_len, [seed, attempt])
        if linalg.rank(gen, gf2) != b:
            continue
        probe = LinearCode(gf2, gen, 1, "brute-force-nearest")
        dist = probe.min_distance()
        if best is None or dist > best[1]:
            best = (gen, dist)
    if best is None:
        raise ParameterError("no full-rank inner generator found")
    return ConcatenatedBinaryCode(outer, best[0], best[1])
