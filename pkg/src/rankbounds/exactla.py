"""Exact linear algebra over Q and over random large prime fields.

Matrices are stored sparsely: a QMatrix holds a list of rows, each row a
dict {column index: Fraction}.  Rank over Q uses fraction-free elimination
on integer-scaled rows (Bareiss-style cross-multiplication with content
stripping), so no floating point and no rational blowup inside the pivot
loop.  Rank mod p uses a dense numpy elimination; the prime is a random
31-bit prime drawn from a seeded generator so reruns are reproducible.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

SparseVec = Dict[int, Fraction]

EXACT_COLUMN_LIMIT = 200  # 'auto' strategy escalates to exact at or below this


class RetryablePrimeError(RuntimeError):
    """A denominator vanished mod p; retry with a fresh prime."""


@dataclass
class QMatrix:
    """Sparse rational matrix: rows[i] maps column -> nonzero Fraction."""

    nrows: int
    ncols: int
    rows: List[SparseVec] = field(default_factory=list)

    @classmethod
    def from_rows(cls, rows: Sequence[SparseVec], ncols: int) -> "QMatrix":
        clean = [{c: Fraction(v) for c, v in r.items() if v != 0} for r in rows]
        return cls(len(clean), ncols, clean)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "QMatrix":
        rows = []
        ncols = len(data[0]) if data else 0
        for r in data:
            rows.append({j: Fraction(v) for j, v in enumerate(r) if Fraction(v) != 0})
        return cls(len(rows), ncols, rows)

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> "QMatrix":
        rows: List[SparseVec] = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return QMatrix(self.ncols, self.nrows, rows)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)


def _integer_rows(rows: Sequence[SparseVec]) -> List[Dict[int, int]]:
    """Scale each row by the lcm of its denominators and strip content."""
    out = []
    for r in rows:
        if not r:
            continue
        scale = 1
        for v in r.values():
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
        ints = {c: int(v * scale) for c, v in r.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        out.append(ints)
    return out


def rank_exact(mat: QMatrix) -> int:
    """Rank over Q by fraction-free sparse elimination.

    Pivot choice: the structurally sparsest remaining column first, and
    within it the entry of smallest magnitude, which keeps the integer
    entries small on the sparse matrices this package produces.
    """
    rows = _integer_rows(mat.rows)
    # occupancy[c] = set of active row ids whose support contains column c
    occupancy: Dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            occupancy.setdefault(c, set()).add(i)
    # lazy heap of (occupancy size, column); stale entries are skipped on pop
    heap = [(len(occ), c) for c, occ in occupancy.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        count, pivot_col = heapq.heappop(heap)
        occ = occupancy.get(pivot_col, ())
        if not occ:
            continue
        if len(occ) != count:
            heapq.heappush(heap, (len(occ), pivot_col))
            continue
        pivot_row = min(occ, key=lambda i: (abs(rows[i][pivot_col]), i))
        prow = rows[pivot_row]
        pval = prow[pivot_col]
        for i in list(occ):
            if i == pivot_row:
                continue
            row = rows[i]
            f = row[pivot_col]
            new: Dict[int, int] = {}
            g = 0
            for c in set(row) | set(prow):
                v = pval * row.get(c, 0) - f * prow.get(c, 0)
                if v:
                    new[c] = v
                    g = math.gcd(g, v)
            if g > 1:
                new = {c: v // g for c, v in new.items()}
            for c in row:
                occupancy[c].discard(i)
            rows[i] = new
            for c in new:
                occ_c = occupancy.setdefault(c, set())
                occ_c.add(i)
                heapq.heappush(heap, (len(occ_c), c))
        for c in prow:
            occupancy[c].discard(pivot_row)
            if occupancy[c]:
                heapq.heappush(heap, (len(occupancy[c]), c))
        rank += 1
    return rank


def random_prime_31(rng: random.Random) -> int:
    """A random prime strictly above 2**30 (31-bit)."""
    while True:
        candidate = rng.randrange(2 ** 30 + 1, 2 ** 31) | 1
        if _is_prime(candidate):
            return candidate


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rank_modp(mat: QMatrix, p: int) -> int:
    """Rank over F_p (dense, vectorized).

    Raises RetryablePrimeError if some entry's denominator is 0 mod p.
    """
    A = np.zeros((mat.nrows, mat.ncols), dtype=np.int64)
    for i, r in enumerate(mat.rows):
        for j, v in r.items():
            if v.denominator % p == 0:
                raise RetryablePrimeError(f"denominator divisible by p={p}")
            A[i, j] = (v.numerator % p) * pow(v.denominator % p, -1, p) % p
    return _rank_modp_array(A, p)


def _rank_modp_array(A: np.ndarray, p: int) -> int:
    A = A % p
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        col = A[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i], :] = A[[i, r], :]
        inv = pow(int(A[r, c]), -1, p)
        A[r, :] = A[r, :] * inv % p
        below = A[r + 1:, c]
        mask = np.nonzero(below)[0]
        if mask.size:
            A[r + 1 + mask, :] = (A[r + 1 + mask, :] - below[mask, None] * A[r, :]) % p
        r += 1
    return r


# ---------------------------------------------------------------------------
# reduced row echelon form over Q and its consumers
# ---------------------------------------------------------------------------

def rref(rows: Sequence[SparseVec], ncols: int) -> Tuple[List[SparseVec], List[int]]:
    """Fully reduced echelon rows (pivot coefficient 1) and pivot columns.

    Pivots are chosen leftmost-first, so the result is the canonical RREF
    of the row space.
    """
    work = [dict(r) for r in rows if r]
    pivot_rows: List[int] = []
    pivots: List[int] = []
    occupancy: Dict[int, set] = {}
    for i, r in enumerate(work):
        for c in r:
            occupancy.setdefault(c, set()).add(i)
    used = set()
    # lazy min-heap of candidate pivot columns (leftmost-first)
    heap = sorted(occupancy)
    while heap:
        pivot_col = heapq.heappop(heap)
        cands = occupancy.get(pivot_col, set()) - used
        if not cands:
            continue
        pivot_row = min(cands, key=lambda i: (len(work[i]), i))
        prow = work[pivot_row]
        inv = 1 / prow[pivot_col]
        prow = {c: v * inv for c, v in prow.items()}
        work[pivot_row] = prow
        for i in list(occupancy[pivot_col]):
            if i == pivot_row:
                continue
            row = work[i]
            f = row[pivot_col]
            new: SparseVec = {}
            for c in set(row) | set(prow):
                v = row.get(c, Fraction(0)) - f * prow.get(c, Fraction(0))
                if v != 0:
                    new[c] = v
            for c in row:
                occupancy[c].discard(i)
            work[i] = new
            for c in new:
                if c not in occupancy or not occupancy[c]:
                    heapq.heappush(heap, c)
                occupancy.setdefault(c, set()).add(i)
        # the pivot column stays interesting while other rows may meet it
        heapq.heappush(heap, pivot_col)
        used.add(pivot_row)
        pivot_rows.append(pivot_row)
        pivots.append(pivot_col)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [work[pivot_rows[k]] for k in order], sorted(pivots)


def kernel_basis(mat: QMatrix) -> List[SparseVec]:
    """Basis of the right kernel {v : mat v = 0}, one sparse vector per
    free column of the RREF."""
    rrows, pivots = rref(mat.rows, mat.ncols)
    pivot_set = set(pivots)
    by_pivot = {pc: row for pc, row in zip(pivots, rrows)}
    basis: List[SparseVec] = []
    for f in range(mat.ncols):
        if f in pivot_set:
            continue
        v: SparseVec = {f: Fraction(1)}
        for pc in pivots:
            coef = by_pivot[pc].get(f)
            if coef:
                v[pc] = -coef
        basis.append(v)
    return basis


def image_basis(rows: Sequence[SparseVec], ncols: int) -> List[SparseVec]:
    """Canonical basis (RREF rows) of the span of the given vectors."""
    return rref(rows, ncols)[0]


def span_rank(rows: Sequence[SparseVec], ncols: int) -> int:
    return rank_exact(QMatrix.from_rows(rows, ncols))


def solve_linear(mat: QMatrix, rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One exact solution of mat x = rhs, or None if inconsistent."""
    aug_rows = []
    rhs_col = mat.ncols
    for i, r in enumerate(mat.rows):
        row = dict(r)
        b = Fraction(rhs[i])
        if b != 0:
            row[rhs_col] = b
        aug_rows.append(row)
    rrows, pivots = rref(aug_rows, mat.ncols + 1)
    sol = [Fraction(0)] * mat.ncols
    for pc, row in zip(pivots, rrows):
        if pc == rhs_col:
            return None
        sol[pc] = row.get(rhs_col, Fraction(0))
    return sol


def in_span(v: SparseVec, basis: Sequence[SparseVec], ncols: int
            ) -> Optional[List[Fraction]]:
    """Coefficients expressing v in the given spanning set, or None."""
    cols = QMatrix.from_rows(basis, ncols).transpose()
    rhs = [v.get(i, Fraction(0)) for i in range(ncols)]
    return solve_linear(cols, rhs)


def intersect_subspaces(a: Sequence[SparseVec], b: Sequence[SparseVec],
                        ncols: int) -> List[SparseVec]:
    """Basis of span(a) intersect span(b)."""
    a = image_basis(a, ncols)
    b = image_basis(b, ncols)
    if not a or not b:
        return []
    # columns: the a-basis then the b-basis; kernel vectors give relations
    # sum(k_i a_i) + sum(k_j b_j) = 0, whose a-part lies in the intersection.
    stacked = QMatrix.from_rows(list(a) + list(b), ncols).transpose()
    members = []
    for k in kernel_basis(stacked):
        combo: SparseVec = {}
        for i, ai in enumerate(a):
            coef = k.get(i)
            if not coef:
                continue
            for c, v in ai.items():
                combo[c] = combo.get(c, Fraction(0)) + coef * v
        combo = {c: v for c, v in combo.items() if v != 0}
        if combo:
            members.append(combo)
    return image_basis(members, ncols)


# ---------------------------------------------------------------------------
# strategy dispatch
# ---------------------------------------------------------------------------

@dataclass
class RankContext:
    """Shared state for rank computations: strategy and modular prime."""

    strategy: str = "auto"
    seed: int = 0
    prime: int = 0

    def __post_init__(self):
        if self.strategy not in ("exact", "modp", "auto"):
            raise ValueError(f"unknown rank strategy {self.strategy!r}")
        if not self.prime:
            self.prime = random_prime_31(random.Random(self.seed))

    def rank(self, mat: QMatrix) -> int:
        strat = self.strategy
        if strat == "auto":
            strat = "exact" if min(mat.nrows, mat.ncols) <= EXACT_COLUMN_LIMIT else "modp"
        if strat == "exact":
            if mat.ncols < mat.nrows:
                mat = mat.transpose()
            return rank_exact(mat)
        p = self.prime
        for _ in range(5):
            try:
                return rank_modp(mat, p)
            except RetryablePrimeError:
                p = random_prime_31(random.Random(p))
        raise RetryablePrimeError("no usable prime found after 5 retries")


class IncrementalSpan:
    """Growable echelonized span with exact membership testing."""

    def __init__(self, ncols: int, vectors: Sequence[SparseVec] = ()):
        self.ncols = ncols
        self.rows: Dict[int, SparseVec] = {}  # pivot column -> row
        for v in vectors:
            self.add(v)

    def _reduce(self, vec: SparseVec) -> SparseVec:
        vec = dict(vec)
        for p in sorted(self.rows):
            c = vec.get(p)
            if not c:
                continue
            row = self.rows[p]
            for col, val in row.items():
                v = vec.get(col, Fraction(0)) - c * val
                if v == 0:
                    vec.pop(col, None)
                else:
                    vec[col] = v
        return vec

    def contains(self, vec: SparseVec) -> bool:
        return not self._reduce(vec)

    def add(self, vec: SparseVec) -> bool:
        """Insert a vector; True if it enlarged the span."""
        red = self._reduce(vec)
        if not red:
            return False
        p = min(red)
        inv = 1 / red[p]
        self.rows[p] = {c: v * inv for c, v in red.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)
