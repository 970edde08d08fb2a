"""Catalecticant matrices of a multihomogeneous polynomial.

For a polynomial M of multidegree d over signature sig and any multidegree
a <= d, the catalecticant in degree a is the matrix of the contraction map
(dual forms of multidegree a) -> (primal forms of multidegree d - a).
Columns are indexed by the dual monomial basis in degree a and rows by the
primal monomial basis in degree d - a, both in the canonical graded-lex
order of `polycore.basis_exponents`.

The rank of any catalecticant is a lower bound for the additive rank of M,
and the matrix in degree a is the transpose of the one in degree d - a up
to the contraction scaling, so ranks are symmetric across the box.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import BudgetError
from .exactla import QMatrix, RankContext
from .polycore import (InputError, Multidegree, MultiPoly, basis_exponents,
                       basis_size, falling, md_box, md_leq, md_rad, md_sub,
                       nvars, unit_md)

DEFAULT_MAX_CELLS = 10000


def catalecticant(M: MultiPoly, a: Multidegree,
                  max_cells: int = 0) -> Tuple[QMatrix, List, List]:
    """The contraction matrix in degree a, with its row and column labels.

    Returns (matrix, row_exponents, col_exponents).  `max_cells`, when
    positive, refuses matrices with more than that many entries.
    """
    d = M.multidegree()
    if d is None:
        raise InputError("catalecticants need a homogeneous nonzero polynomial")
    if M.dual:
        raise InputError("catalecticants act on primal polynomials")
    if len(a) != len(M.sig) or not md_leq(a, d) or any(x < 0 for x in a):
        raise InputError(f"degree {a} outside the box of {d}")
    col_exps = basis_exponents(M.sig, a)
    row_exps = basis_exponents(M.sig, md_sub(d, a))
    if max_cells and len(col_exps) * len(row_exps) > max_cells:
        raise BudgetError(
            f"catalecticant in degree {a} has {len(row_exps)}x{len(col_exps)} "
            f"entries, above the cell limit {max_cells}")
    row_index = {e: i for i, e in enumerate(row_exps)}
    rows: List[Dict[int, Fraction]] = [dict() for _ in row_exps]
    for j, ed in enumerate(col_exps):
        for ef, cf in M.terms.items():
            if any(x > y for x, y in zip(ed, ef)):
                continue
            coef = cf
            for x, y in zip(ed, ef):
                if x:
                    coef *= falling(y, x)
            target = tuple(y - x for x, y in zip(ed, ef))
            i = row_index[target]
            rows[i][j] = rows[i].get(j, Fraction(0)) + coef
    for r in rows:
        for j in [j for j, v in r.items() if v == 0]:
            del r[j]
    return QMatrix(len(row_exps), len(col_exps), rows), row_exps, col_exps


def catalecticant_rank(M: MultiPoly, a: Multidegree, ctx: RankContext,
                       max_cells: int = 0) -> int:
    mat, _, _ = catalecticant(M, a, max_cells)
    return ctx.rank(mat)


def profile(M: MultiPoly, ctx: RankContext,
            max_cells: int = DEFAULT_MAX_CELLS) -> Dict[Multidegree, int]:
    """Rank of every catalecticant in the full degree box of M."""
    d = M.multidegree()
    if d is None:
        raise InputError("profile needs a homogeneous nonzero polynomial")
    out: Dict[Multidegree, int] = {}
    for a in md_box(d):
        out[a] = catalecticant_rank(M, a, ctx, max_cells)
    return out


def series_to_biform(polys: Sequence[MultiPoly]) -> MultiPoly:
    """Internalize a list of same-degree polynomials as one polynomial that
    is linear in a fresh leading group with one variable per list entry."""
    if not polys:
        raise InputError("empty series")
    base_sig = polys[0].sig
    d = polys[0].multidegree()
    for p in polys:
        if p.sig != base_sig or p.dual:
            raise InputError("series members must share a primal signature")
        if p.multidegree() != d or d is None:
            raise InputError("series members must share one multidegree")
    m = len(polys)
    sig = (m,) + base_sig
    terms = {}
    for i, p in enumerate(polys):
        for e, c in p.terms.items():
            lead = tuple(1 if k == i else 0 for k in range(m))
            terms[lead + e] = c
    return MultiPoly(sig, terms)


def conciseness_check(M: MultiPoly, ctx: RankContext) -> bool:
    """True iff M genuinely involves every variable of every group, i.e. the
    degree-one contraction in each group has full rank."""
    d = M.multidegree()
    if d is None:
        raise InputError("conciseness needs a homogeneous nonzero polynomial")
    s = len(M.sig)
    for i, n in enumerate(M.sig):
        if d[i] == 0:
            if n != 1:
                return False
            continue
        if catalecticant_rank(M, unit_md(s, i), ctx) != n:
            return False
    return True


def injectivity_check(M: MultiPoly, a: Multidegree, ctx: RankContext) -> bool:
    """True iff the contraction map in the squarefree truncation of a has a
    zero kernel (full column rank)."""
    r = md_rad(a)
    mat, _, _ = catalecticant(M, r)
    return ctx.rank(mat) == basis_size(M.sig, r)
