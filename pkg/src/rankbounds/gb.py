"""A small Groebner engine for dimension computations.

Everything here runs over Q in the degree-reverse-lexicographic order on
the flattened variable list.  The only consumer is dimension counting: the
Krull dimension of a quotient ring equals the dimension of its initial
monomial ideal, and for monomial ideals the dimension is a covering
problem on the generator supports.  Vanishing-locus dimensions of
contraction images ("singularity dimensions") are built on top.

The pair loop is plain Buchberger with both classical skip criteria and a
hard budget on processed S-pairs; blowing the budget raises BudgetError
rather than stalling silently.
"""

from __future__ import annotations

import heapq
import itertools
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import BudgetError, InvariantViolation
from .exactla import RankContext, image_basis
from .polycore import (Exponent, Multidegree, MultiPoly, Terms, canonicalize,
                       group_slices, nvars)

DEFAULT_PAIR_BUDGET = 200000


def grevlex_key(e: Exponent) -> Tuple:
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def leading_exponent(p: Terms) -> Exponent:
    return max(p, key=grevlex_key)


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mul_term(p: Terms, shift: Exponent, coef: Fraction) -> Terms:
    return {tuple(x + s for x, s in zip(e, shift)): c * coef for e, c in p.items()}


def _sub(p: Terms, q: Terms) -> Terms:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, Fraction(0)) - c
        if v == 0:
            out.pop(e, None)
        else:
            out[e] = v
    return out


def _monic(p: Terms) -> Terms:
    lc = p[leading_exponent(p)]
    if lc == 1:
        return p
    return {e: c / lc for e, c in p.items()}


def normal_form(p: Terms, basis: Sequence[Terms],
                lead: Optional[Sequence[Exponent]] = None) -> Terms:
    """Full remainder of p on division by the basis (monic divisors)."""
    if lead is None:
        lead = [leading_exponent(g) for g in basis]
    remainder: Terms = {}
    work = dict(p)
    while work:
        le = leading_exponent(work)
        for g, lg in zip(basis, lead):
            if _divides(lg, le):
                shift = tuple(x - y for x, y in zip(le, lg))
                work = _sub(work, _mul_term(g, shift, work[le]))
                break
        else:
            remainder[le] = work.pop(le)
    return remainder


def s_poly(f: Terms, g: Terms) -> Terms:
    lf, lg = leading_exponent(f), leading_exponent(g)
    l = _lcm(lf, lg)
    a = _mul_term(f, tuple(x - y for x, y in zip(l, lf)), Fraction(1) / f[lf])
    b = _mul_term(g, tuple(x - y for x, y in zip(l, lg)), Fraction(1) / g[lg])
    return _sub(a, b)


def buchberger(gens: Sequence[Terms], n: int,
               budget: int = DEFAULT_PAIR_BUDGET) -> List[Terms]:
    """Reduced Groebner basis (grevlex) of the ideal the generators span.

    `budget` caps the number of S-pairs actually reduced.
    """
    basis: List[Terms] = []
    lead: List[Exponent] = []
    for g in gens:
        g = canonicalize(dict(g))
        if g:
            basis.append(_monic(g))
            lead.append(leading_exponent(basis[-1]))
    if not basis:
        return []

    pending: Set[Tuple[int, int]] = set()
    heap: List[Tuple[Tuple, int, int]] = []

    def push_pair(i: int, j: int):
        l = _lcm(lead[i], lead[j])
        heapq.heappush(heap, (grevlex_key(l), i, j))
        pending.add((i, j))

    for i, j in itertools.combinations(range(len(basis)), 2):
        push_pair(i, j)

    processed = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        li, lj = lead[i], lead[j]
        l = _lcm(li, lj)
        # coprime leading terms reduce to zero
        if all(x + y == m for x, y, m in zip(li, lj, l)):
            continue
        # chain criterion: a third leading term divides the lcm and both
        # side pairs are no longer pending
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lead[k], l):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 not in pending and p2 not in pending:
                skip = True
                break
        if skip:
            continue
        processed += 1
        if processed > budget:
            raise BudgetError(f"S-pair budget {budget} exceeded")
        r = normal_form(s_poly(basis[i], basis[j]), basis, lead)
        if not r:
            continue
        r = _monic(r)
        basis.append(r)
        lead.append(leading_exponent(r))
        new = len(basis) - 1
        for k in range(new):
            push_pair(k, new)

    return _interreduce(basis)


def _interreduce(basis: List[Terms]) -> List[Terms]:
    lead = [leading_exponent(g) for g in basis]
    keep = []
    for i in range(len(basis)):
        if any(j != i and _divides(lead[j], lead[i])
               and (not _divides(lead[i], lead[j]) or j < i)
               for j in range(len(basis))):
            continue
        keep.append(i)
    reduced = []
    for i in keep:
        others = [basis[j] for j in keep if j != i]
        r = normal_form(basis[i], others) if others else dict(basis[i])
        if r:
            reduced.append(_monic(r))
    reduced.sort(key=lambda g: grevlex_key(leading_exponent(g)))
    return reduced


# ---------------------------------------------------------------------------
# dimension of monomial ideals and of arbitrary ideals
# ---------------------------------------------------------------------------

def _min_hitting(supports: List[frozenset]) -> int:
    """Smallest number of variables meeting every support set."""
    # drop supersets; a hitting set for the minimal sets hits everything
    supports = sorted(set(supports), key=len)
    minimal: List[frozenset] = []
    for s in supports:
        if not any(m <= s for m in minimal):
            minimal.append(s)
    best = [len(minimal)]  # hitting one variable per set always works

    def bnb(remaining: Tuple[frozenset, ...], chosen: int):
        if not remaining:
            best[0] = min(best[0], chosen)
            return
        if chosen + 1 >= best[0]:
            return
        s = min(remaining, key=len)
        for v in sorted(s):
            rest = tuple(r for r in remaining if v not in r)
            bnb(rest, chosen + 1)

    bnb(tuple(minimal), 0)
    return best[0]


def dim_monomial(exponents: Sequence[Exponent], n: int) -> int:
    """Krull dimension of the vanishing locus of a monomial ideal in
    affine n-space: n minus the smallest variable cover of the supports."""
    supports = []
    for e in exponents:
        s = frozenset(i for i, x in enumerate(e) if x > 0)
        if not s:
            return -1  # a unit is among the generators
        supports.append(s)
    if not supports:
        return n
    return n - _min_hitting(supports)


def affine_dim(gens: Sequence[MultiPoly], budget: int = DEFAULT_PAIR_BUDGET) -> int:
    """Dimension of the affine vanishing locus of the generators;
    -1 for the unit ideal, the ambient dimension for no (nonzero) generators."""
    polys = [g.terms for g in gens if not g.is_zero()]
    if not polys:
        if not gens:
            raise ValueError("affine_dim needs at least one polynomial to fix the ring")
        return nvars(gens[0].sig)
    n = nvars(gens[0].sig)
    gb = buchberger(polys, n, budget)
    if any(leading_exponent(g) == (0,) * n for g in gb):
        return -1
    return dim_monomial([leading_exponent(g) for g in gb], n)


def zero_dim_check(gens: Sequence[MultiPoly], budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    return affine_dim(gens, budget) <= 0


# ---------------------------------------------------------------------------
# singular-locus dimensions from contraction images
# ---------------------------------------------------------------------------

def contraction_image_polys(M: MultiPoly, a: Multidegree,
                            ctx: Optional[RankContext] = None) -> List[MultiPoly]:
    """Echelonized basis of the span of all order-a contractions of M."""
    from .cata import catalecticant
    mat, row_exps, _ = catalecticant(M, a)
    cols = mat.transpose()
    basis = image_basis(cols.rows, cols.ncols)
    out = []
    for v in basis:
        terms = {row_exps[i]: c for i, c in v.items()}
        out.append(MultiPoly(M.sig, terms))
    return out


def sigma_hat_dim(F: MultiPoly, a: int, budget: int = DEFAULT_PAIR_BUDGET) -> int:
    """Dimension of the affine cone of points where F vanishes to order
    at least a+1 (single-group F).  Always >= 0: the cone holds the origin."""
    if len(F.sig) != 1:
        raise ValueError("sigma_hat_dim expects a single-group polynomial")
    gens = contraction_image_polys(F, (a,))
    dim = affine_dim(gens, budget)
    if dim < 0:
        raise InvariantViolation("cone of a homogeneous ideal cannot be empty")
    return dim


def sigma_dim_multi(M: MultiPoly, a: Multidegree, seed: int = 0,
                    budget: int = DEFAULT_PAIR_BUDGET, trials: int = 3) -> int:
    """Dimension of the multiprojective locus where M drops to multiorder
    beyond a, computed by adjoining one random dehomogenizing slice per
    group; -1 means the locus is empty.  The maximum over `trials`
    independent slices guards against unlucky cuts."""
    gens = contraction_image_polys(M, a)
    best = -1
    N = nvars(M.sig)
    slices_used = group_slices(M.sig)
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}:slice")
        cut: List[MultiPoly] = []
        for (lo, hi) in slices_used:
            coeffs = [0] * N
            while all(coeffs[lo:hi][k] == 0 for k in range(hi - lo)):
                for v in range(lo, hi):
                    coeffs[v] = rng.randint(-50, 50)
            terms: Terms = {(0,) * N: Fraction(-1)}
            for v in range(lo, hi):
                if coeffs[v]:
                    e = [0] * N
                    e[v] = 1
                    terms[tuple(e)] = Fraction(coeffs[v])
            cut.append(MultiPoly(M.sig, terms))
        best = max(best, affine_dim(list(gens) + cut, budget))
    return best
