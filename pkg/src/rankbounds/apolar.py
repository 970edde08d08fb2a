"""Annihilator ideals, their Hilbert data, and decomposition checking.

The annihilator (apolar ideal) of a polynomial M collects all dual forms
that contract M to zero.  Its graded piece in degree k is the kernel of
the degree-k catalecticant, its Hilbert function is the rank profile, and
the total length of the quotient algebra drives the length-based lower
bounds in `bounds`.

Also here: exact verification of explicit decompositions of M into powers
of product points, the point-set apolarity test, and the subspace-ideal
containment test used by the split-rank bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactla import (QMatrix, RankContext, image_basis, in_span,
                      intersect_subspaces, kernel_basis, span_rank)
from .polycore import (InputError, Multidegree, MultiPoly, ProductPoint,
                       Terms, basis_exponents, diff_apply, group_offsets,
                       md_box, md_leq, md_sub, monomial, nvars,
                       power_of_point, zero)


# ---------------------------------------------------------------------------
# graded pieces and Hilbert data
# ---------------------------------------------------------------------------

def apolar_piece(M: MultiPoly, k: Multidegree) -> List[MultiPoly]:
    """Basis of the dual forms of multidegree k annihilating M."""
    d = M.multidegree()
    if d is None:
        raise InputError("apolar pieces need a homogeneous nonzero polynomial")
    exps = basis_exponents(M.sig, k)
    if not md_leq(k, d):
        # in any degree beyond the box every dual form annihilates M
        return [monomial(M.sig, e, 1, dual=True) for e in exps]
    from .cata import catalecticant
    mat, _, col_exps = catalecticant(M, k)
    out = []
    for v in kernel_basis(mat):
        terms = {col_exps[j]: c for j, c in v.items()}
        out.append(MultiPoly(M.sig, terms, dual=True))
    return out


def _single_term_exponent(M: MultiPoly):
    """The exponent tuple when M is a single scaled monomial, else None.
    Monomials admit closed-form apolar data (the annihilator is generated
    by the pure powers x_v^(e_v+1) and the quotient has the divisors of
    the exponent as a basis), which keeps high-degree monomial inputs out
    of the generic kernel computations."""
    if M.dual or len(M.terms) != 1:
        return None
    return next(iter(M.terms))


def hilbert_function(M: MultiPoly, ctx: RankContext,
                     max_cells: int = 0) -> Dict[Multidegree, int]:
    """dim (dual ring / annihilator) in every degree of the box, i.e. the
    catalecticant rank profile."""
    from .cata import profile
    return profile(M, ctx, max_cells or 10 ** 18)


def apolar_length(M: MultiPoly, ctx: RankContext) -> int:
    """Length (total vector-space dimension) of the apolar quotient algebra."""
    e = _single_term_exponent(M)
    if e is not None:
        out = 1
        for x in e:
            out *= x + 1
        return out
    return sum(hilbert_function(M, ctx).values())


def min_generator_degrees(M: MultiPoly) -> Dict[Multidegree, int]:
    """Multidegrees (with multiplicity) of a minimal generating set of the
    annihilator, found by comparing each graded piece with what lower
    pieces already generate.  The search box is d+1 in every coordinate,
    which always suffices for the families treated here and is checked by
    the regeneration test in the suite."""
    e = _single_term_exponent(M)
    if e is not None:
        counts: Dict[Multidegree, int] = {}
        for g in min_generators(M):
            b = g.multidegree()
            counts[b] = counts.get(b, 0) + 1
        return counts
    d = M.multidegree()
    if d is None:
        raise InputError("generator search needs a homogeneous polynomial")
    s = len(M.sig)
    offsets = group_offsets(M.sig)
    hi = tuple(x + 1 for x in d)
    pieces: Dict[Multidegree, List[MultiPoly]] = {}
    counts: Dict[Multidegree, int] = {}
    for b in md_box(hi):
        pieces[b] = apolar_piece(M, b)
        if sum(b) == 0:
            continue
        index = {e: i for i, e in enumerate(basis_exponents(M.sig, b))}
        generated = []
        for i in range(s):
            if b[i] == 0:
                continue
            below = pieces[tuple(x - (1 if g == i else 0)
                                 for g, x in enumerate(b))]
            for j in range(M.sig[i]):
                v = offsets[i] + j
                for q in below:
                    vec = {}
                    for e, c in q.terms.items():
                        e2 = tuple(x + (1 if u == v else 0)
                                   for u, x in enumerate(e))
                        vec[index[e2]] = c
                    if vec:
                        generated.append(vec)
        new = len(pieces[b]) - span_rank(generated, len(index))
        if new < 0:
            raise InputError("generated span escaped the annihilator piece")
        if new:
            counts[b] = new
    return counts


# ---------------------------------------------------------------------------
# decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """A claimed identity M = sum of c_t * (product point)^d."""

    sig: Tuple[int, ...]
    degree: Tuple[int, ...]
    parts: Tuple[Tuple[Fraction, ProductPoint], ...]

    def __len__(self) -> int:
        return len(self.parts)

    def build(self) -> MultiPoly:
        total = zero(self.sig)
        for c, pt in self.parts:
            total = total + power_of_point(pt, self.degree).scale(c)
        return total


def verify_decomposition(M: MultiPoly, dec: Decomposition) -> MultiPoly:
    """Exact residual M - (value of the decomposition); zero means verified."""
    if dec.sig != M.sig:
        raise InputError("decomposition signature does not match the polynomial")
    if M.multidegree() != dec.degree:
        raise InputError("decomposition degree does not match the polynomial")
    return M - dec.build()


def apolarity_check_points(M: MultiPoly, points: Sequence[ProductPoint]
                           ) -> Tuple[bool, Optional[List[Fraction]]]:
    """Does M lie in the span of the d-th powers of the given points?
    Returns (answer, coefficients in point order when the answer is yes)."""
    d = M.multidegree()
    if d is None:
        raise InputError("need a homogeneous nonzero polynomial")
    exps = basis_exponents(M.sig, d)
    index = {e: i for i, e in enumerate(exps)}
    rows = []
    for pt in points:
        if pt.sig != M.sig:
            raise InputError("point signature does not match the polynomial")
        p = power_of_point(pt, d)
        rows.append({index[e]: c for e, c in p.terms.items()})
    target = {index[e]: c for e, c in M.terms.items()}
    coeffs = in_span(target, rows, len(exps))
    if coeffs is None:
        return False, None
    return True, coeffs


# ---------------------------------------------------------------------------
# subspace apolarity (split-rank certificates)
# ---------------------------------------------------------------------------

def _subspace_ideal_piece(forms: Sequence[MultiPoly], k: int) -> List[dict]:
    """Degree-k part of the ideal of the span of the given single-group
    linear forms, as coefficient vectors over the dual monomial basis."""
    sig = forms[0].sig
    n = nvars(sig)
    m = len(forms)
    # coordinates of the ambient space restricted to a generic point
    # t_1 f_1 + ... + t_m f_m of the subspace
    images = []
    for v in range(n):
        terms: Terms = {}
        for l, f in enumerate(forms):
            e = [0] * n
            e[v] = 1
            c = f.terms.get(tuple(e), Fraction(0))
            if c:
                et = [0] * m
                et[l] = 1
                terms[tuple(et)] = terms.get(tuple(et), Fraction(0)) + c
        images.append(MultiPoly((m,), terms))
    dual_exps = basis_exponents(sig, (k,))
    t_exps = {e: i for i, e in enumerate(basis_exponents((m,), (k,)))}
    rows = []
    for e in dual_exps:
        restricted = monomial(sig, e).substitute(images)
        rows.append({t_exps[te]: c for te, c in restricted.terms.items()})
    # rows[j] is the restriction of the j-th dual monomial; the kernel of
    # the transposed matrix is exactly the piece that vanishes on the span
    mat = QMatrix.from_rows(rows, len(t_exps)).transpose()
    return kernel_basis(mat)


def carlini_subspace_check(F: MultiPoly, subspaces: Sequence[Sequence[MultiPoly]]
                           ) -> bool:
    """True iff the ideal of the union of the given linear subspaces sits
    inside the annihilator of F, degree by degree up to deg F."""
    if len(F.sig) != 1:
        raise InputError("subspace apolarity works on single-group polynomials")
    d = F.total_degree()
    if not subspaces or any(not ws for ws in subspaces):
        raise InputError("need at least one nonzero subspace")
    for ws in subspaces:
        for f in ws:
            if f.sig != F.sig or f.dual or f.total_degree() != 1:
                raise InputError("subspaces must be given by primal linear forms")
    for k in range(1, d + 1):
        exps = basis_exponents(F.sig, (k,))
        ncols = len(exps)
        piece = None
        for ws in subspaces:
            part = _subspace_ideal_piece(ws, k)
            piece = part if piece is None else intersect_subspaces(piece, part, ncols)
            if not piece:
                break
        if not piece:
            continue
        for v in piece:
            op = MultiPoly(F.sig, {exps[j]: c for j, c in v.items()}, dual=True)
            if not diff_apply(op, F).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# textual point files
# ---------------------------------------------------------------------------

def parse_points_text(text: str, sig) -> List[ProductPoint]:
    """One product point per nonempty line: groups separated by '|',
    coordinates by commas; rational entries like 3/2 are fine.  Lines of a
    decomposition file ('coeff : groups') are accepted by ignoring the
    coefficient prefix, and '#' starts a comment."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            line = line.split(":", 1)[1].strip()
        groups = [g.strip() for g in line.split("|")]
        try:
            forms = tuple(tuple(Fraction(x.strip()) for x in g.split(","))
                          for g in groups)
            points.append(ProductPoint(tuple(sig), forms))
        except (ValueError, ZeroDivisionError, InputError) as exc:
            raise InputError(f"bad point on line {lineno}: {exc}") from exc
    if not points:
        raise InputError("no points found in file")
    return points


def decomposition_to_text(dec: Decomposition) -> str:
    lines = []
    for c, pt in dec.parts:
        groups = " | ".join(",".join(str(x) for x in form) for form in pt.forms)
        lines.append(f"{c} : {groups}")
    return "\n".join(lines) + "\n"


def parse_decomposition_text(text: str, sig, degree) -> Decomposition:
    parts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InputError(f"line {lineno}: decomposition lines look like "
                             "'coeff : a,b | c,d'")
        head, rest = line.split(":", 1)
        try:
            coeff = Fraction(head.strip())
            forms = tuple(tuple(Fraction(x.strip()) for x in g.split(","))
                          for g in rest.strip().split("|"))
            parts.append((coeff, ProductPoint(tuple(sig), forms)))
        except (ValueError, ZeroDivisionError, InputError) as exc:
            raise InputError(f"bad decomposition line {lineno}: {exc}") from exc
    return Decomposition(tuple(sig), tuple(degree), tuple(parts))


def min_generators(M: MultiPoly) -> List[MultiPoly]:
    """An actual minimal generating set of the annihilator, matching the
    multidegree counts of `min_generator_degrees`."""
    from .exactla import IncrementalSpan
    e = _single_term_exponent(M)
    if e is not None:
        n = nvars(M.sig)
        gens = []
        for v in range(n):
            exp = tuple(e[v] + 1 if u == v else 0 for u in range(n))
            gens.append(monomial(M.sig, exp, 1, dual=True))
        return gens
    d = M.multidegree()
    if d is None:
        raise InputError("generator search needs a homogeneous polynomial")
    s = len(M.sig)
    offsets = group_offsets(M.sig)
    hi = tuple(x + 1 for x in d)
    pieces: Dict[Multidegree, List[MultiPoly]] = {}
    gens: List[MultiPoly] = []
    for b in md_box(hi):
        pieces[b] = apolar_piece(M, b)
        if sum(b) == 0:
            continue
        exps = basis_exponents(M.sig, b)
        index = {e: i for i, e in enumerate(exps)}
        span = IncrementalSpan(len(exps))
        for i in range(s):
            if b[i] == 0:
                continue
            below = pieces[tuple(x - (1 if g == i else 0)
                                 for g, x in enumerate(b))]
            for j in range(M.sig[i]):
                v = offsets[i] + j
                for q in below:
                    vec = {}
                    for e, c in q.terms.items():
                        e2 = tuple(x + (1 if u == v else 0)
                                   for u, x in enumerate(e))
                        vec[index[e2]] = c
                    if vec:
                        span.add(vec)
        for q in pieces[b]:
            vec = {index[e]: c for e, c in q.terms.items()}
            if span.add(vec):
                gens.append(q)
    return gens
