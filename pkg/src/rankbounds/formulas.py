"""Explicit rational decompositions used as verified upper bounds.

Every constructor returns (target, decomposition) and checks the identity
exactly before returning, so a successful call is already a certificate.
The sign-pattern identity behind most of them:

    g_1 * ... * g_D  =  (1 / (2^(D-1) D!)) * sum over sign vectors e
                        (e_2 * ... * e_D) (g_1 + e_2 g_2 + ... + e_D g_D)^D

which stays inside Q because only signs appear.  Powers of a repeated
factor are handled by repeating it in the product, which is why groups
where both the group size and the group exponent exceed one are rejected:
those would need roots of unity that do not exist in Q.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from .apolar import Decomposition, verify_decomposition
from .errors import InvariantViolation
from .polycore import (InputError, MultiPoly, ProductPoint, check_signature,
                       group_offsets, monomial, nvars)


def _verified(target: MultiPoly, dec: Decomposition) -> Tuple[MultiPoly, Decomposition]:
    residual = verify_decomposition(target, dec)
    if not residual.is_zero():
        raise InvariantViolation(f"constructed decomposition fails: residual {residual}")
    return target, dec


def _sign_patterns(k: int):
    """All (1, e_2, ..., e_k) with e_i = +-1."""
    for tail in itertools.product((1, -1), repeat=k - 1):
        yield (1,) + tail


# ---------------------------------------------------------------------------
# products of linear forms, one group at a time
# ---------------------------------------------------------------------------

def _product_of_forms(forms: Sequence[Tuple[Fraction, ...]]
                      ) -> List[Tuple[Fraction, Tuple[Fraction, ...]]]:
    """Decompose f_1 * ... * f_D into powers of D-th powers of forms:
    returns (coefficient, form) pairs over the same coordinates."""
    D = len(forms)
    n = len(forms[0])
    scale = Fraction(1, 2 ** (D - 1) * math.factorial(D))
    out = []
    for eps in _sign_patterns(D):
        sign = 1
        for e in eps[1:]:
            sign *= e
        combo = tuple(sum(Fraction(e) * f[v] for e, f in zip(eps, forms))
                      for v in range(n))
        out.append((scale * sign, combo))
    return out


def grouped_product(sig, degs) -> Tuple[MultiPoly, Decomposition]:
    """Decomposition of prod_i (x_i1 * ... * x_in_i)^(degs_i).

    Each group must have size one or exponent one; the result has
    prod_i (degs_i + 1)^(n_i - 1) parts, which meets the length-based
    lower bound, so the rank is determined.
    """
    sig = check_signature(sig)
    degs = tuple(int(x) for x in degs)
    if len(degs) != len(sig) or any(x < 1 for x in degs):
        raise InputError("need one positive exponent per group")
    per_group: List[List[Tuple[Fraction, Tuple[Fraction, ...]]]] = []
    for n, d in zip(sig, degs):
        if n == 1:
            per_group.append([(Fraction(1), (Fraction(1),))])
            continue
        if d != 1:
            raise InputError(
                "a group with several variables and exponent above one has no "
                "rational decomposition of minimal length")
        forms = [tuple(Fraction(1 if j == v else 0) for j in range(n))
                 for v in range(n)]
        per_group.append(_product_of_forms(forms))
    exps = []
    for n, d in zip(sig, degs):
        exps.extend([d] * n)
    target = monomial(sig, tuple(exps))
    degree = tuple(n * d for n, d in zip(sig, degs))
    parts = []
    for combo in itertools.product(*per_group):
        coeff = Fraction(1)
        forms = []
        for c, f in combo:
            coeff *= c
            forms.append(f)
        parts.append((coeff, ProductPoint(sig, tuple(forms))))
    return _verified(target, Decomposition(sig, degree, tuple(parts)))


def monomial_product(n: int) -> Tuple[MultiPoly, Decomposition]:
    """x_1 * ... * x_n as 2^(n-1) n-th powers of rational linear forms."""
    return grouped_product((n,), (1,))


def bihomog_product(a: int, b: int) -> Tuple[MultiPoly, Decomposition]:
    """x_1...x_a * y_1...y_b as 2^(a+b-2) products l^a m^b."""
    return grouped_product((a, b), (1, 1))


# ---------------------------------------------------------------------------
# permanents and the 3x3 determinant, grouped by rows
# ---------------------------------------------------------------------------

def _perm_poly(k: int) -> MultiPoly:
    sig = (k,) * k
    terms = {}
    for perm in itertools.permutations(range(k)):
        e = [0] * (k * k)
        for i in range(k):
            e[i * k + perm[i]] = 1
        terms[tuple(e)] = Fraction(1)
    return MultiPoly(sig, terms)


def _det_poly_grouped(n: int) -> MultiPoly:
    sig = (n,) * n
    terms = {}
    for perm in itertools.permutations(range(n)):
        sign = 1
        p = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        e = [0] * (n * n)
        for i in range(n):
            e[i * n + perm[i]] = 1
        terms[tuple(e)] = Fraction(sign)
    return MultiPoly(sig, terms)


def glynn_permanent(k: int) -> Tuple[MultiPoly, Decomposition]:
    """The k x k permanent as 2^(k-1) products of row-linear forms, using
    the half-normalized sign-vector identity."""
    if k < 1:
        raise InputError("permanent size must be positive")
    sig = (k,) * k
    target = _perm_poly(k)
    scale = Fraction(1, 2 ** (k - 1))
    parts = []
    for eps in _sign_patterns(k):
        sign = 1
        for e in eps:
            sign *= e
        form = tuple(Fraction(e) for e in eps)
        parts.append((scale * sign, ProductPoint(sig, (form,) * k)))
    return _verified(target, Decomposition(sig, (1,) * k, tuple(parts)))


def ryser_permanent(k: int) -> Tuple[MultiPoly, Decomposition]:
    """The k x k permanent as 2^k - 1 products over nonempty column sets."""
    if k < 1:
        raise InputError("permanent size must be positive")
    sig = (k,) * k
    target = _perm_poly(k)
    parts = []
    cols = list(range(k))
    for r in range(1, k + 1):
        for S in itertools.combinations(cols, r):
            coeff = Fraction((-1) ** (k - r))
            form = tuple(Fraction(1 if j in S else 0) for j in range(k))
            parts.append((coeff, ProductPoint(sig, (form,) * k)))
    return _verified(target, Decomposition(sig, (1,) * k, tuple(parts)))


def derksen_det3() -> Tuple[MultiPoly, Decomposition]:
    """The 3x3 determinant as five products of row-linear forms."""
    sig = (3, 3, 3)
    target = _det_poly_grouped(3)
    half = Fraction(1, 2)
    # each triple lists the three row forms by their coordinate vectors
    data = [
        (half, ((0, 1, 1), (1, -1, 0), (1, 1, 0))),
        (half, ((1, 1, 0), (0, 1, -1), (0, 1, 1))),
        (Fraction(1), ((0, 1, 0), (-1, 0, 1), (1, 0, 1))),
        (half, ((0, -1, 1), (1, 1, 0), (-1, 1, 0))),
        (half, ((1, -1, 0), (0, 1, 1), (0, -1, 1))),
    ]
    parts = []
    for c, rows in data:
        forms = tuple(tuple(Fraction(x) for x in row) for row in rows)
        parts.append((c, ProductPoint(sig, forms)))
    return _verified(target, Decomposition(sig, (1, 1, 1), tuple(parts)))


# ---------------------------------------------------------------------------
# splitting products of linear forms into powers
# ---------------------------------------------------------------------------

def split_to_waring(target: MultiPoly, dec: Decomposition
                    ) -> Tuple[MultiPoly, Decomposition]:
    """Convert a decomposition into products of linear forms into a plain
    power decomposition over the flattened single-group signature.

    Each part contributes 2^(D-1) powers, where D is the total degree.
    """
    N = nvars(dec.sig)
    flat_sig = (N,)
    D = sum(dec.degree)
    offs = group_offsets(dec.sig)
    parts = []
    for c, pt in dec.parts:
        forms = []
        for i, d in enumerate(dec.degree):
            padded = [Fraction(0)] * N
            for j, v in enumerate(pt.forms[i]):
                padded[offs[i] + j] = v
            forms.extend([tuple(padded)] * d)
        for c2, combo in _product_of_forms(forms):
            parts.append((c * c2, ProductPoint(flat_sig, (combo,))))
    flat_target = MultiPoly(flat_sig, dict(target.terms))
    return _verified(flat_target, Decomposition(flat_sig, (D,), tuple(parts)))


# ---------------------------------------------------------------------------
# closed-form part counts for the constructions above
# ---------------------------------------------------------------------------

def monomial_waring_count(n: int) -> int:
    return 2 ** (n - 1)


def glynn_waring_count(k: int) -> int:
    """Glynn split terms, each split into powers: 2^(k-1) * 2^(k-1)."""
    return 2 ** (2 * k - 2)


def derksen_split_count(n: int) -> int:
    """Part count of the recursive split construction for the n x n
    determinant: (5/6)^floor(n/3) * n!."""
    value = Fraction(math.factorial(n)) * Fraction(5, 6) ** (n // 3)
    if value.denominator != 1:
        raise InvariantViolation("split count must be an integer")
    return int(value)


def derksen_waring_count(n: int) -> int:
    """Each split part of total degree n opens into 2^(n-1) powers."""
    return derksen_split_count(n) * 2 ** (n - 1)
