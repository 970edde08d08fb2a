"""Named example polynomials used by the CLI and the test suite.

Everything is built programmatically and exactly; the two random ones
(the long binary-series example and anything taking an rng) record their
seed so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import List, Tuple

from .cata import series_to_biform
from .polycore import (InputError, MultiPoly, basis_exponents, monomial,
                       random_poly)

BINARY_SERIES_DEFAULT_SEED = 20240915


def _perm_sign(perm) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def determinant(n: int, grouped: bool = False) -> MultiPoly:
    """The n x n determinant; `grouped` partitions the variables by rows."""
    sig = (n,) * n if grouped else (n * n,)
    terms = {}
    for perm in itertools.permutations(range(n)):
        e = [0] * (n * n)
        for i in range(n):
            e[i * n + perm[i]] = 1
        terms[tuple(e)] = Fraction(_perm_sign(perm))
    return MultiPoly(sig, terms)


def permanent(k: int, grouped: bool = False) -> MultiPoly:
    sig = (k,) * k if grouped else (k * k,)
    terms = {}
    for perm in itertools.permutations(range(k)):
        e = [0] * (k * k)
        for i in range(k):
            e[i * k + perm[i]] = 1
        terms[tuple(e)] = Fraction(1)
    return MultiPoly(sig, terms)


def cubic_carrier() -> MultiPoly:
    """Quartic in 13 variables: each degree-3 monomial in the first three
    variables times its own extra variable.  Its rank exceeds every
    catalecticant rank by the singular-locus correction."""
    cubics = basis_exponents((3,), (3,))
    terms = {}
    for i, e in enumerate(cubics):
        full = list(e) + [0] * 10
        full[3 + i] = 1
        terms[tuple(full)] = Fraction(1)
    return MultiPoly((13,), terms)


def binary_series(seed: int = BINARY_SERIES_DEFAULT_SEED
                  ) -> Tuple[MultiPoly, int]:
    """Degree-16 form in 5 variables: G*s + H*t with G, H random of degree
    15 in the first three variables.  Returns (polynomial, seed used)."""
    rng = random.Random(seed)
    terms = {}
    for which in range(2):
        g = random_poly((3,), (15,), rng)
        for e, c in g.terms.items():
            full = list(e) + [0, 0]
            full[3 + which] = 1
            terms[tuple(full)] = c
    return MultiPoly((5,), terms), seed


def matrix_mult(n: int) -> MultiPoly:
    """Trace of a product of three generic n x n matrices, trilinear over
    three groups of n^2 variables."""
    nn = n * n
    terms = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                e = [0] * (3 * nn)
                e[i * n + j] = 1
                e[nn + j * n + k] = 1
                e[2 * nn + k * n + i] = 1
                terms[tuple(e)] = Fraction(1)
    return MultiPoly((nn, nn, nn), terms)


def binary_pencil() -> MultiPoly:
    """The two binary forms x^6 y^3 and x^4 y^5 as one biform."""
    members = [
        monomial((2,), (6, 3)),
        monomial((2,), (4, 5)),
    ]
    return series_to_biform(members)


# ---------------------------------------------------------------------------
# minor-type series of a generic m x n matrix
# ---------------------------------------------------------------------------

def _entry(m: int, n: int, i: int, j: int) -> MultiPoly:
    e = [0] * (m * n)
    e[i * n + j] = 1
    return monomial((m * n,), tuple(e))


def minors_series(m: int, n: int, k: int, kind: str = "det") -> List[MultiPoly]:
    """All k x k minor-type forms of a generic m x n matrix.

    kind 'det' gives determinants, 'perm' permanents, 'prod' the individual
    row-column products (k! of them per position choice).
    """
    if kind not in ("det", "perm", "prod"):
        raise InputError("kind must be det, perm or prod")
    if not 1 <= k <= min(m, n):
        raise InputError(f"no {k} x {k} minors in an {m} x {n} matrix")
    out = []
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            if kind == "prod":
                for perm in itertools.permutations(range(k)):
                    e = [0] * (m * n)
                    for a, i in enumerate(rows):
                        e[i * n + cols[perm[a]]] = 1
                    out.append(monomial((m * n,), tuple(e)))
                continue
            terms = {}
            for perm in itertools.permutations(range(k)):
                e = [0] * (m * n)
                for a, i in enumerate(rows):
                    e[i * n + cols[perm[a]]] = 1
                sign = _perm_sign(perm) if kind == "det" else 1
                terms[tuple(e)] = Fraction(sign)
            out.append(MultiPoly((m * n,), terms))
    return out


def minors_biform(m: int, n: int, k: int, kind: str = "det") -> MultiPoly:
    return series_to_biform(minors_series(m, n, k, kind))


FIXTURE_BUILDERS = {
    "det3": lambda: determinant(3),
    "det3-grouped": lambda: determinant(3, grouped=True),
    "det4": lambda: determinant(4),
    "per3": lambda: permanent(3),
    "per3-grouped": lambda: permanent(3, grouped=True),
    "cubic-carrier": cubic_carrier,
    "binary-series": lambda: binary_series()[0],
    "mult2": lambda: matrix_mult(2),
    "binary-pencil": binary_pencil,
}


def fixture(name: str) -> MultiPoly:
    """Look up a named fixture; minor series use 'minors:det:m,n,k'."""
    if name in FIXTURE_BUILDERS:
        return FIXTURE_BUILDERS[name]()
    if name.startswith("minors:"):
        try:
            _, kind, dims = name.split(":")
            m, n, k = (int(x) for x in dims.split(","))
        except ValueError as exc:
            raise InputError("minor fixtures look like minors:det:3,3,2") from exc
        return minors_biform(m, n, k, kind)
    raise InputError(f"unknown fixture {name!r}; known: "
                     + ", ".join(sorted(FIXTURE_BUILDERS)) + ", minors:KIND:m,n,k")
