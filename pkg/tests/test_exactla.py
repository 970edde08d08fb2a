import random
from fractions import Fraction

import pytest

from rankbounds.exactla import (IncrementalSpan, QMatrix, RankContext,
                                image_basis, in_span, intersect_subspaces,
                                kernel_basis, random_prime_31, rank_exact,
                                rank_modp, rref, solve_linear, span_rank)


def _dense_rank_oracle(rows, ncols):
    """Independent plain Gaussian elimination over Fraction."""
    work = [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rows]
    rank = 0
    col = 0
    while col < ncols and rank < len(work):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col] / work[rank][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
        col += 1
    return rank


def _random_sparse(rng, nrows, ncols, density=0.4, lo=-6, hi=6):
    rows = []
    for _ in range(nrows):
        row = {}
        for j in range(ncols):
            if rng.random() < density:
                v = rng.randint(lo, hi)
                if v:
                    row[j] = Fraction(v)
        rows.append(row)
    return rows


def test_rank_exact_matches_dense_oracle():
    rng = random.Random(100)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 8), rng.randint(1, 8)
        rows = _random_sparse(rng, nrows, ncols)
        mat = QMatrix.from_rows(rows, ncols)
        assert rank_exact(mat) == _dense_rank_oracle(rows, ncols)


def test_rank_modp_statistical_agreement():
    # modular rank equals exact rank with high probability; over 100
    # random matrices and random 31-bit primes we demand perfect agreement
    rng = random.Random(200)
    for trial in range(100):
        nrows, ncols = rng.randint(1, 7), rng.randint(1, 7)
        rows = _random_sparse(rng, nrows, ncols, lo=-20, hi=20)
        mat = QMatrix.from_rows(rows, ncols)
        p = random_prime_31(random.Random(trial))
        assert rank_modp(mat, p) == _dense_rank_oracle(rows, ncols)


def test_transpose_rank_symmetry():
    rng = random.Random(300)
    for _ in range(50):
        rows = _random_sparse(rng, rng.randint(1, 7), rng.randint(1, 7))
        mat = QMatrix.from_rows(rows, 7)
        assert rank_exact(mat) == rank_exact(mat.transpose())


def test_kernel_vectors_annihilate():
    rng = random.Random(400)
    for _ in range(20):
        ncols = rng.randint(2, 7)
        rows = _random_sparse(rng, rng.randint(1, 5), ncols)
        mat = QMatrix.from_rows(rows, ncols)
        kern = kernel_basis(mat)
        assert len(kern) == ncols - rank_exact(mat)
        for v in kern:
            for r in rows:
                assert sum(r.get(j, 0) * c for j, c in v.items()) == 0


def test_rref_is_canonical_and_solve_works():
    rows = [{0: Fraction(2), 1: Fraction(4)}, {0: Fraction(1), 1: Fraction(2)},
            {1: Fraction(1), 2: Fraction(3)}]
    red, pivots = rref(rows, 3)
    assert pivots == [0, 1]
    assert red[0][0] == 1 and red[1][1] == 1
    mat = QMatrix.from_rows([rows[0], rows[2]], 3)
    rhs = [Fraction(10), Fraction(4)]
    sol = solve_linear(mat, rhs)
    assert sol is not None
    for r, b in zip(mat.rows, rhs):
        assert sum(c * sol[j] for j, c in r.items()) == b
    assert solve_linear(QMatrix.from_rows([{0: Fraction(1)},
                                           {0: Fraction(1)}], 1),
                        [Fraction(1), Fraction(2)]) is None


def test_in_span_and_intersection():
    e1 = {0: Fraction(1)}
    e2 = {1: Fraction(1)}
    mixed = {0: Fraction(1), 1: Fraction(1)}
    coeffs = in_span(mixed, [e1, e2], 2)
    assert coeffs == [Fraction(1), Fraction(1)]
    assert in_span({2: Fraction(1)}, [e1, e2], 3) is None
    inter = intersect_subspaces([e1, e2], [mixed], 2)
    assert span_rank(inter, 2) == 1


def test_image_basis_spans_rows():
    rng = random.Random(500)
    rows = _random_sparse(rng, 6, 5)
    basis = image_basis(rows, 5)
    assert len(basis) == _dense_rank_oracle(rows, 5)
    for r in rows:
        assert in_span(r, basis, 5) is not None


def test_incremental_span_matches_span_rank():
    rng = random.Random(600)
    rows = _random_sparse(rng, 10, 6)
    span = IncrementalSpan(6)
    grew = sum(1 for r in rows if span.add(r))
    assert grew == span_rank(rows, 6)


def test_rank_context_strategies_agree():
    rng = random.Random(700)
    rows = _random_sparse(rng, 6, 6)
    mat = QMatrix.from_rows(rows, 6)
    exact = RankContext("exact", 1).rank(mat)
    modp = RankContext("modp", 1).rank(mat)
    auto = RankContext("auto", 1).rank(mat)
    assert exact == modp == auto


def test_rank_context_rejects_unknown_strategy():
    with pytest.raises(ValueError):
        RankContext("float", 0)
