import random
from fractions import Fraction

from gradedmf.linalg import (
    SpanTracker,
    determinant,
    kernel_basis,
    rank,
    rank_bareiss,
    rref,
    solve,
)


def F(x):
    return Fraction(x)


def test_kernel_examples():
    eye = [[F(1), F(0)], [F(0), F(1)]]
    assert kernel_basis(eye) == []
    assert kernel_basis([[F(1), F(1)]]) == [[F(1), F(-1)]]
    assert kernel_basis([], ncols=2) == [[F(1), F(0)], [F(0), F(1)]]
    assert kernel_basis([[F(0), F(0)]], ncols=2) == [[F(1), F(0)], [F(0), F(1)]]


def _random_matrix(rng, nr, nc):
    return [
        [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(nc)]
        for _ in range(nr)
    ]


def test_two_paths_agree_and_kernel_is_exact():
    rng = random.Random(0)
    for _ in range(250):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        m = _random_matrix(rng, nr, nc)
        r1 = rank(m)
        r2 = rank_bareiss(m)
        assert r1 == r2
        kernel = kernel_basis(m)
        assert len(kernel) == nc - r1
        for v in kernel:
            for row in m:
                assert sum(a * b for a, b in zip(row, v)) == 0
        if kernel:
            # independence: the kernel vectors have full rank themselves
            assert rank(kernel) == len(kernel)


def test_solve():
    m = [[F(2), F(1)], [F(0), F(3)]]
    sol = solve(m, [F(5), F(6)])
    assert sol == [Fraction(3, 2), F(2)]
    assert solve([[F(1), F(1)], [F(1), F(1)]], [F(1), F(2)]) is None
    rng = random.Random(1)
    for _ in range(100):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_matrix(rng, nr, nc)
        x = [Fraction(rng.randint(-4, 4)) for _ in range(nc)]
        rhs = [sum(a * b for a, b in zip(row, x)) for row in m]
        sol = solve(m, rhs)
        assert sol is not None
        assert [sum(a * b for a, b in zip(row, sol)) for row in m] == rhs


def test_determinant():
    assert determinant([[F(1), F(2)], [F(3), F(4)]]) == F(-2)
    assert determinant([[Fraction(1, 2)]]) == Fraction(1, 2)
    assert determinant([]) == F(1)
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(1, 5)
        m = _random_matrix(rng, n, n)
        d = determinant(m)
        assert (d == 0) == (rank(m) < n)


def test_span_tracker():
    span = SpanTracker(3)
    assert span.add([F(1), F(1), F(0)])
    assert not span.add([F(2), F(2), F(0)])
    assert span.add([F(0), F(1), F(1)])
    residue = span.reduce([F(1), F(0), F(-1)])
    assert residue == [F(0), F(0), F(0)]
    assert span.dim == 2


def test_rref_shape():
    pivots, m = rref([[F(0), F(2)], [F(0), F(4)]])
    assert pivots == [1]
    assert m[0] == [F(0), F(1)]
