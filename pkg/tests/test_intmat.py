"""Smith normal form and element orders, checked against independent oracles.

The oracle for invariant factors uses determinant divisors: the product
d1*...*dk equals the gcd of all k x k minors.  That shares no code with the
elimination algorithm under test.
"""

import math
import random
from itertools import combinations

import pytest

from buildingtorsion.errors import DimensionError
from buildingtorsion.intmat import (
    ElementOrder,
    IntMatrix,
    det,
    element_order,
    format_matrix,
    in_row_span,
    parse_matrix,
    snf,
)


def cofactor_det(sub):
    n = len(sub)
    if n == 0:
        return 1
    if n == 1:
        return sub[0][0]
    total = 0
    for j in range(n):
        if sub[0][j]:
            rest = [r[:j] + r[j + 1 :] for r in sub[1:]]
            total += (-1) ** j * sub[0][j] * cofactor_det(rest)
    return total


def oracle_invariant_factors(mat):
    """Invariant factors via gcds of k x k minors (determinant divisors)."""
    rows = mat.to_lists()
    nr, nc = mat.rows, mat.cols
    k_max = min(nr, nc)
    divisors = [1]
    for k in range(1, k_max + 1):
        g = 0
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                g = math.gcd(g, cofactor_det(sub))
        divisors.append(g)
    factors = []
    for k in range(1, k_max + 1):
        if divisors[k] == 0:
            factors.append(0)
        else:
            factors.append(divisors[k] // divisors[k - 1])
    return tuple(factors)


def random_matrix(rng, max_dim=6, bound=30):
    nr = rng.randint(1, max_dim)
    nc = rng.randint(1, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(nc)] for _ in range(nr)]
    )


def verify_snf(a, result):
    uav = result.U.mul(a).mul(result.V)
    assert uav.entries == result.D.entries, "U*A*V != D"
    assert abs(det(result.U)) == 1
    assert abs(det(result.V)) == 1
    factors = result.invariant_factors
    assert len(factors) == min(a.rows, a.cols)
    seen_zero = False
    for i, f in enumerate(factors):
        assert f >= 0
        if f == 0:
            seen_zero = True
        else:
            assert not seen_zero, "positive factor after a zero"
            if i + 1 < len(factors) and factors[i + 1]:
                assert factors[i + 1] % f == 0
    # D is diagonal and carries exactly the factors
    for i in range(result.D.rows):
        for j in range(result.D.cols):
            expect = factors[i] if i == j else 0
            assert result.D.at(i, j) == expect


def test_snf_pinned_examples():
    assert snf(IntMatrix.from_rows([[0]])).invariant_factors == (0,)
    assert snf(IntMatrix.from_rows([[2, 0], [0, 3]])).invariant_factors == (1, 6)
    assert snf(IntMatrix.identity(3)).invariant_factors == (1, 1, 1)


def test_snf_empty_rejected():
    with pytest.raises(DimensionError):
        snf(IntMatrix.zeros(0, 3))
    with pytest.raises(DimensionError):
        snf(IntMatrix.zeros(2, 0))


def test_snf_exact_identities_random():
    rng = random.Random(20260819)
    for _ in range(60):
        a = random_matrix(rng, max_dim=8, bound=50)
        verify_snf(a, snf(a))


def test_snf_against_minor_gcd_oracle():
    rng = random.Random(4096)
    for _ in range(40):
        a = random_matrix(rng, max_dim=4, bound=12)
        assert snf(a).invariant_factors == oracle_invariant_factors(a)
    # a few shapes that force zero factors
    for rows in (
        [[2, 4], [1, 2]],
        [[6, 10, 15]],
        [[0, 0], [0, 0], [0, 0]],
        [[3, 0], [0, 0], [9, 0]],
    ):
        a = IntMatrix.from_rows(rows)
        assert snf(a).invariant_factors == oracle_invariant_factors(a)


def test_element_order_pinned():
    assert element_order(IntMatrix.from_rows([[2, 0]]), 0) == ElementOrder(True, 2)
    assert element_order(IntMatrix.from_rows([[1, 0]]), 0) == ElementOrder(True, 1)
    assert element_order(IntMatrix.from_rows([[0, 1]]), 0) == ElementOrder(False)
    assert element_order(IntMatrix.zeros(2, 3), 1) == ElementOrder(False)
    # Z/4 x Z/6 style presentation
    rel = IntMatrix.from_rows([[4, 0], [0, 6]])
    assert element_order(rel, 0) == ElementOrder(True, 4)
    assert element_order(rel, 1) == ElementOrder(True, 6)
    # order of e0+? along a skewed lattice: 2*e0 = sum of rows [[2, 2],[0,4]]?
    rel = IntMatrix.from_rows([[2, 2], [0, 4]])
    # 4*e0 = 2*(2,2) - (0,4): finite order 4
    assert element_order(rel, 0) == ElementOrder(True, 4)


def oracle_order_small(rel, idx, cap=8):
    """Brute-force the least m <= cap with m*e_idx an integer row combination.

    Only usable when the coefficient search space is tiny."""
    rows = rel.to_lists()
    n = rel.cols
    span = {tuple([0] * n)}
    frontier = {tuple([0] * n)}
    # breadth-limited closure of the row lattice within a box
    box = 4 * cap * max((abs(x) for r in rows for x in r), default=1) + 1
    for _ in range(6 * cap):
        new = set()
        for v in frontier:
            for r in rows:
                for s in (1, -1):
                    w = tuple(a + s * b for a, b in zip(v, r))
                    if w not in span and all(abs(x) <= box for x in w):
                        new.add(w)
        if not new:
            break
        span |= new
        frontier = new
    for m in range(1, cap + 1):
        target = tuple(m if j == idx else 0 for j in range(n))
        if target in span:
            return m
    return None


def test_element_order_against_lattice_closure():
    cases = [
        ([[2, 0]], 0, 2),
        ([[3, 0], [0, 5]], 0, 3),
        ([[2, 2], [0, 4]], 0, 4),
        ([[2, 1], [0, 1]], 0, 2),
        ([[1, 1], [1, -1]], 0, 2),
    ]
    for rows, idx, expected in cases:
        rel = IntMatrix.from_rows(rows)
        got = element_order(rel, idx)
        assert got == ElementOrder(True, expected)
        assert oracle_order_small(rel, idx) == expected


def test_element_order_invariant_under_presentation_moves():
    rng = random.Random(7)
    for _ in range(30):
        nr = rng.randint(1, 5)
        nc = rng.randint(1, 5)
        rows = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
        idx = rng.randrange(nc)
        base = element_order(IntMatrix.from_rows(rows), idx)

        perm = rows[:]
        rng.shuffle(perm)
        assert element_order(IntMatrix.from_rows(perm), idx) == base

        i = rng.randrange(nr)
        negated = [r[:] for r in rows]
        negated[i] = [-x for x in negated[i]]
        assert element_order(IntMatrix.from_rows(negated), idx) == base

        if nr >= 2:
            i, j = rng.sample(range(nr), 2)
            added = [r[:] for r in rows]
            added[i] = [a + b for a, b in zip(added[i], rows[j])]
            assert element_order(IntMatrix.from_rows(added), idx) == base


def test_in_row_span():
    rel = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert in_row_span(rel, [2, 3])
    assert in_row_span(rel, [0, 0])
    assert not in_row_span(rel, [1, 0])
    assert not in_row_span(rel, [2, 1])
    # spanning a sublattice of rank 1 inside Z^2
    rel = IntMatrix.from_rows([[2, 4]])
    assert in_row_span(rel, [6, 12])
    assert not in_row_span(rel, [2, 2])


def test_matrix_text_roundtrip():
    a = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert parse_matrix(format_matrix(a)) == a
    text = "2 2\n2 0\n0 3\n"
    assert format_matrix(parse_matrix(text)) == text


def test_matrix_parse_errors():
    from buildingtorsion.errors import ParseError

    with pytest.raises(ParseError):
        parse_matrix("")
    with pytest.raises(ParseError):
        parse_matrix("2 2\n1 2 3\n4 5 6\n")
    with pytest.raises(ParseError) as exc:
        parse_matrix("1 1\nx\n")
    assert exc.value.line_number == 2


def test_det_matches_cofactor_expansion():
    rng = random.Random(99)
    for _ in range(25):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det(IntMatrix.from_rows(rows)) == cofactor_det(rows)
