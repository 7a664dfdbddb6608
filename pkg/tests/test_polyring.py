from fractions import Fraction

import pytest

from planepoisson.polyring import (
    EVERY_DEGREE,
    NOT_HOMOGENEOUS,
    Poly,
    PolyParseError,
    SparseEchelon,
    WeightSystem,
    homogeneous_components,
    monomials_of_degree,
    parse_poly,
    render_poly,
    solve_linear_exact,
    sparse_rank,
    weighted_degree,
)

from conftest import random_poly, rational


class TestParseRender:
    def test_literal_sum(self):
        assert parse_poly("x^2 + y^5") == Poly({(2, 0): 1, (0, 5): 1})

    def test_scale_after_parse(self):
        assert parse_poly("x^2+y^4").scale(-2) == Poly({(2, 0): -2, (0, 4): -2})

    def test_rational_coefficient(self):
        assert parse_poly("3/2*x*y^3") == Poly({(1, 3): Fraction(3, 2)})

    def test_unicode_minus_and_whitespace(self):
        assert parse_poly("−2*y^3") == Poly({(0, 3): -2})
        assert parse_poly("  x ^ 2 - y ") == Poly({(2, 0): 1, (0, 1): -1})

    def test_syntax_error_carries_position(self):
        with pytest.raises(PolyParseError) as err:
            parse_poly("x^2 + * y")
        assert err.value.position == 6

    def test_negative_exponent_rejected(self):
        with pytest.raises(PolyParseError, match="negative exponent"):
            parse_poly("x^-2")
        with pytest.raises(ValueError):
            Poly({(-1, 0): 1})

    def test_round_trip(self, rng):
        for _ in range(200):
            p = random_poly(rng)
            assert parse_poly(render_poly(p)) == p

    def test_zero_renders(self):
        assert render_poly(Poly.zero()) == "0"
        assert parse_poly("0") == Poly.zero()


class TestRing:
    def test_mul_examples(self):
        x2, y = Poly.monomial(2, 0), Poly.monomial(0, 1)
        assert x2 * y == Poly.monomial(2, 1)
        p = parse_poly("x^2+y^4")
        assert p * Poly.one() == p
        assert p + p.scale(-1) == Poly.zero()

    def test_ring_axioms(self, rng):
        for _ in range(100):
            p, q, r = (random_poly(rng, 6, 3) for _ in range(3))
            assert (p + q) + r == p + (q + r)
            assert p * q == q * p
            assert (p * q) * r == p * (q * r)
            assert p * (q + r) == p * q + p * r

    def test_partials_commute(self, rng):
        for _ in range(100):
            p = random_poly(rng)
            assert p.partial_x().partial_y() == p.partial_y().partial_x()

    def test_partial_examples(self):
        assert parse_poly("x^3+y^4").partial_x() == parse_poly("3*x^2")
        # x^2*y + y^3 at p=2: d/dy gives x^2 + 3y^2 (plus branch)
        assert parse_poly("x^2*y+y^3").partial_y() == parse_poly("x^2+3*y^2")
        assert parse_poly("x^2*y-y^3").partial_y() == parse_poly("x^2-3*y^2")
        assert Poly.constant(7).partial_x() == Poly.zero()


class TestGrading:
    def test_weighted_degree_examples(self):
        assert weighted_degree(parse_poly("x^3+y^5"), WeightSystem(5, 3)) == 15
        assert weighted_degree(parse_poly("x^2*y+y^3"), WeightSystem(1, 1)) == 3
        assert weighted_degree(parse_poly("x^2*y-y^3"), WeightSystem(1, 1)) == 3
        marker = weighted_degree(parse_poly("x+y^2"), WeightSystem(1, 1))
        assert marker is NOT_HOMOGENEOUS
        assert weighted_degree(Poly.zero(), WeightSystem(2, 5)) is EVERY_DEGREE

    def test_components(self):
        w = WeightSystem(1, 1)
        lam = Fraction(1, 2)
        p = parse_poly("y^3") + parse_poly("y^4").scale(lam)
        assert homogeneous_components(p, w) == {
            3: parse_poly("y^3"),
            4: Poly({(0, 4): lam}),
        }
        assert homogeneous_components(Poly.zero(), w) == {}

    def test_components_e7_product(self):
        # f(1+h) for f = x^3+x*y^3, h = l*y^2, weights (3,2)
        w = WeightSystem(3, 2)
        f, h = parse_poly("x^3+x*y^3"), parse_poly("y^2")
        comps = homogeneous_components(f * (Poly.one() + h), w)
        assert comps == {9: f, 13: f * h}

    def test_monomials_of_degree(self):
        assert monomials_of_degree(WeightSystem(4, 3), 5).monomials == ()
        assert monomials_of_degree(WeightSystem(1, 1), 1).monomials == ((0, 1), (1, 0))
        assert monomials_of_degree(WeightSystem(1, 1), 2).monomials == (
            (0, 2), (1, 1), (2, 0),
        )
        assert monomials_of_degree(WeightSystem(2, 1), -3).monomials == ()

    def test_lattice_count(self, rng):
        for _ in range(50):
            w = WeightSystem(rng.randint(1, 5), rng.randint(1, 5))
            deg = rng.randint(0, 20)
            got = monomials_of_degree(w, deg).monomials
            brute = [
                (a, b)
                for a in range(deg + 1)
                for b in range(deg + 1)
                if a * w.w1 + b * w.w2 == deg
            ]
            assert sorted(got) == sorted(brute)
            assert list(got) == sorted(got)
        for deg in range(8):
            assert len(monomials_of_degree(WeightSystem(1, 1), deg).monomials) == deg + 1


def _minor_rank(matrix):
    """Brute-force rank by scanning square minors; for small matrices only."""
    from itertools import combinations

    def det(rows, cols):
        if len(rows) == 1:
            return matrix[rows[0]][cols[0]]
        total = Fraction(0)
        for i, c in enumerate(cols):
            minor = det(rows[1:], cols[:i] + cols[i + 1:])
            total += (-1) ** i * matrix[rows[0]][c] * minor
        return total

    n, m = len(matrix), len(matrix[0]) if matrix else 0
    for size in range(min(n, m), 0, -1):
        for rows in combinations(range(n), size):
            for cols in combinations(range(m), size):
                if det(list(rows), list(cols)):
                    return size
    return 0


class TestLinearAlgebra:
    def test_identity(self):
        sol = solve_linear_exact([[1, 0], [0, 1]], [1, 0])
        assert sol.particular == [1, 0]
        assert sol.rank == 2 and sol.consistent and sol.nullspace == []

    def test_underdetermined(self):
        sol = solve_linear_exact([[1, 1]], [0])
        assert sol.particular == [0, 0]
        assert len(sol.nullspace) == 1
        v = sol.nullspace[0]
        # spans the same line as (1, -1)
        assert v[0] == -v[1] and v != [0, 0]

    def test_inconsistent_flagged(self):
        sol = solve_linear_exact([[1, 0], [1, 0]], [1, 2])
        assert not sol.consistent and sol.particular is None

    def test_random_solutions_exact(self, rng):
        for _ in range(60):
            n, m = rng.randint(1, 5), rng.randint(1, 5)
            matrix = [[rational(rng) for _ in range(m)] for _ in range(n)]
            x = [rational(rng) for _ in range(m)]
            rhs = [sum(matrix[i][j] * x[j] for j in range(m)) for i in range(n)]
            sol = solve_linear_exact(matrix, rhs)
            assert sol.consistent
            got = sol.particular
            assert all(
                sum(matrix[i][j] * got[j] for j in range(m)) == rhs[i]
                for i in range(n)
            )
            for vec in sol.nullspace:
                assert all(
                    sum(matrix[i][j] * vec[j] for j in range(m)) == 0
                    for i in range(n)
                )
            assert sol.rank + len(sol.nullspace) == m

    def test_rank_vs_minor_expansion(self, rng):
        for _ in range(40):
            n, m = rng.randint(1, 4), rng.randint(1, 4)
            matrix = [[Fraction(rng.randint(-2, 2)) for _ in range(m)] for _ in range(n)]
            assert solve_linear_exact(matrix).rank == _minor_rank(matrix)

    def test_e6_jacobian_slice_ranks(self):
        # Multiplication map (A, B) -> A f_x + B f_y for f = x^3 + y^4,
        # weights (4, 3): empty at degree 6 (rank 0), spanning at degree 8.
        w = WeightSystem(4, 3)
        f = parse_poly("x^3+y^4")
        fx, fy = f.partial_x(), f.partial_y()

        def slice_matrix(degree):
            target = monomials_of_degree(w, degree).monomials
            index = {m: i for i, m in enumerate(target)}
            cols = []
            for gen, gdeg in ((fx, 8), (fy, 9)):
                for mon in monomials_of_degree(w, degree - gdeg).monomials:
                    col = [Fraction(0)] * len(target)
                    for m, c in (Poly.monomial(*mon) * gen).terms.items():
                        col[index[m]] = c
                    cols.append(col)
            return [[col[i] for col in cols] for i in range(len(target))] if cols else []

        assert slice_matrix(6) == []  # I_f misses degree 6 entirely
        m8 = slice_matrix(8)
        assert solve_linear_exact(m8).rank == 1 == _minor_rank(m8)

    def test_sparse_matches_dense(self, rng):
        for _ in range(40):
            n, m = rng.randint(1, 6), rng.randint(1, 6)
            matrix = [[rational(rng, 2, 2) if rng.random() < 0.5 else Fraction(0)
                       for _ in range(m)] for _ in range(n)]
            cols = [
                (j, {i: matrix[i][j] for i in range(n) if matrix[i][j]})
                for j in range(m)
            ]
            assert sparse_rank(cols) == solve_linear_exact(matrix).rank

    def test_sparse_solve_exact(self, rng):
        for _ in range(40):
            n, m = rng.randint(1, 6), rng.randint(1, 6)
            matrix = [[rational(rng, 2, 2) if rng.random() < 0.6 else Fraction(0)
                       for _ in range(m)] for _ in range(n)]
            x = [rational(rng) for _ in range(m)]
            rhs = {i: v for i in range(n)
                   if (v := sum(matrix[i][j] * x[j] for j in range(m)))}
            cols = [
                (j, {i: matrix[i][j] for i in range(n) if matrix[i][j]})
                for j in range(m)
            ]
            got = SparseEchelon(cols).solve(rhs)
            assert got is not None
            for i in range(n):
                assert sum(matrix[i][j] * got.get(j, Fraction(0)) for j in range(m)) \
                    == rhs.get(i, Fraction(0))

    def test_sparse_solve_inconsistent(self):
        cols = [(0, {0: Fraction(1), 1: Fraction(1)})]
        assert SparseEchelon(cols).solve({0: Fraction(1), 1: Fraction(2)}) is None
