from fractions import Fraction

import pytest

from planepoisson.polyring import Poly, WeightSystem, parse_poly, weighted_degree
from planepoisson.polyvector import (
    Bivector,
    VectorField,
    WedgeDegreeError,
    ZeroPolyvector,
    apply,
    divergence,
    euler,
    hamiltonian,
    poisson_differential,
    polyvector_components,
    polyvector_degree,
    polyvector_weight,
    pv_equal,
    render_polyvector,
    sn_bracket,
    wedge,
    zero_polyvector,
)

from conftest import random_biv, random_homogeneous, random_poly, random_polyvector, random_vf


class TestBasics:
    def test_divergence(self):
        for w in (WeightSystem(3, 2), WeightSystem(1, 1)):
            assert divergence(euler(w)) == Poly.constant(w.w1 + w.w2)
        assert divergence(VectorField(Poly.monomial(1, 0), Poly.zero())) == Poly.one()

    def test_hamiltonian_divergence_free(self, rng):
        for _ in range(50):
            assert divergence(hamiltonian(random_poly(rng))).is_zero()

    def test_hamiltonian_examples(self):
        assert hamiltonian(parse_poly("x^3+y^4")) == VectorField(
            parse_poly("4*y^3"), parse_poly("-3*x^2")
        )
        assert hamiltonian(parse_poly("x^3+y^5")) == VectorField(
            parse_poly("5*y^4"), parse_poly("-3*x^2")
        )
        assert hamiltonian(Poly.one()).is_zero()

    def test_euler(self):
        p = 2
        w = WeightSystem(2 * p + 1, 2)
        assert euler(w) == VectorField(parse_poly("5*x"), parse_poly("2*y"))
        assert euler(WeightSystem(1, 1)) == VectorField(parse_poly("x"), parse_poly("y"))

    def test_euler_relation_on_monomials(self, rng):
        for _ in range(50):
            w = WeightSystem(rng.randint(1, 4), rng.randint(1, 4))
            a, b = rng.randint(0, 6), rng.randint(0, 6)
            m = Poly.monomial(a, b)
            assert apply(euler(w), m) == m.scale(a * w.w1 + b * w.w2)

    def test_apply_examples(self, rng):
        f = parse_poly("x^3+x*y^3")
        assert apply(hamiltonian(f), f).is_zero()
        w = WeightSystem(3, 2)
        assert apply(euler(w), f) == f.scale(9)
        dy = VectorField(Poly.zero(), Poly.one())
        assert apply(dy, parse_poly("x^2+y^4")) == parse_poly("4*y^3")
        assert apply(dy, parse_poly("x^2-y^4")) == parse_poly("-4*y^3")

    def test_weight_convention(self):
        w = WeightSystem(3, 2)
        assert polyvector_weight(VectorField(Poly.monomial(1, 0), Poly.zero()), w) == 0
        assert polyvector_weight(Bivector(Poly.one()), w) == -5
        assert polyvector_weight(parse_poly("x*y"), w) == 5

    def test_components_recombine(self, rng):
        w = WeightSystem(2, 3)
        for deg in range(3):
            for _ in range(30):
                pv = random_polyvector(rng, deg, 8)
                parts = polyvector_components(pv, w)
                total = zero_polyvector(deg)
                for part in parts.values():
                    total = total + part
                assert pv_equal(total, pv)
                for wt, part in parts.items():
                    assert polyvector_weight(part, w) == wt

    def test_render(self):
        assert render_polyvector(parse_poly("x+y")) == "x + y"
        assert render_polyvector(VectorField(parse_poly("x"), Poly.zero())) == {
            "dx": "x", "dy": "0",
        }
        assert render_polyvector(Bivector(parse_poly("2*y"))) == {"dxdy": "2*y"}


class TestBracketWedge:
    def test_bracket_hamiltonian_euler(self, rng):
        # [H_f, e W] = -d f H_e for weight-homogeneous f, e of fitting degrees
        w = WeightSystem(1, 1)
        f = parse_poly("x^2*y+y^3")  # d = 3
        for e_text in ("y", "x"):
            e = parse_poly(e_text)
            lhs = sn_bracket(hamiltonian(f), euler(w).mul_poly(e))
            rhs = hamiltonian(e).mul_poly(f).scale(-3)
            assert lhs == rhs

    def test_bracket_euler_bivector(self, rng):
        # [e W, u dx^dy] = (deg(u) - d) e u dx^dy with d = w1 + w2
        w = WeightSystem(3, 2)
        for _ in range(30):
            a, b = rng.randint(0, 3), rng.randint(0, 3)
            u = Poly.monomial(a, b)
            e = random_homogeneous(rng, w, 4)
            got = sn_bracket(euler(w).mul_poly(e), Bivector(u))
            expected = Bivector((e * u).scale(w.degree((a, b)) - (w.w1 + w.w2)))
            assert got == expected

    def test_function_bracket_vanishes(self, rng):
        for _ in range(20):
            assert sn_bracket(random_poly(rng), random_poly(rng)).is_zero()

    def test_wedge_examples(self):
        w = WeightSystem(3, 2)
        f = parse_poly("x^3+x*y^3")
        g = parse_poly("y^2")
        got = wedge(hamiltonian(f), euler(w).mul_poly(g))
        assert got == Bivector((g * f).scale(9))

        X = VectorField(parse_poly("x"), parse_poly("y^2"))
        assert wedge(X, X).is_zero()
        assert wedge(Poly.one(), X) == X

    def test_wedge_degree_guard(self, rng):
        X, B = random_vf(rng), random_biv(rng)
        with pytest.raises(WedgeDegreeError):
            wedge(X, B)
        with pytest.raises(WedgeDegreeError):
            wedge(B, B)

    def test_formula_pair_consistency(self, rng):
        # the (1,2) closed form agrees with the two displayed component rules
        for _ in range(100):
            f = random_poly(rng, 8)
            g = random_poly(rng, 8)
            B = Bivector(g)
            got_x = sn_bracket(VectorField(f, Poly.zero()), B)
            assert got_x == Bivector(f * g.partial_x() - g * f.partial_x())
            got_y = sn_bracket(VectorField(Poly.zero(), f), B)
            assert got_y == Bivector(f * g.partial_y() - g * f.partial_y())

    def test_weight_bookkeeping(self, rng):
        # if [W, X] = r X then X raises weighted degree by exactly r
        w = WeightSystem(2, 3)
        W = euler(w)
        for _ in range(50):
            comp = rng.choice([0, 1])
            a, b = rng.randint(0, 4), rng.randint(0, 4)
            m = Poly.monomial(a, b)
            X = VectorField(m, Poly.zero()) if comp == 0 else VectorField(Poly.zero(), m)
            r = polyvector_weight(X, w)
            assert sn_bracket(W, X) == X.scale(r)
            p = random_homogeneous(rng, w, rng.randint(0, 9))
            deg = weighted_degree(p, w)
            if isinstance(deg, int):
                out = apply(X, p)
                if out:
                    assert weighted_degree(out, w) == deg + r


def _graded_signs(p, q):
    return -1 if ((p - 1) * (q - 1)) % 2 else 1


class TestGradedIdentities:
    def test_differential_examples(self, rng):
        w = WeightSystem(3, 2)
        f = parse_poly("x^2+y^3")  # d = 6
        pi = Bivector(f)
        assert poisson_differential(pi, Poly.one()).is_zero()
        assert poisson_differential(pi, hamiltonian(f)).is_zero()
        # delta^1(gW) = (d - deg g - w1 - w2) g f dx^dy, via the Euler relation
        for _ in range(30):
            deg = rng.randint(0, 8)
            g = random_homogeneous(rng, w, deg)
            got = poisson_differential(pi, euler(w).mul_poly(g))
            assert got == Bivector((g * f).scale(6 - deg - 5))
        g = random_homogeneous(rng, w, 1)  # d - w1 - w2 = 1: cocycle degree
        assert poisson_differential(pi, euler(w).mul_poly(g)).is_zero()

    def test_delta_squared_zero(self, rng):
        for _ in range(110):
            pi = random_biv(rng, 8)
            g = random_poly(rng, 8)
            assert poisson_differential(pi, poisson_differential(pi, g)).is_zero()
            X = random_vf(rng, 8)
            out = poisson_differential(pi, poisson_differential(pi, X))
            assert isinstance(out, ZeroPolyvector)

    def test_graded_antisymmetry(self, rng):
        for _ in range(120):
            p, q = rng.randint(0, 2), rng.randint(0, 2)
            P = random_polyvector(rng, p, 6)
            Q = random_polyvector(rng, q, 6)
            lhs = sn_bracket(P, Q)
            rhs = sn_bracket(Q, P).scale(-_graded_signs(p, q))
            assert pv_equal(lhs, rhs)

    def test_graded_jacobi(self, rng):
        # [F, [G, H]] = [[F, G], H] + (-1)^((p-1)(q-1)) [G, [F, H]]
        checked = 0
        for _ in range(120):
            p, q, r = (rng.randint(0, 2) for _ in range(3))
            F = random_polyvector(rng, p, 5)
            G = random_polyvector(rng, q, 5)
            H = random_polyvector(rng, r, 5)
            lhs = sn_bracket(F, sn_bracket(G, H))
            rhs = sn_bracket(sn_bracket(F, G), H)
            term = sn_bracket(G, sn_bracket(F, H)).scale(_graded_signs(p, q))
            assert pv_equal(lhs, rhs + term)
            checked += 1
        assert checked >= 100

    def test_graded_leibniz(self, rng):
        # [F^G, H] = [F,H]^G + (-1)^((r-1)p) F^[G,H] whenever F^G is representable
        checked = 0
        while checked < 110:
            p = rng.randint(0, 2)
            q = rng.randint(0, 2 - p)
            r = rng.randint(0, 2) if p + q < 2 else rng.randint(0, 2)
            if p + q + r > 3:
                continue
            F = random_polyvector(rng, p, 5)
            G = random_polyvector(rng, q, 5)
            H = random_polyvector(rng, r, 5)
            lhs = sn_bracket(wedge(F, G), H)
            rhs = wedge(sn_bracket(F, H), G)
            sign = -1 if ((r - 1) * p) % 2 else 1
            rhs = rhs + wedge(F, sn_bracket(G, H)).scale(sign)
            assert pv_equal(lhs, rhs)
            checked += 1
