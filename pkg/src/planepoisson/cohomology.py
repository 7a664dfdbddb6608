"""Poisson structure record, canonical HP bases, and cocycle normalization.

The canonical bases are
    HP0 = K*1
    HP1 = K*(1+h)H_f  (+)  P_{d-w1-w2}*(1+h)W
    HP2 = M_f dx^dy   (+)  P_{d-w1-w2}*f dx^dy
and normalization reduces arbitrary cocycles to coordinates in them: HP2
by the graded reduction chain (division by the Jacobian ideal plus the
Euler-field corrections), HP1 by an exact linear solve in a jet space,
self-certified by the returned witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polyring import (
    EVERY_DEGREE,
    Monomial,
    Poly,
    Rational,
    SparseEchelon,
    WeightSystem,
    homogeneous_components,
    monomials_of_degree,
    render_monomial,
    weighted_degree,
)
from .polyvector import (
    Bivector,
    VectorField,
    apply,
    divergence,
    euler,
    hamiltonian,
    poisson_differential,
    polyvector_components,
    polyvector_weight,
)
from .milnor import (
    MilnorBasis,
    NotWeightHomogeneousError,
    PSpaceBasis,
    jacobian_decompose,
    milnor_basis,
    p_space,
)


class StructureError(ValueError):
    pass


class NotACocycleError(ValueError):
    pass


class JetOrderError(RuntimeError):
    """Jet solves at consecutive orders disagree (or the window is too small)."""


@dataclass(frozen=True)
class PoissonStructure:
    """Validated record for Pi = f*(1+h) dx^dy.

    f is weight-homogeneous of degree d > 0 with finite codimension; h is
    zero or weight-homogeneous of degree exactly d - w1 - w2 > 0.
    """

    f: Poly
    h: Poly
    w: WeightSystem
    d: int
    milnor: MilnorBasis
    pspace: PSpaceBasis
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def s(self) -> int:
        return self.d - self.w.w1 - self.w.w2

    @property
    def c(self) -> int:
        return self.milnor.c

    @property
    def r(self) -> int:
        return self.pspace.r

    @property
    def one_plus_h(self) -> Poly:
        return Poly.one() + self.h

    @property
    def pi(self) -> Bivector:
        return Bivector(self.f * self.one_plus_h)

    # canonical representatives ------------------------------------------

    def rep_u(self) -> VectorField:
        return hamiltonian(self.f).mul_poly(self.one_plus_h)

    def rep_v(self, j: int) -> VectorField:
        e = Poly.monomial(*self.pspace.monomials[j])
        return euler(self.w).mul_poly(e * self.one_plus_h)

    def rep_w(self, i: int) -> Bivector:
        return Bivector(Poly.monomial(*self.milnor.monomials[i]))

    def rep_t(self, j: int) -> Bivector:
        return Bivector(Poly.monomial(*self.pspace.monomials[j]) * self.f)

    def default_jet_order(self) -> int:
        return 4 * self.d


def make_structure(
    f: Poly,
    h: Poly,
    w: WeightSystem,
    basis_override: Sequence[Monomial] | None = None,
) -> PoissonStructure:
    d = weighted_degree(f, w)
    if not isinstance(d, int):
        raise StructureError("f must be a nonzero weight-homogeneous polynomial")
    if d <= 0:
        raise StructureError(f"f must have positive weighted degree, got {d}")
    s = d - w.w1 - w.w2
    if not h.is_zero():
        dh = weighted_degree(h, w)
        if not isinstance(dh, int):
            raise StructureError("h must be weight-homogeneous or zero")
        if s <= 0:
            raise StructureError(
                "h must be zero when d - w1 - w2 <= 0 (no admissible degree)"
            )
        if dh != s:
            raise StructureError(
                f"h must have weighted degree d - w1 - w2 = {s}, got {dh}"
            )
    basis = milnor_basis(f, w, basis_override)  # raises on infinite codimension
    return PoissonStructure(f, h, w, d, basis, p_space(d, w))


def hp_dimensions(P: PoissonStructure) -> tuple[int, int, int, int]:
    return (1, 1 + P.r, P.c + P.r, 0)


# -- cohomology classes -------------------------------------------------------


@dataclass(frozen=True)
class HP1Class:
    """Coordinates alpha on (1+h)H_f and beta_j on e_j(1+h)W."""

    alpha: Rational
    beta: tuple[Rational, ...]

    def is_zero(self) -> bool:
        return not self.alpha and not any(self.beta)

    def __add__(self, other: "HP1Class") -> "HP1Class":
        return HP1Class(
            self.alpha + other.alpha,
            tuple(a + b for a, b in zip(self.beta, other.beta)),
        )

    def scale(self, cst) -> "HP1Class":
        c = Fraction(cst)
        return HP1Class(c * self.alpha, tuple(c * b for b in self.beta))

    def representative(self, P: PoissonStructure) -> VectorField:
        out = P.rep_u().scale(self.alpha)
        for j, b in enumerate(self.beta):
            if b:
                out = out + P.rep_v(j).scale(b)
        return out

    def to_json(self, P: PoissonStructure) -> dict:
        return {
            "alpha": str(self.alpha),
            "beta": [
                {"e": label, "coeff": str(b)}
                for label, b in zip(P.pspace.labels(), self.beta)
            ],
        }


@dataclass(frozen=True)
class HP2Class:
    """Coordinates lam_i on u_i dx^dy and q_j on e_j*f dx^dy."""

    lam: tuple[Rational, ...]
    q: tuple[Rational, ...]

    def is_zero(self) -> bool:
        return not any(self.lam) and not any(self.q)

    def __add__(self, other: "HP2Class") -> "HP2Class":
        return HP2Class(
            tuple(a + b for a, b in zip(self.lam, other.lam)),
            tuple(a + b for a, b in zip(self.q, other.q)),
        )

    def scale(self, cst) -> "HP2Class":
        c = Fraction(cst)
        return HP2Class(tuple(c * v for v in self.lam), tuple(c * v for v in self.q))

    def representative(self, P: PoissonStructure) -> Bivector:
        coef = Poly.zero()
        for i, v in enumerate(self.lam):
            if v:
                coef = coef + Poly.monomial(*P.milnor.monomials[i], v)
        for j, v in enumerate(self.q):
            if v:
                coef = coef + (Poly.monomial(*P.pspace.monomials[j], v) * P.f)
        return Bivector(coef)

    def to_json(self, P: PoissonStructure) -> dict:
        return {
            "lambda": [
                {"monomial": label, "coeff": str(v)}
                for label, v in zip(P.milnor.labels(), self.lam)
            ],
            "q": [
                {"e": label, "coeff": str(v)}
                for label, v in zip(P.pspace.labels(), self.q)
            ],
        }


def zero_hp1(P: PoissonStructure) -> HP1Class:
    return HP1Class(Fraction(0), (Fraction(0),) * P.r)


def zero_hp2(P: PoissonStructure) -> HP2Class:
    return HP2Class((Fraction(0),) * P.c, (Fraction(0),) * P.r)


# -- Euler-field corrections (Lemma III.1 constructions) ----------------------


def lemma31(X: VectorField, P: PoissonStructure, variant: str) -> VectorField:
    """The three vector-field corrections; each identity is re-checked exactly.

    (a) Z with X(fh) - div(X) fh = Z(f)
    (b) requires deg(X) != d - w1 - w2; Y with X(f) = Y(f) - div(Y) f
    (c) requires deg(X) != 0; Y of weight deg(X) + d - w1 - w2 with
        X(fh) - div(X) fh = Y(f) - div(Y) f
    """
    w, f, h, d = P.w, P.f, P.h, P.d
    deg = polyvector_weight(X, w)
    if deg is not EVERY_DEGREE and not isinstance(deg, int):
        raise NotWeightHomogeneousError("X must be weight-homogeneous")
    zero_vf = VectorField(Poly.zero(), Poly.zero())
    if X.is_zero():
        return zero_vf
    fh = f * h
    div_x = divergence(X)
    lhs = apply(X, fh) - div_x * fh

    if variant == "a":
        coef = (apply(X, h) - div_x * h).scale(Fraction(1, d))
        Z = euler(w).mul_poly(coef) + X.mul_poly(h)
        if apply(Z, f) != lhs:
            raise AssertionError("lemma31(a) identity failed")
        return Z

    if variant == "b":
        if deg == P.s:
            raise ValueError("variant (b) requires deg(X) != d - w1 - w2")
        Y = X + euler(w).mul_poly(div_x.scale(Fraction(1, P.s - deg)))
        if apply(X, f) != apply(Y, f) - divergence(Y) * f:
            raise AssertionError("lemma31(b) identity failed")
        return Y

    if variant == "c":
        if deg == 0:
            raise ValueError("variant (c) requires deg(X) != 0")
        Y = X.mul_poly(h) - euler(w).mul_poly(apply(X, h).scale(Fraction(2, deg)))
        deg_y = polyvector_weight(Y, w)
        if deg_y is not EVERY_DEGREE and deg_y != deg + P.s:
            raise AssertionError("lemma31(c) degree bookkeeping failed")
        if lhs != apply(Y, f) - divergence(Y) * f:
            raise AssertionError("lemma31(c) identity failed")
        return Y

    raise ValueError(f"unknown variant {variant!r}")


# -- HP2 normalization ---------------------------------------------------------


@dataclass(frozen=True)
class ReductionStep:
    """Audit record for one weight-homogeneous component of the input."""

    degree: int
    lambdas: tuple[Rational, ...]
    cofactor: VectorField
    k: int | None
    chain: tuple[VectorField, ...]
    f_part: Poly


def _expand_in_e(g: Poly, P: PoissonStructure) -> tuple[Rational, ...]:
    coords = [Fraction(0)] * P.r
    index = {m: j for j, m in enumerate(P.pspace.monomials)}
    for mon, c in g.terms.items():
        if mon not in index:
            raise AssertionError(
                f"f-part {render_monomial(mon)} lies outside P_{P.s}"
            )
        coords[index[mon]] = c
    return tuple(coords)


def normalize_hp2_pi0(B: Bivector, P: PoissonStructure) -> HP2Class:
    """Reduction for Pi_0 = f dx^dy (h = 0): per weight-homogeneous component
    g, either the Milnor coordinates of g or (at degree 2d - w1 - w2) the
    divergence of the cofactor, expanded in the e_j."""
    if not P.h.is_zero():
        raise StructureError("normalize_hp2_pi0 requires h = 0")
    return _normalize_hp2(B, P, force_pi0=True)[0]


def normalize_hp2_pi(B: Bivector, P: PoissonStructure) -> HP2Class:
    return _normalize_hp2(B, P)[0]


def normalize_hp2_pi_traced(
    B: Bivector, P: PoissonStructure
) -> tuple[HP2Class, list[ReductionStep]]:
    return _normalize_hp2(B, P)


def _normalize_hp2(
    B: Bivector, P: PoissonStructure, force_pi0: bool = False
) -> tuple[HP2Class, list[ReductionStep]]:
    result = zero_hp2(P)
    trace: list[ReductionStep] = []
    s = P.s
    top = 2 * P.d - P.w.w1 - P.w.w2
    max_k = -(-P.d // s) + 1 if s > 0 else None  # ceil(d/s) + 1

    for degree, g in homogeneous_components(B.coef, P.w).items():
        dec = jacobian_decompose(g, P.f, P.w, P.milnor)
        lam = dec.lambdas
        X = dec.cofactor
        k: int | None = None
        chain: tuple[VectorField, ...] = ()
        f_part = Poly.zero()

        if force_pi0 or s <= 0:
            # Pi_0 branch: only the top degree needs the divergence correction.
            if degree == top:
                if any(lam):
                    raise AssertionError("nonzero Milnor coordinates above the bound")
                f_part = divergence(X)
                lam = (Fraction(0),) * P.c
        else:
            shift = P.d - degree
            if shift % s == 0 and shift // s >= -1:
                k = shift // s
                if k == -1:
                    if any(lam):
                        raise AssertionError(
                            "nonzero Milnor coordinates above the bound"
                        )
                    f_part = divergence(X)
                else:
                    if max_k is not None and k > max_k:
                        raise AssertionError("reduction chain exceeds degree ledger")
                    if not X.is_zero():
                        cur = lemma31(X, P, "b")
                        steps = [cur]
                        for i in range(1, k + 1):
                            if cur.is_zero():
                                break
                            expected = (i - 1 - k) * s
                            got = polyvector_weight(cur, P.w)
                            if got is not EVERY_DEGREE and got != expected:
                                raise AssertionError(
                                    "reduction chain degree ledger violated"
                                )
                            cur = lemma31(cur, P, "c")
                            steps.append(cur)
                        chain = tuple(steps)
                        if not cur.is_zero() and len(steps) == k + 1:
                            # Each chain step trades E_i = X_i(fh) - div(X_i) fh
                            # for -E_{i+1} modulo coboundaries, so the final
                            # 2*X_k(h)*f contribution carries (-1)^(k+1).
                            f_part = apply(cur, P.h).scale(-2 if k % 2 == 0 else 2)

        contrib = HP2Class(lam, _expand_in_e(f_part, P))
        result = result + contrib
        trace.append(ReductionStep(degree, lam, X, k, chain, f_part))

    return result, trace


# -- jet-space solvers ---------------------------------------------------------


def _jet_monomials(w: WeightSystem, max_degree: int) -> list[Monomial]:
    out = []
    for degree in range(max_degree + 1):
        out.extend(monomials_of_degree(w, degree).monomials)
    return out


def _vf_rowvec(X: VectorField) -> dict:
    vec = {}
    for mon, c in X.p.terms.items():
        vec[(0,) + mon] = c
    for mon, c in X.q.terms.items():
        vec[(1,) + mon] = c
    return vec


def _biv_rowvec(B: Bivector) -> dict:
    return dict(B.coef.terms)


def _delta_shift(P: PoissonStructure) -> int:
    """Maximal weight raise of the differential (2s for h != 0, else s)."""
    s = P.s
    return 2 * s if not P.h.is_zero() else max(s, 0)


def _vf_jet_columns(P: PoissonStructure, max_weight: int):
    """delta^1 columns over the monomial vector fields of weight <= N."""
    cols = []
    pi = P.pi
    for comp, wshift in ((0, P.w.w1), (1, P.w.w2)):
        for mon in _jet_monomials(P.w, max_weight + wshift):
            g = Poly.monomial(*mon)
            X = VectorField(g, Poly.zero()) if comp == 0 else VectorField(Poly.zero(), g)
            weight = P.w.degree(mon) - wshift
            colkey = (weight, comp) + mon
            cols.append((colkey, _biv_rowvec(poisson_differential(pi, X))))
    cols.sort(key=lambda item: item[0])
    return cols


def _clip_vf_rowvec(vec: dict, w: WeightSystem, order: int) -> dict:
    return {
        key: val
        for key, val in vec.items()
        if w.degree(key[1:]) - (w.w1 if key[0] == 0 else w.w2) <= order
    }


def _clip_biv_rowvec(vec: dict, w: WeightSystem, order: int) -> dict:
    cut = order + w.w1 + w.w2
    return {mon: val for mon, val in vec.items() if w.degree(mon) <= cut}


def _vf_weight_le(X: VectorField, w: WeightSystem, order: int) -> bool:
    return all(w.degree(m) - w.w1 <= order for m in X.p.terms) and all(
        w.degree(m) - w.w2 <= order for m in X.q.terms
    )


def _biv_weight_le(B: Bivector, w: WeightSystem, order: int) -> bool:
    return all(w.degree(m) - w.w1 - w.w2 <= order for m in B.coef.terms)


def _hp1_echelon(P: PoissonStructure, order: int) -> SparseEchelon:
    # Quotient complex of jet order `order`: target coordinates of weight
    # > order are dropped, so formal (power-series) witnesses truncate to
    # solutions here.
    key = ("hp1", order)
    if key not in P._cache:
        w = P.w
        cols = [((0, 0, 0, 0), _clip_vf_rowvec(_vf_rowvec(P.rep_u()), w, order))]
        for j in range(P.r):
            cols.append(
                ((1, j, 0, 0), _clip_vf_rowvec(_vf_rowvec(P.rep_v(j)), w, order))
            )
        pi = P.pi
        for mon in _jet_monomials(w, order):
            if mon == (0, 0):
                continue
            colkey = (2, w.degree(mon)) + mon
            vec = _vf_rowvec(poisson_differential(pi, Poly.monomial(*mon)))
            cols.append((colkey, _clip_vf_rowvec(vec, w, order)))
        P._cache[key] = SparseEchelon(cols)
    return P._cache[key]


def _hp1_coboundary_echelon(P: PoissonStructure, order: int) -> SparseEchelon:
    key = ("hp1cob", order)
    if key not in P._cache:
        pi = P.pi
        cols = []
        for mon in _jet_monomials(P.w, order):
            if mon == (0, 0):
                continue
            colkey = (P.w.degree(mon),) + mon
            vec = _vf_rowvec(poisson_differential(pi, Poly.monomial(*mon)))
            cols.append((colkey, _clip_vf_rowvec(vec, P.w, order)))
        P._cache[key] = SparseEchelon(cols)
    return P._cache[key]


def _hp2_coboundary_echelon(P: PoissonStructure, order: int) -> SparseEchelon:
    key = ("hp2cob", order)
    if key not in P._cache:
        cols = [
            (colkey, _clip_biv_rowvec(vec, P.w, order))
            for colkey, vec in _vf_jet_columns(P, order)
        ]
        P._cache[key] = SparseEchelon(cols)
    return P._cache[key]


def is_cocycle_hp1(X: VectorField, P: PoissonStructure) -> bool:
    return poisson_differential(P.pi, X).is_zero()


def normalize_hp1(
    X: VectorField, P: PoissonStructure, jet_order: int | None = None
) -> HP1Class:
    """Write a 1-cocycle as alpha*(1+h)H_f + sum(beta_j e_j(1+h)W) + delta(G)
    in the jet-order-N quotient complex (default N = 4d).

    The solve is repeated at N + (d - w1 - w2); disagreeing coordinates
    raise JetOrderError.  The returned class is certified by arithmetic:
    the residual of the witness decomposition vanishes up to weight N.
    """
    if not is_cocycle_hp1(X, P):
        raise NotACocycleError("input vector field is not a 1-cocycle")
    if X.is_zero():
        return zero_hp1(P)
    order = P.default_jet_order() if jet_order is None else jet_order
    if not _vf_weight_le(X, P.w, order):
        raise JetOrderError(f"cocycle exceeds jet order {order}")
    first = _solve_hp1(X, P, order)
    shift = max(P.s, 1)
    second = _solve_hp1(X, P, order + shift)
    if first is None or second is None or first[:2] != second[:2]:
        raise JetOrderError(
            f"normalize_hp1 did not stabilize between orders "
            f"{order} and {order + shift}"
        )
    alpha, beta, witness = first
    rebuilt = P.rep_u().scale(alpha) + poisson_differential(P.pi, witness)
    for j, b in enumerate(beta):
        rebuilt = rebuilt + P.rep_v(j).scale(b)
    if _clip_vf_rowvec(_vf_rowvec(rebuilt - X), P.w, order):
        raise AssertionError("normalize_hp1 witness failed reconstruction mod jet")
    return HP1Class(alpha, beta)


def _solve_hp1(X: VectorField, P: PoissonStructure, order: int):
    sol = _hp1_echelon(P, order).solve(_clip_vf_rowvec(_vf_rowvec(X), P.w, order))
    if sol is None:
        return None
    alpha = sol.get((0, 0, 0, 0), Fraction(0))
    beta = tuple(sol.get((1, j, 0, 0), Fraction(0)) for j in range(P.r))
    gterms = {}
    for colkey, val in sol.items():
        if colkey[0] == 2:
            gterms[colkey[2:]] = val
    return alpha, beta, Poly(gterms)


def is_coboundary_hp1(
    X: VectorField, P: PoissonStructure, jet_order: int | None = None
) -> tuple[bool, Poly | None]:
    """Solve X = delta^0(G) in the quotient complexes at orders N and N+s.

    Both orders must agree (clipped solvability is not monotone); the
    witness residual is checked to vanish up to weight N.
    """
    if X.is_zero():
        return True, Poly.zero()
    order = P.default_jet_order() if jet_order is None else jet_order
    if not _vf_weight_le(X, P.w, order):
        raise JetOrderError(f"input exceeds jet order {order}")
    shift = max(P.s, 1)
    rhs = _clip_vf_rowvec(_vf_rowvec(X), P.w, order)
    sol = _hp1_coboundary_echelon(P, order).solve(rhs)
    rhs2 = _clip_vf_rowvec(_vf_rowvec(X), P.w, order + shift)
    sol2 = _hp1_coboundary_echelon(P, order + shift).solve(rhs2)
    if (sol is None) != (sol2 is None):
        raise JetOrderError(f"jet order {order} too small for is_coboundary_hp1")
    if sol is None:
        return False, None
    witness = Poly({colkey[1:]: val for colkey, val in sol.items()})
    residual = poisson_differential(P.pi, witness) - X
    if _clip_vf_rowvec(_vf_rowvec(residual), P.w, order):
        raise AssertionError("is_coboundary_hp1 witness failed verification")
    return True, witness


def is_coboundary_hp2(
    B: Bivector, P: PoissonStructure, jet_order: int | None = None
) -> tuple[bool, VectorField | None]:
    """Solve B = delta^1(Y) in the jet-order quotient complex (default 4d).

    Solved at N and N + (d - w1 - w2); disagreeing answers raise
    JetOrderError.  A positive answer carries a witness whose residual
    vanishes up to weight N (the tail above N is the truncation of the
    formal witness).
    """
    if B.is_zero():
        return True, VectorField(Poly.zero(), Poly.zero())
    order = P.default_jet_order() if jet_order is None else jet_order
    if not _biv_weight_le(B, P.w, order):
        raise JetOrderError(f"input exceeds jet order {order}")
    shift = max(P.s, 1)
    sol = _hp2_coboundary_echelon(P, order).solve(
        _clip_biv_rowvec(_biv_rowvec(B), P.w, order)
    )
    sol2 = _hp2_coboundary_echelon(P, order + shift).solve(
        _clip_biv_rowvec(_biv_rowvec(B), P.w, order + shift)
    )
    if (sol is None) != (sol2 is None):
        raise JetOrderError(f"jet order {order} too small for is_coboundary_hp2")
    if sol is None:
        return False, None
    witness = _vf_from_solution(sol)
    residual = poisson_differential(P.pi, witness) - B
    if _clip_biv_rowvec(_biv_rowvec(residual), P.w, order):
        raise AssertionError("is_coboundary_hp2 witness failed verification")
    return True, witness


def _vf_from_solution(sol: dict) -> VectorField:
    px, py = {}, {}
    for colkey, val in sol.items():
        _, comp, a, b = colkey
        (px if comp == 0 else py)[(a, b)] = val
    return VectorField(Poly(px), Poly(py))
