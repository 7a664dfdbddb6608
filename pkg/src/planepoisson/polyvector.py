"""Polyvector fields in two variables and their Gerstenhaber operations.

Functions, vector fields and bivector fields are the whole cochain
calculus here: in two variables every polyvector of degree >= 3
vanishes identically.  The Schouten-Nijenhuis bracket is implemented by
its closed forms per degree pair, and the Poisson differential is
delta(P) = [P, pi].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .polyring import (
    EVERY_DEGREE,
    NOT_HOMOGENEOUS,
    Poly,
    WeightSystem,
    homogeneous_components,
    render_poly,
    weighted_degree,
)


class WedgeDegreeError(ValueError):
    """Wedge product would land in polyvector degree >= 3 (two variables)."""


@dataclass(frozen=True)
class VectorField:
    """p * d/dx + q * d/dy."""

    p: Poly
    q: Poly

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.p - other.p, self.q - other.q)

    def __neg__(self) -> "VectorField":
        return VectorField(-self.p, -self.q)

    def scale(self, c) -> "VectorField":
        return VectorField(self.p.scale(c), self.q.scale(c))

    def mul_poly(self, g: Poly) -> "VectorField":
        return VectorField(g * self.p, g * self.q)


@dataclass(frozen=True)
class Bivector:
    """coef * d/dx ^ d/dy."""

    coef: Poly

    def is_zero(self) -> bool:
        return self.coef.is_zero()

    def __add__(self, other: "Bivector") -> "Bivector":
        return Bivector(self.coef + other.coef)

    def __sub__(self, other: "Bivector") -> "Bivector":
        return Bivector(self.coef - other.coef)

    def __neg__(self) -> "Bivector":
        return Bivector(-self.coef)

    def scale(self, c) -> "Bivector":
        return Bivector(self.coef.scale(c))


@dataclass(frozen=True)
class ZeroPolyvector:
    """The zero polyvector in a degree >= 3 (the only element there)."""

    degree: int = 3

    def is_zero(self) -> bool:
        return True

    def __add__(self, other: "ZeroPolyvector") -> "ZeroPolyvector":
        if not isinstance(other, ZeroPolyvector):
            return NotImplemented
        return self

    def __neg__(self) -> "ZeroPolyvector":
        return self

    def scale(self, c) -> "ZeroPolyvector":
        return self


Polyvector = Union[Poly, VectorField, Bivector, ZeroPolyvector]


def polyvector_degree(P: Polyvector) -> int:
    if isinstance(P, Poly):
        return 0
    if isinstance(P, VectorField):
        return 1
    if isinstance(P, Bivector):
        return 2
    if isinstance(P, ZeroPolyvector):
        return P.degree
    raise TypeError(f"not a polyvector: {P!r}")


def zero_polyvector(degree: int) -> Polyvector:
    if degree <= 0:
        return Poly.zero()
    if degree == 1:
        return VectorField(Poly.zero(), Poly.zero())
    if degree == 2:
        return Bivector(Poly.zero())
    return ZeroPolyvector(degree)


def pv_is_zero(P: Polyvector) -> bool:
    return P.is_zero()


def pv_equal(P: Polyvector, Q: Polyvector) -> bool:
    if isinstance(P, ZeroPolyvector) or isinstance(Q, ZeroPolyvector):
        return P.is_zero() and Q.is_zero() and polyvector_degree(P) >= 3 and polyvector_degree(Q) >= 3
    return polyvector_degree(P) == polyvector_degree(Q) and P == Q


# -- basic fields -----------------------------------------------------------


def divergence(X: VectorField) -> Poly:
    return X.p.partial_x() + X.q.partial_y()


def hamiltonian(g: Poly) -> VectorField:
    """H_g = (dg/dy) d/dx - (dg/dx) d/dy; always divergence-free."""
    return VectorField(g.partial_y(), -g.partial_x())


def euler(w: WeightSystem) -> VectorField:
    """W = w1*x d/dx + w2*y d/dy, the generator of the weighted scaling."""
    return VectorField(Poly.monomial(1, 0, w.w1), Poly.monomial(0, 1, w.w2))


def apply(X: VectorField, g: Poly) -> Poly:
    """Derivative X(g) = p * dg/dx + q * dg/dy."""
    return X.p * g.partial_x() + X.q * g.partial_y()


# -- Schouten-Nijenhuis bracket and wedge -----------------------------------


def sn_bracket(P: Polyvector, Q: Polyvector) -> Polyvector:
    """Closed two-variable forms of the Schouten-Nijenhuis bracket.

    Output degree is deg(P) + deg(Q) - 1; everything of degree >= 3 is
    the zero polyvector.  Orders not listed below are fixed by graded
    antisymmetry [P, Q] = -(-1)^((p-1)(q-1)) [Q, P].
    """
    dp, dq = polyvector_degree(P), polyvector_degree(Q)
    out_degree = dp + dq - 1
    if out_degree >= 3 or isinstance(P, ZeroPolyvector) or isinstance(Q, ZeroPolyvector):
        return zero_polyvector(out_degree)
    if dp == 0 and dq == 0:
        return Poly.zero()
    if dp == 1 and dq == 0:
        return apply(P, Q)
    if dp == 0 and dq == 1:
        return -apply(Q, P)
    if dp == 1 and dq == 1:
        return VectorField(
            apply(P, Q.p) - apply(Q, P.p),
            apply(P, Q.q) - apply(Q, P.q),
        )
    if dp == 1 and dq == 2:
        return Bivector(apply(P, Q.coef) - Q.coef * divergence(P))
    if dp == 2 and dq == 1:
        return -sn_bracket(Q, P)
    if dp == 0 and dq == 2:
        # [g, b dx^dy] = b*(g_x d/dy - g_y d/dx) = -b * H_g
        b = Q.coef
        return VectorField(-(b * P.partial_y()), b * P.partial_x())
    if dp == 2 and dq == 0:
        # sign (p-1)(q-1) = -1 is odd, so [B, g] = [g, B]
        return sn_bracket(Q, P)
    raise TypeError(f"unsupported bracket degrees ({dp}, {dq})")


def wedge(P: Polyvector, Q: Polyvector) -> Polyvector:
    """Wedge product; degree >= 3 is rejected rather than silently zero."""
    dp, dq = polyvector_degree(P), polyvector_degree(Q)
    total = dp + dq
    if total >= 3:
        raise WedgeDegreeError(
            f"wedge of degrees ({dp}, {dq}) lands in degree {total} >= 3"
        )
    if dp == 0:
        if dq == 0:
            return P * Q
        if dq == 1:
            return Q.mul_poly(P)
        return Bivector(P * Q.coef)
    if dq == 0:
        return wedge(Q, P)
    # (1, 1)
    return Bivector(P.p * Q.q - P.q * Q.p)


def poisson_differential(pi: Bivector, P: Polyvector) -> Polyvector:
    """delta(P) = [P, pi]; raises polyvector degree by one."""
    return sn_bracket(P, pi)


# -- weights ----------------------------------------------------------------


def polyvector_weight(P: Polyvector, w: WeightSystem):
    """Weight of P in the [W, P] = r*P sense.

    Functions carry their weighted degree; a vector-field component of
    polynomial degree D on d/dx contributes D - w1 (D - w2 on d/dy); a
    bivector coefficient of degree D contributes D - w1 - w2.  Returns
    EVERY_DEGREE for zero, NOT_HOMOGENEOUS for mixed weights.
    """
    if isinstance(P, Poly):
        return weighted_degree(P, w)
    if isinstance(P, VectorField):
        dx = weighted_degree(P.p, w)
        dy = weighted_degree(P.q, w)
        if dx is NOT_HOMOGENEOUS or dy is NOT_HOMOGENEOUS:
            return NOT_HOMOGENEOUS
        vals = []
        if dx is not EVERY_DEGREE:
            vals.append(dx - w.w1)
        if dy is not EVERY_DEGREE:
            vals.append(dy - w.w2)
        if not vals:
            return EVERY_DEGREE
        if len(vals) == 2 and vals[0] != vals[1]:
            return NOT_HOMOGENEOUS
        return vals[0]
    if isinstance(P, Bivector):
        d = weighted_degree(P.coef, w)
        if d is EVERY_DEGREE or d is NOT_HOMOGENEOUS:
            return d
        return d - w.w1 - w.w2
    if isinstance(P, ZeroPolyvector):
        return EVERY_DEGREE
    raise TypeError(f"not a polyvector: {P!r}")


def polyvector_components(P: Polyvector, w: WeightSystem) -> dict[int, Polyvector]:
    """Split a polyvector into weight-homogeneous pieces keyed by weight."""
    out: dict[int, Polyvector] = {}
    if isinstance(P, Poly):
        return dict(homogeneous_components(P, w))
    if isinstance(P, VectorField):
        for d, comp in homogeneous_components(P.p, w).items():
            wt = d - w.w1
            cur = out.get(wt, VectorField(Poly.zero(), Poly.zero()))
            out[wt] = VectorField(cur.p + comp, cur.q)
        for d, comp in homogeneous_components(P.q, w).items():
            wt = d - w.w2
            cur = out.get(wt, VectorField(Poly.zero(), Poly.zero()))
            out[wt] = VectorField(cur.p, cur.q + comp)
        return dict(sorted(out.items()))
    if isinstance(P, Bivector):
        for d, comp in homogeneous_components(P.coef, w).items():
            out[d - w.w1 - w.w2] = Bivector(comp)
        return dict(sorted(out.items()))
    raise TypeError(f"not a splittable polyvector: {P!r}")


# -- rendering ---------------------------------------------------------------


def render_polyvector(P: Polyvector):
    """External rendering: functions as expression strings, vector fields
    as {"dx": ..., "dy": ...}, bivectors as {"dxdy": ...}."""
    if isinstance(P, Poly):
        return render_poly(P)
    if isinstance(P, VectorField):
        return {"dx": render_poly(P.p), "dy": render_poly(P.q)}
    if isinstance(P, Bivector):
        return {"dxdy": render_poly(P.coef)}
    raise TypeError(f"cannot render {P!r}")
