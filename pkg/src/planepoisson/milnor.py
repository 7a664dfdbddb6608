"""Jacobian ideal structure: Milnor basis, finite-codimension check, and the
decomposition g = sum(lambda_i * u_i) + X(f) with an explicit cofactor field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyring import (
    EVERY_DEGREE,
    GradedBasis,
    Monomial,
    NOT_HOMOGENEOUS,
    Poly,
    Rational,
    WeightSystem,
    monomials_of_degree,
    render_monomial,
    solve_linear_exact,
    weighted_degree,
)
from .polyvector import VectorField, apply


class NotWeightHomogeneousError(ValueError):
    pass


class NotFiniteCodimensionError(ValueError):
    pass


class BasisOverrideError(ValueError):
    pass


@dataclass(frozen=True)
class MilnorBasis:
    """Monomial basis u_1..u_c of M_f = F/I_f, in the recorded order.

    The list need not be degree-sorted (catalog overrides follow the
    published listings); degrees are carried per entry.  No entry exceeds
    weighted degree 2*(d - w1 - w2).
    """

    monomials: tuple[Monomial, ...]
    degrees: tuple[int, ...]

    @property
    def c(self) -> int:
        return len(self.monomials)

    def labels(self) -> tuple[str, ...]:
        return tuple(render_monomial(m) for m in self.monomials)


@dataclass(frozen=True)
class PSpaceBasis:
    """Monomial basis e_1..e_r of the weight-(d - w1 - w2) slice."""

    degree: int
    monomials: tuple[Monomial, ...]

    @property
    def r(self) -> int:
        return len(self.monomials)

    def labels(self) -> tuple[str, ...]:
        return tuple(render_monomial(m) for m in self.monomials)


@dataclass(frozen=True)
class JacobianDecomposition:
    """g = sum(lambdas[i] * u_i) + apply(cofactor, f), exactly."""

    lambdas: tuple[Rational, ...]
    cofactor: VectorField


class _Span:
    """Incremental exact span over a fixed monomial coordinate list."""

    def __init__(self, coords: Sequence[Monomial]):
        self.n = len(coords)
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def _reduce(self, vec: list[Fraction]) -> list[Fraction]:
        for row, piv in zip(self.rows, self.pivots):
            if vec[piv]:
                f = vec[piv]
                vec = [v - f * rv for v, rv in zip(vec, row)]
        return vec

    def add(self, vec: list[Fraction]) -> bool:
        """Reduce vec against the span; absorb and return True if independent."""
        vec = self._reduce(list(vec))
        piv = next((i for i, v in enumerate(vec) if v), None)
        if piv is None:
            return False
        inv = 1 / vec[piv]
        self.rows.append([v * inv for v in vec])
        self.pivots.append(piv)
        return True

    def contains(self, vec: list[Fraction]) -> bool:
        return all(not v for v in self._reduce(list(vec)))

    @property
    def rank(self) -> int:
        return len(self.rows)


def _poly_vector(p: Poly, index: dict[Monomial, int], n: int) -> list[Fraction]:
    vec = [Fraction(0)] * n
    for mon, c in p.terms.items():
        vec[index[mon]] = c
    return vec


def _image_polys(fx: Poly, fy: Poly, w: WeightSystem, degree: int) -> list[Poly]:
    """Degree-slice generators of I_f: A*fx and B*fy over graded monomials."""
    out = []
    dx = weighted_degree(fx, w)
    if isinstance(dx, int):
        for mon in monomials_of_degree(w, degree - dx).monomials:
            out.append(Poly.monomial(*mon) * fx)
    dy = weighted_degree(fy, w)
    if isinstance(dy, int):
        for mon in monomials_of_degree(w, degree - dy).monomials:
            out.append(Poly.monomial(*mon) * fy)
    return out


def milnor_basis(
    f: Poly,
    w: WeightSystem,
    override: Sequence[Monomial] | None = None,
) -> MilnorBasis:
    """Monomial basis of M_f with the finite-codimension witness check.

    Per weighted degree up to 2*(d - w1 - w2) the complement of the image
    of (A, B) -> A*f_x + B*f_y is selected greedily in (a, b)-lex order;
    an override pins both membership and order (validated for
    independence and spanning).  Degrees just above the bound must be
    surjective: the cokernel of a weight-graded ideal propagates upward
    degree by degree, so max(w1, w2) consecutive full degrees witness
    finite codimension.
    """
    d = weighted_degree(f, w)
    if not isinstance(d, int) or d <= 0:
        raise NotWeightHomogeneousError(
            "f must be weight-homogeneous of positive degree"
        )
    fx, fy = f.partial_x(), f.partial_y()
    bound = 2 * (d - w.w1 - w.w2)

    greedy: dict[int, list[Monomial]] = {}
    spans: dict[int, _Span] = {}
    for degree in range(0, bound + 1):
        slice_basis = monomials_of_degree(w, degree)
        if not slice_basis.monomials:
            continue
        index = {m: i for i, m in enumerate(slice_basis.monomials)}
        span = _Span(slice_basis.monomials)
        for img in _image_polys(fx, fy, w, degree):
            span.add(_poly_vector(img, index, span.n))
        kept = []
        for mon in slice_basis.monomials:
            vec = [Fraction(0)] * span.n
            vec[index[mon]] = Fraction(1)
            if span.add(vec):
                kept.append(mon)
        if kept:
            greedy[degree] = kept
        spans[degree] = span

    start = max(bound + 1, 0)
    for degree in range(start, start + max(w.w1, w.w2)):
        slice_basis = monomials_of_degree(w, degree)
        if not slice_basis.monomials:
            continue
        index = {m: i for i, m in enumerate(slice_basis.monomials)}
        span = _Span(slice_basis.monomials)
        for img in _image_polys(fx, fy, w, degree):
            span.add(_poly_vector(img, index, span.n))
        if span.rank < len(slice_basis.monomials):
            raise NotFiniteCodimensionError(
                f"Jacobian ideal misses weighted degree {degree}: "
                "f does not have finite codimension"
            )

    if override is None:
        ordered = [m for degree in sorted(greedy) for m in greedy[degree]]
    else:
        ordered = [tuple(m) for m in override]
        by_degree: dict[int, list[Monomial]] = {}
        for mon in ordered:
            by_degree.setdefault(w.degree(mon), []).append(mon)
        for degree, expected in greedy.items():
            got = by_degree.pop(degree, [])
            if len(got) != len(expected):
                raise BasisOverrideError(
                    f"override has {len(got)} monomials of degree {degree}, "
                    f"need {len(expected)}"
                )
            slice_basis = monomials_of_degree(w, degree)
            index = {m: i for i, m in enumerate(slice_basis.monomials)}
            span = _Span(slice_basis.monomials)
            for img in _image_polys(fx, fy, w, degree):
                span.add(_poly_vector(img, index, span.n))
            for mon in got:
                if mon not in index:
                    raise BasisOverrideError(
                        f"override monomial {render_monomial(mon)} has wrong degree"
                    )
                vec = [Fraction(0)] * span.n
                vec[index[mon]] = Fraction(1)
                if not span.add(vec):
                    raise BasisOverrideError(
                        f"override monomial {render_monomial(mon)} is dependent "
                        "modulo the Jacobian ideal"
                    )
        if by_degree:
            stray = sorted(by_degree)
            raise BasisOverrideError(
                f"override lists monomials in degrees {stray} where the "
                "Milnor algebra vanishes"
            )

    return MilnorBasis(tuple(ordered), tuple(w.degree(m) for m in ordered))


def p_space(f_degree: int, w: WeightSystem) -> PSpaceBasis:
    """Basis of P_{d - w1 - w2}; empty when that degree is unreachable."""
    degree = f_degree - w.w1 - w.w2
    return PSpaceBasis(degree, monomials_of_degree(w, degree).monomials)


def jacobian_decompose(
    g: Poly,
    f: Poly,
    w: WeightSystem,
    basis: MilnorBasis,
) -> JacobianDecomposition:
    """Split weight-homogeneous g as sum(lambda_i u_i) + X(f), exactly.

    Columns are ordered basis monomials first, then the x- and
    y-cofactor monomials in lex order, so the deterministic pivoting of
    solve_linear_exact lands on the basis part whenever possible and a
    basis monomial decomposes as itself with zero cofactor.
    """
    zero = Fraction(0)
    if g.is_zero():
        return JacobianDecomposition(
            (zero,) * basis.c, VectorField(Poly.zero(), Poly.zero())
        )
    degree = weighted_degree(g, w)
    if not isinstance(degree, int):
        raise NotWeightHomogeneousError("g must be weight-homogeneous")
    d = weighted_degree(f, w)
    fx, fy = f.partial_x(), f.partial_y()

    u_cols = [i for i, dg in enumerate(basis.degrees) if dg == degree]
    a_mons = monomials_of_degree(w, degree - (d - w.w1)).monomials
    b_mons = monomials_of_degree(w, degree - (d - w.w2)).monomials

    slice_mons = monomials_of_degree(w, degree).monomials
    index = {m: i for i, m in enumerate(slice_mons)}
    n = len(slice_mons)

    columns: list[list[Fraction]] = []
    for i in u_cols:
        columns.append(_poly_vector(Poly.monomial(*basis.monomials[i]), index, n))
    for mon in a_mons:
        columns.append(_poly_vector(Poly.monomial(*mon) * fx, index, n))
    for mon in b_mons:
        columns.append(_poly_vector(Poly.monomial(*mon) * fy, index, n))

    matrix = [[col[r] for col in columns] for r in range(n)]
    rhs = _poly_vector(g, index, n)
    solution = solve_linear_exact(matrix, rhs)
    if not solution.consistent or solution.particular is None:
        raise RuntimeError(
            "graded Jacobian decomposition is inconsistent; "
            "the Milnor basis invariant is violated"
        )
    x = solution.particular

    lambdas = [zero] * basis.c
    for slot, i in enumerate(u_cols):
        lambdas[i] = x[slot]
    off = len(u_cols)
    a_poly = Poly({mon: x[off + j] for j, mon in enumerate(a_mons)})
    off += len(a_mons)
    b_poly = Poly({mon: x[off + j] for j, mon in enumerate(b_mons)})
    cofactor = VectorField(a_poly, b_poly)

    rebuilt = apply(cofactor, f)
    for i, lam in enumerate(lambdas):
        if lam:
            rebuilt = rebuilt + Poly.monomial(*basis.monomials[i], lam)
    if rebuilt != g:
        raise RuntimeError("jacobian decomposition failed exact reconstruction")
    return JacobianDecomposition(tuple(lambdas), cofactor)
