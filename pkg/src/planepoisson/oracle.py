"""Independent brute-force cohomology dimensions by exact linear algebra.

Two modes adjudicate the closed-form results.  For h = 0 the complex is
weight-graded (the differential shifts weight by s = d - w1 - w2) and
each weight slice is a finite exact computation.  For h != 0 the target
is the formal-power-series complex: polynomial cochains of weight <= N
carry the full (unclipped) differential, HP1 quotients by the formal
coboundaries characterized polynomially (see
_formal_coboundary_columns), and HP2 is the quotient complex clipped at
N, where coboundary witnesses always truncate safely because the
differential strictly raises weight.  Every window is recomputed at
N + s; matching totals set the stabilization flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyring import (
    Poly,
    monomials_of_degree,
    solve_linear_exact,
    sparse_rank,
)
from .polyvector import (
    VectorField,
    ZeroPolyvector,
    apply as _apply,
    divergence as _divergence,
    poisson_differential,
    polyvector_degree,
    sn_bracket,
)
from .cohomology import (
    HP1Class,
    HP2Class,
    PoissonStructure,
    StructureError,
    _biv_rowvec,
    _jet_monomials,
    _vf_jet_columns,
    _vf_rowvec,
    hp_dimensions,
    is_coboundary_hp1,
    is_coboundary_hp2,
)


@dataclass(frozen=True)
class GradedSlice:
    """Exact cohomology of one weight slice of the h = 0 complex."""

    weight: int
    dim_fn: int
    dim_vf: int
    dim_biv: int
    hp0: int
    hp1: int
    hp2: int


@dataclass(frozen=True)
class DimensionReport:
    mode: str
    totals: tuple[int, int, int, int]
    matches_formula: bool
    per_degree: tuple[GradedSlice, ...] | None = None
    stabilized: bool | None = None
    jet_orders: tuple[int, int] | None = None
    totals_second: tuple[int, int, int, int] | None = None

    def to_json(self) -> dict:
        data = {
            "mode": self.mode,
            "totals": list(self.totals),
            "matches_formula": self.matches_formula,
        }
        if self.per_degree is not None:
            data["per_degree"] = [
                {
                    "weight": sl.weight,
                    "dim": [sl.dim_fn, sl.dim_vf, sl.dim_biv],
                    "hp": [sl.hp0, sl.hp1, sl.hp2],
                }
                for sl in self.per_degree
            ]
        if self.stabilized is not None:
            data["stabilized"] = self.stabilized
            data["jet_orders"] = list(self.jet_orders)
            data["totals_second"] = list(self.totals_second)
        return data


def _fn_basis(P, weight):
    return monomials_of_degree(P.w, weight).monomials if weight >= 0 else ()


def _vf_basis(P, weight):
    xs = monomials_of_degree(P.w, weight + P.w.w1).monomials
    ys = monomials_of_degree(P.w, weight + P.w.w2).monomials
    return [(0, m) for m in xs] + [(1, m) for m in ys]


def _biv_basis(P, weight):
    return monomials_of_degree(P.w, weight + P.w.w1 + P.w.w2).monomials


def _vf_of(comp, mon):
    g = Poly.monomial(*mon)
    return VectorField(g, Poly.zero()) if comp == 0 else VectorField(Poly.zero(), g)


def _dense_columns(vectors, row_index):
    cols = []
    for vec in vectors:
        col = [Fraction(0)] * len(row_index)
        for key, val in vec.items():
            col[row_index[key]] = val
        cols.append(col)
    return cols


def _rank_dense(columns, nrows):
    if not columns or nrows == 0:
        return 0
    matrix = [[col[r] for col in columns] for r in range(nrows)]
    return solve_linear_exact(matrix).rank


def _graded_rank_d0(P, weight):
    """Rank of delta^0 restricted to functions of the given weight."""
    fns = _fn_basis(P, weight)
    if not fns:
        return 0
    target = {key: i for i, key in enumerate(
        (comp,) + mon for comp, mon in _vf_basis(P, weight + P.s)
    )}
    vectors = [
        _vf_rowvec(poisson_differential(P.pi, Poly.monomial(*m))) for m in fns
    ]
    return _rank_dense(_dense_columns(vectors, target), len(target))


def _graded_rank_d1(P, weight):
    """Rank of delta^1 restricted to vector fields of the given weight."""
    vfs = _vf_basis(P, weight)
    if not vfs:
        return 0
    target = {mon: i for i, mon in enumerate(_biv_basis(P, weight + P.s))}
    vectors = [
        _biv_rowvec(poisson_differential(P.pi, _vf_of(comp, mon)))
        for comp, mon in vfs
    ]
    return _rank_dense(_dense_columns(vectors, target), len(target))


def graded_dims(P: PoissonStructure, max_degree: int) -> DimensionReport:
    """Exact per-weight HP dimensions of the h = 0 complex up to max_degree."""
    if not P.h.is_zero():
        raise StructureError("graded_dims requires h = 0")
    s = P.s
    slices = []
    d0_rank: dict[int, int] = {}
    d1_rank: dict[int, int] = {}

    def rank0(t):
        if t not in d0_rank:
            d0_rank[t] = _graded_rank_d0(P, t)
        return d0_rank[t]

    def rank1(t):
        if t not in d1_rank:
            d1_rank[t] = _graded_rank_d1(P, t)
        return d1_rank[t]

    lo = -(P.w.w1 + P.w.w2)
    for t in range(lo, max_degree + 1):
        nf = len(_fn_basis(P, t))
        nv = len(_vf_basis(P, t))
        nb = len(_biv_basis(P, t))
        hp0 = nf - rank0(t)
        hp1 = (nv - rank1(t)) - rank0(t - s)
        hp2 = nb - rank1(t - s)
        slices.append(GradedSlice(t, nf, nv, nb, hp0, hp1, hp2))

    totals = (
        sum(sl.hp0 for sl in slices),
        sum(sl.hp1 for sl in slices),
        sum(sl.hp2 for sl in slices),
        0,
    )
    return DimensionReport(
        mode="graded",
        totals=totals,
        matches_formula=totals == hp_dimensions(P),
        per_degree=tuple(slices),
    )


def _formal_coboundary_columns(P: PoissonStructure, order: int):
    """Columns of L(Y) = (1+h)*div(Y) - Y(h) over vector fields of weight
    <= order - d.

    A polynomial 1-cocycle X is a coboundary over the formal power series
    (witness G solved from delta(G) = -f(1+h)H_G = X) exactly when f
    divides both components of X and Y = X/f lies in ker L: then
    -Y/(1+h) is divergence-free, hence Hamiltonian.  This turns the
    formal quotient into finite exact linear algebra.
    """
    w = P.w
    cols = []
    for comp, wshift in ((0, w.w1), (1, w.w2)):
        for mon in _jet_monomials(w, order - P.d + wshift):
            Y = _vf_of(comp, mon)
            val = P.one_plus_h * _divergence(Y) - _apply(Y, P.h)
            colkey = (w.degree(mon) - wshift, comp) + mon
            cols.append((colkey, dict(val.terms)))
    cols.sort(key=lambda item: item[0])
    return cols


def _jet_totals(P: PoissonStructure, order: int) -> tuple[int, int, int, int]:
    fn_mons = _jet_monomials(P.w, order)
    d0_cols = [
        ((P.w.degree(m),) + m, _vf_rowvec(poisson_differential(P.pi, Poly.monomial(*m))))
        for m in fn_mons
    ]
    h0 = len(fn_mons) - sparse_rank(d0_cols)

    d1_cols = _vf_jet_columns(P, order)
    cocycles = len(d1_cols) - sparse_rank(d1_cols)
    lcols = _formal_coboundary_columns(P, order)
    formal_cob = len(lcols) - sparse_rank(lcols)
    h1 = cocycles - formal_cob

    biv_cut = order + P.w.w1 + P.w.w2
    clipped = [
        (key, {m: v for m, v in col.items() if P.w.degree(m) <= biv_cut})
        for key, col in d1_cols
    ]
    rank1_clip = sparse_rank(clipped)
    h2 = len(_jet_monomials(P.w, biv_cut)) - rank1_clip
    return (h0, h1, h2, 0)


def jet_dims(P: PoissonStructure, jet_order: int) -> DimensionReport:
    """Quotient-complex dimensions at jet_order, re-run at jet_order + s.

    A "not stabilized" result is reported, never raised.
    """
    if P.h.is_zero():
        base = graded_dims(P, jet_order)
        shift = max(P.s, 0)
        second = graded_dims(P, jet_order + shift) if shift else base
        return DimensionReport(
            mode="jet",
            totals=base.totals,
            matches_formula=base.matches_formula,
            per_degree=base.per_degree,
            stabilized=second.totals == base.totals,
            jet_orders=(jet_order, jet_order + shift),
            totals_second=second.totals,
        )
    first = _jet_totals(P, jet_order)
    second = _jet_totals(P, jet_order + P.s)
    return DimensionReport(
        mode="jet",
        totals=first,
        matches_formula=first == hp_dimensions(P)
        and second == hp_dimensions(P),
        stabilized=first == second,
        jet_orders=(jet_order, jet_order + P.s),
        totals_second=second,
    )


# -- cochain-level cross-check of table entries -------------------------------


@dataclass(frozen=True)
class BracketCheck:
    left: str
    right: str
    ok: bool
    degree: int
    note: str = ""

    def to_json(self) -> dict:
        return {
            "left": self.left,
            "right": self.right,
            "ok": self.ok,
            "degree": self.degree,
            "note": self.note,
        }


def _basis_rep(P: PoissonStructure, name: str):
    if name == "1":
        return Poly.one()
    if name == "u":
        return P.rep_u()
    kind, idx = name[0], name[1:]
    i = int(idx) - 1
    if kind == "v":
        return P.rep_v(i)
    if kind == "w":
        return P.rep_w(i)
    if kind == "t":
        return P.rep_t(i)
    raise ValueError(f"unknown basis element {name!r}")


def oracle_bracket_check(
    P: PoissonStructure,
    left: str,
    right: str,
    expected: HP1Class | HP2Class | None,
    jet_order: int | None = None,
) -> BracketCheck:
    """Confirm [left, right] minus the expected representative is a coboundary.

    This goes through the jet solver only — none of the normal-form
    machinery — so it is an independent route to the same answer.
    """
    bracket = sn_bracket(_basis_rep(P, left), _basis_rep(P, right))
    degree = polyvector_degree(bracket)
    if isinstance(bracket, ZeroPolyvector):
        ok = expected is None or expected.is_zero()
        return BracketCheck(left, right, ok, degree, "degree >= 3 is identically zero")
    if degree == 0:
        ok = bracket.is_zero() and (expected is None or expected.is_zero())
        return BracketCheck(left, right, ok, degree)
    if degree == 1:
        diff = bracket
        if expected is not None and isinstance(expected, HP1Class):
            diff = diff - expected.representative(P)
        ok, _ = is_coboundary_hp1(diff, P, jet_order)
        return BracketCheck(left, right, ok, degree)
    if degree == 2:
        diff = bracket
        if expected is not None and isinstance(expected, HP2Class):
            diff = diff - expected.representative(P)
        ok, _ = is_coboundary_hp2(diff, P, jet_order)
        return BracketCheck(left, right, ok, degree)
    return BracketCheck(left, right, False, degree, "unsupported degree")
