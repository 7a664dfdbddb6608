"""Structure constants of wedge and bracket on the canonical HP basis,
plus the generators-and-relations presentation of the cohomology ring.

Tables are computed generically: take canonical representatives, compute
the cochain-level operation, normalize back to coordinates.  The
published case-by-case results live in the arnold module as regression
fixtures, never as code paths here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyring import Rational
from .polyvector import (
    Bivector,
    VectorField,
    ZeroPolyvector,
    polyvector_degree,
    sn_bracket,
    wedge,
)
from .cohomology import (
    HP1Class,
    HP2Class,
    PoissonStructure,
    normalize_hp1,
    normalize_hp2_pi,
    zero_hp1,
    zero_hp2,
)

# Coordinate vectors over the canonical basis: sparse maps from basis
# labels ("1", "u", "v1".., "w1".., "t1"..) to nonzero rationals.
CoordVec = dict[str, Fraction]


@dataclass(frozen=True)
class CanonicalBasis:
    """Labels, degrees and representatives of {1; u, v_j; w_i, t_j}."""

    names: tuple[str, ...]
    degrees: dict[str, int]

    @classmethod
    def of(cls, P: PoissonStructure) -> "CanonicalBasis":
        names = ["1", "u"]
        degrees = {"1": 0, "u": 1}
        for j in range(P.r):
            names.append(f"v{j + 1}")
            degrees[f"v{j + 1}"] = 1
        for i in range(P.c):
            names.append(f"w{i + 1}")
            degrees[f"w{i + 1}"] = 2
        for j in range(P.r):
            names.append(f"t{j + 1}")
            degrees[f"t{j + 1}"] = 2
        return cls(tuple(names), degrees)


def basis_representative(P: PoissonStructure, name: str):
    from .polyring import Poly

    if name == "1":
        return Poly.one()
    if name == "u":
        return P.rep_u()
    idx = int(name[1:]) - 1
    if name.startswith("v"):
        return P.rep_v(idx)
    if name.startswith("w"):
        return P.rep_w(idx)
    if name.startswith("t"):
        return P.rep_t(idx)
    raise ValueError(f"unknown basis element {name!r}")


def hp1_to_coords(cls: HP1Class) -> CoordVec:
    out: CoordVec = {}
    if cls.alpha:
        out["u"] = cls.alpha
    for j, b in enumerate(cls.beta):
        if b:
            out[f"v{j + 1}"] = b
    return out


def hp2_to_coords(cls: HP2Class) -> CoordVec:
    out: CoordVec = {}
    for i, v in enumerate(cls.lam):
        if v:
            out[f"w{i + 1}"] = v
    for j, v in enumerate(cls.q):
        if v:
            out[f"t{j + 1}"] = v
    return out


def coords_to_hp1(vec: CoordVec, P: PoissonStructure) -> HP1Class:
    return HP1Class(
        vec.get("u", Fraction(0)),
        tuple(vec.get(f"v{j + 1}", Fraction(0)) for j in range(P.r)),
    )


def coords_to_hp2(vec: CoordVec, P: PoissonStructure) -> HP2Class:
    return HP2Class(
        tuple(vec.get(f"w{i + 1}", Fraction(0)) for i in range(P.c)),
        tuple(vec.get(f"t{j + 1}", Fraction(0)) for j in range(P.r)),
    )


def coord_add(a: CoordVec, b: CoordVec) -> CoordVec:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, Fraction(0)) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def coord_scale(a: CoordVec, c) -> CoordVec:
    c = Fraction(c)
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


@dataclass(frozen=True)
class GerstenhaberTable:
    """Structure constants over the canonical basis.

    wedge[(a, b)] and bracket[(a, b)] are coordinate vectors; wedge pairs
    of total degree >= 3 are absent (HP vanishes there).
    """

    basis: CanonicalBasis
    wedge: dict[tuple[str, str], CoordVec]
    bracket: dict[tuple[str, str], CoordVec]

    def wedge_of(self, a: str, b: str) -> CoordVec:
        return dict(self.wedge.get((a, b), {}))

    def bracket_of(self, a: str, b: str) -> CoordVec:
        return dict(self.bracket.get((a, b), {}))

    def to_json(self) -> dict:
        return {
            "wedge": _table_json(self.wedge),
            "bracket": _table_json(self.bracket),
        }


def _coords_json(vec: CoordVec) -> dict:
    # Labels follow the documented schema: "t" entries carry the e_j tag.
    out: dict[str, object] = {}
    one = vec.get("1")
    if one:
        out["one"] = str(one)
    u = vec.get("u")
    if u:
        out["u"] = str(u)
    for prefix in ("v", "w"):
        entries = [
            [k, str(v)] for k, v in sorted(vec.items()) if k.startswith(prefix)
        ]
        if entries:
            out[prefix] = entries
    tents = [
        [f"e{k[1:]}", str(v)] for k, v in sorted(vec.items()) if k.startswith("t")
    ]
    if tents:
        out["t"] = tents
    return out


def _table_json(table: dict[tuple[str, str], CoordVec]) -> list:
    entries = []
    for (a, b), vec in sorted(table.items()):
        entries.append({"left": a, "right": b, "result": _coords_json(vec)})
    return entries


def _normalize_to_coords(P: PoissonStructure, value) -> CoordVec:
    degree = polyvector_degree(value)
    if isinstance(value, ZeroPolyvector):
        return {}
    if degree == 0:
        if value.is_zero():
            return {}
        const = value.coeff(0, 0)
        if value != value.__class__({(0, 0): const}):
            raise AssertionError("degree-0 value is not a constant")
        return {"1": const}
    if degree == 1:
        return hp1_to_coords(normalize_hp1(value, P))
    if degree == 2:
        return hp2_to_coords(normalize_hp2_pi(value, P))
    raise AssertionError(f"unexpected polyvector degree {degree}")


def wedge_table(P: PoissonStructure) -> dict[tuple[str, str], CoordVec]:
    """All wedge products of basis pairs with total degree <= 2, normalized."""
    basis = CanonicalBasis.of(P)
    table: dict[tuple[str, str], CoordVec] = {}
    for a in basis.names:
        for b in basis.names:
            if basis.degrees[a] + basis.degrees[b] > 2:
                continue
            value = wedge(basis_representative(P, a), basis_representative(P, b))
            table[(a, b)] = _normalize_to_coords(P, value)
    return table


def bracket_table(P: PoissonStructure) -> dict[tuple[str, str], CoordVec]:
    """All Schouten brackets of basis pairs, normalized to coordinates."""
    basis = CanonicalBasis.of(P)
    table: dict[tuple[str, str], CoordVec] = {}
    for a in basis.names:
        for b in basis.names:
            value = sn_bracket(basis_representative(P, a), basis_representative(P, b))
            table[(a, b)] = _normalize_to_coords(P, value)
    return table


def gerstenhaber_table(P: PoissonStructure) -> GerstenhaberTable:
    return GerstenhaberTable(CanonicalBasis.of(P), wedge_table(P), bracket_table(P))


# -- presentation -------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """K<u, v_1..v_r>/(u^2, v_i^2, u v_i + v_i u, v_i v_j) x_K K[w_1]/(w_1^2)
    x_K ... x_K K[w_c]/(w_c^2), with t_j identified as (1/d) u ^ v_j."""

    generators: tuple[tuple[str, int], ...]
    relations: tuple[str, ...]
    fiber_factors: tuple[str, ...]
    identifications: tuple[str, ...]
    text: str

    def to_json(self) -> dict:
        return {
            "generators": [list(g) for g in self.generators],
            "relations": list(self.relations),
            "fiber_factors": list(self.fiber_factors),
            "identifications": list(self.identifications),
            "text": self.text,
        }


def presentation(P: PoissonStructure) -> Presentation:
    r, c, d = P.r, P.c, P.d
    vs = [f"v{j + 1}" for j in range(r)]
    ws = [f"w{i + 1}" for i in range(c)]
    generators = [("u", 1)] + [(v, 1) for v in vs] + [(w, 2) for w in ws]

    relations = ["u^2"]
    for v in vs:
        relations.append(f"{v}^2")
        relations.append(f"u*{v} + {v}*u")
    for vi in vs:
        for vj in vs:
            if vi != vj:
                relations.append(f"{vi}*{vj}")
    for w_name in ws:
        relations.append(f"{w_name}^2")

    if vs:
        head = f"K<u, {', '.join(vs)}>/({', '.join(r_ for r_ in relations if 'w' not in r_)})"
    else:
        head = "K[u]/(u^2)"
    factors = [head] + [f"K[{w_name}]/({w_name}^2)" for w_name in ws]
    idents = tuple(f"t{j + 1} = (1/{d})*u^v{j + 1}" for j in range(r))
    return Presentation(
        tuple(generators),
        tuple(relations),
        tuple(factors),
        idents,
        " x_K ".join(factors),
    )


# -- table-level Leibniz closure check ----------------------------------------


@dataclass(frozen=True)
class LeibnizReport:
    checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _coord_wedge(
    table: GerstenhaberTable, vec: CoordVec, name: str, reverse: bool = False
) -> CoordVec:
    """Wedge a coordinate vector with a basis element via table lookups.

    Pairs of total degree >= 3 contribute zero: HP^i = 0 for i >= 3.
    """
    out: CoordVec = {}
    for k, coeff in vec.items():
        pair = (name, k) if reverse else (k, name)
        out = coord_add(out, coord_scale(table.wedge.get(pair, {}), coeff))
    return out


def _coord_bracket(table: GerstenhaberTable, vec: CoordVec, name: str) -> CoordVec:
    out: CoordVec = {}
    for k, coeff in vec.items():
        out = coord_add(out, coord_scale(table.bracket.get((k, name), {}), coeff))
    return out


def leibniz_check(P: PoissonStructure, table: GerstenhaberTable) -> LeibnizReport:
    """Verify [F^G, H] = [F,H]^G + (-1)^((r-1)p) F^[G,H] on basis triples,
    using table lookups only (a closure test on the structure constants)."""
    basis = table.basis
    checked = 0
    failures = []
    for f_name in basis.names:
        p = basis.degrees[f_name]
        for g_name in basis.names:
            q = basis.degrees[g_name]
            for h_name in basis.names:
                rr = basis.degrees[h_name]
                fg = table.wedge.get((f_name, g_name), {})
                lhs = _coord_bracket(table, fg, h_name)
                fh = table.bracket.get((f_name, h_name), {})
                rhs = _coord_wedge(table, fh, g_name)
                gh = table.bracket.get((g_name, h_name), {})
                sign = -1 if ((rr - 1) * p) % 2 else 1
                term = coord_scale(
                    _coord_wedge(table, gh, f_name, reverse=True), sign
                )
                rhs = coord_add(rhs, term)
                checked += 1
                if lhs != rhs:
                    failures.append(
                        f"[{f_name}^{g_name}, {h_name}]: {lhs} != {rhs}"
                    )
    return LeibnizReport(checked, tuple(failures))
