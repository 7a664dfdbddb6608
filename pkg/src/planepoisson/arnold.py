"""ADE catalog, published expected-results fixtures, and the verifier.

The catalog instantiates the classification table's normal forms with the
published Milnor bases pinned via the override mechanism.  Fixtures store
the published raw bracket formulas (as functions of p, the sign branch
and the parameters) plus the recorded primed-basis changes; the verifier
compares engine output against them layer by layer and reports
pass / fail / known-discrepancy without ever transcribing the published
case analyses into the computation itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .polyring import Monomial, Poly, WeightSystem, solve_linear_exact
from .cohomology import PoissonStructure, hp_dimensions, make_structure
from .gerstenhaber import (
    CanonicalBasis,
    CoordVec,
    GerstenhaberTable,
    coord_add,
    coord_scale,
    gerstenhaber_table,
    presentation,
)
from .oracle import DimensionReport, graded_dims, jet_dims

F = Fraction

FAMILIES = ("A_even", "A_odd", "D_even", "D_odd", "E6", "E7", "E8")
_SIGNED = {"A_odd", "D_even"}
_TAKES_LAM = {"A_odd", "D_even", "D_odd", "E7"}
_TAKES_MU = {"D_even"}


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class SingularityType:
    family: str
    p: int
    sign: int | None = None
    lam: Fraction = F(0)
    mu: Fraction = F(0)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise CatalogError(f"unknown family {self.family!r}")
        pmin = {"A_even": 1, "A_odd": 1, "D_even": 2, "D_odd": 2}.get(self.family, 1)
        if self.p < pmin:
            raise CatalogError(f"{self.family} requires p >= {pmin}")
        if self.family.startswith("E") and self.p != 1:
            raise CatalogError("E types carry no index parameter")
        if (self.family in _SIGNED) != (self.sign is not None):
            raise CatalogError(f"sign is mandatory exactly for {sorted(_SIGNED)}")
        if self.sign not in (None, 1, -1):
            raise CatalogError("sign must be +1 or -1")
        if self.lam and self.family not in _TAKES_LAM:
            raise CatalogError(f"{self.family} takes no lambda parameter")
        if self.mu and self.family not in _TAKES_MU:
            raise CatalogError(f"{self.family} takes no mu parameter")

    @property
    def name(self) -> str:
        suffix = {1: "+", -1: "-"}.get(self.sign, "")
        if self.family == "A_even":
            return f"A{2 * self.p}"
        if self.family == "A_odd":
            return f"A{2 * self.p - 1}{suffix}"
        if self.family == "D_even":
            return f"D{2 * self.p}{suffix}"
        if self.family == "D_odd":
            return f"D{2 * self.p + 1}"
        return self.family

    def params(self) -> dict:
        out: dict[str, str] = {}
        if self.family in _TAKES_LAM:
            out["lambda"] = str(self.lam)
        if self.family in _TAKES_MU:
            out["mu"] = str(self.mu)
        return out


def parse_type(name: str, lam=0, mu=0) -> SingularityType:
    """Parse ASCII selectors like A3+, D4-, D5, E7; sign suffix is
    mandatory for the +- families."""
    name = name.strip()
    sign: int | None = None
    body = name
    if name.endswith("+"):
        sign, body = 1, name[:-1]
    elif name.endswith("-"):
        sign, body = -1, name[:-1]
    if not body or body[0] not in "ADE" or not body[1:].isdigit():
        raise CatalogError(f"cannot parse type selector {name!r}")
    letter, n = body[0], int(body[1:])
    lam, mu = F(lam), F(mu)
    if letter == "A":
        if n % 2 == 0:
            return SingularityType("A_even", n // 2, sign, lam, mu)
        return SingularityType("A_odd", (n + 1) // 2, sign, lam, mu)
    if letter == "D":
        if n < 4:
            raise CatalogError("D types start at D4")
        if n % 2 == 0:
            return SingularityType("D_even", n // 2, sign, lam, mu)
        return SingularityType("D_odd", (n - 1) // 2, sign, lam, mu)
    if n in (6, 7, 8):
        return SingularityType(f"E{n}", 1, sign, lam, mu)
    raise CatalogError(f"unknown exceptional type E{n}")


def _ys(upto: int) -> list[Monomial]:
    return [(0, i) for i in range(upto)]


def instantiate(t: SingularityType) -> PoissonStructure:
    """Build the normal form; d is always the weighted degree computed
    from f and the weights, never a transcribed constant."""
    p, sg = t.p, F(t.sign or 1)
    lam, mu = t.lam, t.mu
    if t.family == "A_even":
        f = Poly({(2, 0): F(1), (0, 2 * p + 1): F(1)})
        h = Poly.zero()
        w = WeightSystem(2 * p + 1, 2)
        override = _ys(2 * p)
    elif t.family == "A_odd":
        f = Poly({(2, 0): F(1), (0, 2 * p): sg})
        # p = 1 has d - w1 - w2 = 0: the unit factor (1 + lambda) is dropped
        h = Poly({(0, p - 1): lam}) if p > 1 else Poly.zero()
        w = WeightSystem(p, 1)
        override = _ys(2 * p - 1)
    elif t.family == "D_even":
        f = Poly({(2, 1): F(1), (0, 2 * p - 1): sg})
        h = Poly({(1, 0): lam, (0, p - 1): mu})
        w = WeightSystem(p - 1, 1)
        override = _ys(2 * p - 1) + [(1, 0)]
    elif t.family == "D_odd":
        f = Poly({(2, 1): F(1), (0, 2 * p): F(1)})
        h = Poly({(1, 0): lam})
        w = WeightSystem(2 * p - 1, 2)
        override = _ys(2 * p) + [(1, 0)]
    elif t.family == "E6":
        f = Poly({(3, 0): F(1), (0, 4): F(1)})
        h = Poly.zero()
        w = WeightSystem(4, 3)
        override = [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (1, 2)]
    elif t.family == "E7":
        f = Poly({(3, 0): F(1), (1, 3): F(1)})
        h = Poly({(0, 2): lam})
        w = WeightSystem(3, 2)
        override = [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (0, 3), (0, 4)]
    else:  # E8
        f = Poly({(3, 0): F(1), (0, 5): F(1)})
        h = Poly.zero()
        w = WeightSystem(5, 3)
        override = [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (0, 3), (1, 2), (1, 3)]
    return make_structure(f, h, w, basis_override=override)


# -- fixtures ------------------------------------------------------------------


@dataclass(frozen=True)
class PrimedRelation:
    """One published relation, with everything expanded in the unprimed
    (w_i, t_j) coordinates so it can be checked by table bilinearity."""

    label: str
    left: CoordVec
    right: CoordVec
    expected: CoordVec


@dataclass(frozen=True)
class ExpectedFixture:
    raw_brackets: dict[tuple[str, str], CoordVec]
    prim_gens: dict[str, CoordVec]
    u_gen: tuple[str, CoordVec]
    v_gens: tuple[tuple[str, CoordVec], ...]
    relations: tuple[PrimedRelation, ...]
    paper_r: int
    discrepancy_notes: tuple[str, ...] = ()


def _w(i: int, c) -> CoordVec:
    return {f"w{i}": F(c)}


def _t(j: int, c) -> CoordVec:
    return {f"t{j}": F(c)}


def _merge(*vecs: CoordVec) -> CoordVec:
    out: CoordVec = {}
    for v in vecs:
        out = coord_add(out, v)
    return out


def expected_fixture(t: SingularityType, P: PoissonStructure) -> ExpectedFixture:
    p = t.p
    sg = F(t.sign or 1)
    lam, mu = t.lam, t.mu
    d = P.d
    c, r = P.c, P.r
    notes: list[str] = []

    raw: dict[tuple[str, str], CoordVec] = {}
    prim: dict[str, CoordVec] = {f"w{i + 1}": _w(i + 1, 1) for i in range(c)}
    u_gen: tuple[str, CoordVec] = ("u", {"u": F(1)})
    v_gens: list[tuple[str, CoordVec]] = [
        (f"v{j + 1}", {f"v{j + 1}": F(1)}) for j in range(r)
    ]
    listed: dict[tuple[str, str], CoordVec] = {}

    if t.family == "A_even":
        notes.append(
            "published section V.A claims r = 1 with e1 = y^(2p) and d = 4p, "
            "inconsistent with the classification table's d = 4p+2 and weights "
            "(2p+1, 2), under which the degree d-w1-w2 = 2p-1 is odd and "
            "unreachable; the engine computes r = 0"
        )
        paper_r = 1

    elif t.family == "A_odd":
        paper_r = 1
        if p == 1:
            raw[("v1", "w1")] = _w(1, -2)
            v_gens = [("v1'", {"v1": F(-1, 2)})]
            listed[("v1'", "w1")] = _w(1, 1)
        elif p == 2:
            raw[("v1", "w1")] = _merge(_w(2, -4), _w(3, -5 * lam))
            raw[("v1", "w2")] = _merge(_w(3, -3), _t(1, -6 * sg * lam**3))
            prim["w2'"] = raw[("v1", "w1")]
            prim["w3'"] = _merge(_w(3, 12), _t(1, 24 * sg * lam**3))
            del prim["w2"], prim["w3"]
            if lam:
                u_gen = ("u'", {"u": 18 * sg * lam**2})
                notes.append(
                    "published case analysis gives [v1, w2] = -3w3 +- (3/2)l^3 u^v1 "
                    "and [v1, w3] = +-(3/2)l^2 u^v1; the exact reduction (odd-step "
                    "chains flip sign) and the jet oracle give -3w3 -+ (3/2)l^3 u^v1 "
                    "and 0, so the chain terminates and [v1, w3'] = u'v1 is dropped"
                )
            listed[("v1", "w1")] = {"w2'": F(1)}
            listed[("v1", "w2'")] = {"w3'": F(1)}
        elif p == 3:
            raw[("v1", "w1")] = _merge(_w(3, -6), _w(5, -8 * lam))
            raw[("v1", "w2")] = _w(4, -5)
            raw[("v1", "w3")] = _merge(_w(5, -4), _t(1, 6 * sg * lam**2))
            prim["w3'"] = raw[("v1", "w1")]
            prim["w4'"] = _w(4, -5)
            prim["w5'"] = _merge(_w(5, 24), _t(1, -36 * sg * lam**2))
            del prim["w3"], prim["w4"], prim["w5"]
            listed[("v1", "w1")] = {"w3'": F(1)}
            listed[("v1", "w2")] = {"w4'": F(1)}
            listed[("v1", "w3'")] = {"w5'": F(1)}
        else:
            raw[("v1", "w1")] = _merge(_w(p, -2 * p), _w(2 * p - 1, (1 - 3 * p) * lam))
            for j in range(2, p + 1):
                vec = _w(p + j - 1, j - 2 * p - 1)
                if j == 3:
                    vec = _merge(vec, _t(1, 3 * (p - 1) * sg * lam**2))
                raw[("v1", f"w{j}")] = vec
            prim[f"w{p}'"] = raw[("v1", "w1")]
            prim[f"w{p + 1}'"] = _w(p + 1, 1 - 2 * p)
            prim[f"w{p + 2}'"] = raw[("v1", "w3")]
            for j in range(p + 3, 2 * p - 1):
                prim[f"w{j}'"] = _w(j, j - 3 * p)
            prim[f"w{2 * p - 1}'"] = _w(2 * p - 1, 2 * p * (p + 1))
            for j in range(p, 2 * p):
                del prim[f"w{j}"]
            notes.append(
                "published proof prints w'_{2p-1} = 2p(2p+1) w_{2p-1}; the chain "
                "[v1, w'_p] forces 2p(p+1), which the fixture uses"
            )
            listed[("v1", "w1")] = {f"w{p}'": F(1)}
            for j in range(2, p):
                listed[("v1", f"w{j}")] = {f"w{p + j - 1}'": F(1)}
            listed[("v1", f"w{p}'")] = {f"w{2 * p - 1}'": F(1)}

    elif t.family == "D_even":
        paper_r = 2
        if p == 2:
            raw[("v1", "w1")] = _merge(
                _w(2, -3), _w(3, -4 * mu),
                _t(1, -12 * lam**2 * mu), _t(2, -12 * lam**3),
            )
            raw[("v1", "w2")] = _merge(_w(3, -2), _t(1, 3 * (lam**2 + sg * mu**2)))
            raw[("v2", "w1")] = _merge(
                _w(3, 12 * sg * lam), _w(4, -3),
                _t(1, -36 * lam * mu**2), _t(2, -36 * lam**2 * mu),
            )
            raw[("v2", "w4")] = _merge(
                _w(3, 6 * sg), _t(1, -9 * (sg * lam**2 + mu**2))
            )
            prim["w2'"] = raw[("v1", "w1")]
            prim["w3'"] = _merge(_w(3, 6), _t(1, -9 * (lam**2 + sg * mu**2)))
            prim["w4'"] = raw[("v2", "w1")]
            del prim["w2"], prim["w3"], prim["w4"]
            u_gen = ("u'", {"u": F(-12)})
            notes.append(
                "published case analysis carries the odd-chain sign error into the "
                "t-parts: it prints [v1,w1] with +12l^2m u^v1 + 12l^3 u^v2 sided "
                "t-terms, [v1,w4] = 4lm u^v1 + 4l^2 u^v2, [v2,w2] likewise, and "
                "[v2,w4] = +-6w3 + (-+3l^2+5m^2)u^v1 + 8lm u^v2; the exact "
                "reduction and the jet oracle give flipped t-signs on the k=1 "
                "pieces, hence [v1,w4] = [v2,w2] = 0 and "
                "[v2,w4] = +-6w3 - 3(+-l^2+m^2)u^v1"
            )
            notes.append(
                "consequently the published relations [v1,w4'] = [v2,w2'] = "
                "l(m u'v1 + l u'v2) and the 2m(...) tail of [v2,w4'] degenerate "
                "to zero; [v2,w4'] = -+3w3' survives (the summary table's sign; "
                "the proposition prints +3w3') and u' = -12u is kept as recorded"
            )
            listed[("v1", "w1")] = {"w2'": F(1)}
            listed[("v1", "w2'")] = {"w3'": F(1)}
            listed[("v2", "w1")] = {"w4'": F(1)}
            listed[("v2", "w4'")] = {"w3'": -3 * sg}
        else:
            raw[("v1", "w1")] = _merge(
                _w(p, 1 - 2 * p), _w(2 * p - 1, (2 - 3 * p) * mu)
            )
            raw[("v1", "w2")] = _merge(
                _w(p + 1, 2 * (1 - p)),
                _t(1, 3 * (p - 1) * (lam**2 + sg * mu**2)),
            )
            for j in range(3, p + 1):
                raw[("v1", f"w{j}")] = _w(p + j - 1, j - 2 * p)
            raw[("v2", "w1")] = _merge(
                _w(2 * p - 1, sg * (2 - 3 * p) * (1 - 2 * p) * lam),
                _w(2 * p, 1 - 2 * p),
            )
            raw[("v2", f"w{2 * p}")] = _w(2 * p - 1, sg * p * (2 * p - 1))
            prim[f"w{p}'"] = raw[("v1", "w1")]
            prim[f"w{p + 1}'"] = raw[("v1", "w2")]
            for i in range(2, p - 1):
                prim[f"w{p + i}'"] = _w(p + i, i + 1 - 2 * p)
            prim[f"w{2 * p - 1}'"] = _w(2 * p - 1, p * (2 * p - 1))
            prim[f"w{2 * p}'"] = raw[("v2", "w1")]
            for j in range(p, 2 * p + 1):
                del prim[f"w{j}"]
            if lam:
                u_gen = ("u'", {"u": F(12 * (p - 1), 2 * p - 1) * lam})
            notes.append(
                "published basis change prints denominators 2^(p-1); these are "
                "typeset manglings of (2p-1), as the bracket formulas show"
            )
            notes.append(
                "published [v2, w2] = 12(p-1)/(2p-1) l(m u^v1 + l u^v2) rests on "
                "the odd-chain sign error; the k=1 piece flips and cancels the "
                "k=0 piece exactly, so [v2, w2] = 0 and the published relation "
                "[v2, w2] = m u'v1 + l u'v2 degenerates; u' kept as recorded"
            )
            for j in range(1, p):
                listed[("v1", f"w{j}")] = {f"w{p + j - 1}'": F(1)}
            listed[("v1", f"w{p}'")] = {f"w{2 * p - 1}'": F(1)}
            listed[("v2", "w1")] = {f"w{2 * p}'": F(1)}
            listed[("v2", f"w{2 * p}'")] = {f"w{2 * p - 1}'": sg * (1 - 2 * p)}

    elif t.family == "D_odd":
        paper_r = 1
        raw[("v1", "w1")] = _merge(
            _w(2 * p, 2 * lam * p * (6 * p - 1)), _w(2 * p + 1, -4 * p)
        )
        raw[("v1", f"w{2 * p + 1}")] = _w(2 * p, 2 * p * (1 + 2 * p))
        prim[f"w{2 * p}'"] = _w(2 * p, -8 * p * p * (1 + 2 * p))
        prim[f"w{2 * p + 1}'"] = raw[("v1", "w1")]
        del prim[f"w{2 * p}"], prim[f"w{2 * p + 1}"]
        if lam:
            u_gen = ("u'", {"u": F(3 * (2 * p - 1), p) * lam**2})
        notes.append(
            "published proof prints w'_{2p} = 2p(1+2p) w_{2p}; the chain "
            "[v1, w'_{2p+1}] = w'_{2p} forces the extra factor -4p, so the "
            "fixture uses -8p^2(1+2p)"
        )
        notes.append(
            "published [v1, w2] = 3(2p-1)/p l^2 u^v1 rests on the odd-chain "
            "sign error; the k=1 and k=0 pieces cancel exactly, so "
            "[v1, w2] = 0 and the published relation [v1, w2] = u'v1 degenerates"
        )
        listed[("v1", "w1")] = {f"w{2 * p + 1}'": F(1)}
        listed[("v1", f"w{2 * p + 1}'")] = {f"w{2 * p}'": F(1)}

    elif t.family == "E7":
        paper_r = 1
        raw[("v1", "w1")] = _merge(_w(4, -9), _w(7, -13 * lam))
        raw[("v1", "w2")] = _w(6, -7)
        raw[("v1", "w4")] = _w(7, -5)
        prim["w4'"] = raw[("v1", "w1")]
        prim["w6'"] = _w(6, -7)
        prim["w7'"] = _w(7, 45)
        del prim["w4"], prim["w6"], prim["w7"]
        notes.append(
            "the summary table prints [v1, w4] = w7'; the raw bracket is "
            "[v1, w4] = -5 w7, and the relation closes as [v1, w4'] = w7' "
            "(prime dropped in the table)"
        )
        listed[("v1", "w1")] = {"w4'": F(1)}
        listed[("v1", "w2")] = {"w6'": F(1)}
        listed[("v1", "w4'")] = {"w7'": F(1)}

    else:  # E6, E8
        paper_r = 0

    # expand listed relations (primed labels) into unprimed coordinates
    expand = dict(prim)
    relations = []
    for (vname, gen), expected in sorted(listed.items()):
        relations.append(_make_relation(vname, gen, expected, v_gens, expand))
    # every unlisted (v, degree-2 generator) pair must vanish
    for vname, vcoords in v_gens:
        for gen in expand:
            if (vname, gen) not in listed:
                relations.append(_make_relation(vname, gen, {}, v_gens, expand))

    return ExpectedFixture(
        raw_brackets=raw,
        prim_gens=dict(prim),
        u_gen=u_gen,
        v_gens=tuple(v_gens),
        relations=tuple(relations),
        paper_r=paper_r,
        discrepancy_notes=tuple(notes),
    )


def _make_relation(vname, gen, expected_primed, v_gens, expand) -> PrimedRelation:
    left = dict(v_gens)[vname] if vname in dict(v_gens) else {vname: F(1)}
    expected_old: CoordVec = {}
    for key, coeff in expected_primed.items():
        base = expand.get(key, {key: F(1)})
        expected_old = coord_add(expected_old, coord_scale(base, coeff))
    label = f"[{vname}, {gen}]"
    return PrimedRelation(label, dict(left), dict(expand[gen]), expected_old)


# -- verification --------------------------------------------------------------


@dataclass(frozen=True)
class LayerEntry:
    name: str
    status: str  # "pass" | "fail" | "known-discrepancy"
    expected: str
    computed: str
    note: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "expected": self.expected,
            "computed": self.computed,
            "note": self.note,
        }


@dataclass(frozen=True)
class VerificationReport:
    type_name: str
    params: dict
    dims: tuple[LayerEntry, ...]
    raw_brackets: tuple[LayerEntry, ...]
    presentation: tuple[LayerEntry, ...]

    @property
    def failed(self) -> bool:
        return any(
            e.status == "fail"
            for e in self.dims + self.raw_brackets + self.presentation
        )

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "known-discrepancy": 0}
        for e in self.dims + self.raw_brackets + self.presentation:
            out[e.status] += 1
        return out

    def to_json(self) -> dict:
        return {
            "type": self.type_name,
            "params": self.params,
            "layers": {
                "dims": [e.to_json() for e in self.dims],
                "raw_brackets": [e.to_json() for e in self.raw_brackets],
                "presentation": [e.to_json() for e in self.presentation],
            },
            "counts": self.counts(),
        }


def _fmt(vec: CoordVec) -> str:
    if not vec:
        return "0"
    return " + ".join(f"{v}*{k}" for k, v in sorted(vec.items()))


def _bilinear_bracket(
    table: GerstenhaberTable, left: CoordVec, right: CoordVec
) -> CoordVec:
    out: CoordVec = {}
    for a, ca in left.items():
        for b, cb in right.items():
            out = coord_add(out, coord_scale(table.bracket.get((a, b), {}), ca * cb))
    return out


def verify(t: SingularityType, jet_order: int | None = None) -> VerificationReport:
    """Run the full pipeline on one catalog entry and compare three layers:
    dimensions vs the closed formula and the oracle, raw brackets vs the
    published case analyses, and primed relations after the recorded
    basis change."""
    P = instantiate(t)
    fixture = expected_fixture(t, P)
    formula = hp_dimensions(P)

    dims_entries = []
    if P.h.is_zero():
        oracle = graded_dims(P, 2 * P.d)
    else:
        oracle = jet_dims(P, jet_order if jet_order is not None else 4 * P.d)
    ok = oracle.totals == formula and (oracle.stabilized is not False)
    dims_entries.append(
        LayerEntry(
            "oracle-vs-formula",
            "pass" if ok else "fail",
            str(formula),
            str(oracle.totals),
            "" if oracle.stabilized is None else f"stabilized={oracle.stabilized}",
        )
    )
    if fixture.paper_r != P.r:
        dims_entries.append(
            LayerEntry(
                "published-r",
                "known-discrepancy",
                f"r = {fixture.paper_r}",
                f"r = {P.r}",
                fixture.discrepancy_notes[0] if fixture.discrepancy_notes else "",
            )
        )
    else:
        dims_entries.append(
            LayerEntry("published-r", "pass", f"r = {fixture.paper_r}", f"r = {P.r}")
        )

    table = gerstenhaber_table(P)
    basis = table.basis
    raw_entries = []
    vnames = [f"v{j + 1}" for j in range(P.r)]
    wnames = [f"w{i + 1}" for i in range(P.c)]
    for vn in vnames:
        for wn in wnames:
            expected = fixture.raw_brackets.get((vn, wn), {})
            computed = table.bracket_of(vn, wn)
            raw_entries.append(
                LayerEntry(
                    f"[{vn}, {wn}]",
                    "pass" if computed == expected else "fail",
                    _fmt(expected),
                    _fmt(computed),
                )
            )

    # vanishing blocks and the wedge law close out the raw layer
    bad = []
    for a in basis.names:
        for b in basis.names:
            if a in vnames and b in wnames:
                continue
            if a in wnames and b in vnames:
                # reverse block: fixed by graded antisymmetry
                if table.bracket_of(a, b) != coord_scale(table.bracket_of(b, a), -1):
                    bad.append(f"[{a}, {b}]")
                continue
            if table.bracket_of(a, b):
                bad.append(f"[{a}, {b}]")
    raw_entries.append(
        LayerEntry(
            "vanishing-blocks",
            "pass" if not bad else "fail",
            "all brackets outside [v_i, w_j] vanish",
            "ok" if not bad else ", ".join(sorted(set(bad))),
        )
    )
    wedge_bad = []
    for a in basis.names:
        for b in basis.names:
            da, db = basis.degrees[a], basis.degrees[b]
            if da + db > 2:
                continue
            got = table.wedge_of(a, b)
            if a == "1":
                want = {b: F(1)}
            elif b == "1":
                want = {a: F(1)}
            elif a == "u" and b in vnames:
                want = {"t" + b[1:]: F(P.d)}
            elif b == "u" and a in vnames:
                want = {"t" + a[1:]: F(-P.d)}
            else:
                want = {}
            if got != want:
                wedge_bad.append(f"{a}^{b}")
    raw_entries.append(
        LayerEntry(
            "wedge-law",
            "pass" if not wedge_bad else "fail",
            "1^x = x, u^v_j = d*t_j, all other wedges vanish",
            "ok" if not wedge_bad else ", ".join(wedge_bad),
        )
    )
    if P.h.is_zero():
        tbad = [
            f"[{vn}, {wn}]"
            for vn in vnames
            for wn in wnames
            if any(k.startswith("t") for k in table.bracket_of(vn, wn))
        ]
        raw_entries.append(
            LayerEntry(
                "pi0-t-coordinates",
                "pass" if not tbad else "fail",
                "h = 0 brackets stay in the Milnor summand",
                "ok" if not tbad else ", ".join(tbad),
            )
        )

    pres_entries = []
    pres_entries.append(_invertibility_entry(P, fixture))
    for rel in fixture.relations:
        computed = _bilinear_bracket(table, rel.left, rel.right)
        pres_entries.append(
            LayerEntry(
                rel.label,
                "pass" if computed == rel.expected else "fail",
                _fmt(rel.expected),
                _fmt(computed),
            )
        )
    shape = presentation(P)
    expected_vs = fixture.paper_r
    if expected_vs != P.r:
        pres_entries.append(
            LayerEntry(
                "table-shape",
                "known-discrepancy",
                f"{expected_vs} degree-1 v-generators (published table)",
                f"{P.r} (computed); presentation: {shape.text}",
                "see published-r",
            )
        )
    else:
        pres_entries.append(
            LayerEntry(
                "table-shape",
                "pass",
                f"{expected_vs} v-generators, {P.c} w-generators",
                shape.text,
            )
        )
    for note in fixture.discrepancy_notes:
        pres_entries.append(
            LayerEntry("published-text", "known-discrepancy", "as printed", "as computed", note)
        )

    return VerificationReport(
        t.name, t.params(), tuple(dims_entries), tuple(raw_entries), tuple(pres_entries)
    )


def _invertibility_entry(P: PoissonStructure, fixture: ExpectedFixture) -> LayerEntry:
    labels = [f"w{i + 1}" for i in range(P.c)] + [f"t{j + 1}" for j in range(P.r)]
    index = {k: i for i, k in enumerate(labels)}
    rows = []
    for gen, vec in fixture.prim_gens.items():
        row = [F(0)] * len(labels)
        for k, v in vec.items():
            row[index[k]] = v
        rows.append(row)
    su = fixture.u_gen[1].get("u", F(0))
    for j, (vn, vvec) in enumerate(fixture.v_gens):
        sv = vvec.get(f"v{j + 1}", F(0))
        row = [F(0)] * len(labels)
        row[index[f"t{j + 1}"]] = su * sv  # t'_j = (1/d) u' ^ v'_j
        rows.append(row)
    rank = solve_linear_exact(rows).rank if rows else 0
    ok = rank == len(labels)
    return LayerEntry(
        "basis-change-invertible",
        "pass" if ok else "fail",
        f"rank {len(labels)}",
        f"rank {rank}",
    )


# -- sweep ---------------------------------------------------------------------


_GRID = (F(0), F(1), F(-1), F(1, 2))


def catalog_entries(p_max: int, grid=_GRID) -> list[SingularityType]:
    entries: list[SingularityType] = []
    for p in range(1, p_max + 1):
        entries.append(SingularityType("A_even", p))
    for p in range(1, p_max + 1):
        for sg in (1, -1):
            if p == 1:
                entries.append(SingularityType("A_odd", 1, sg))
            else:
                for lam in grid:
                    entries.append(SingularityType("A_odd", p, sg, lam))
    for p in range(2, p_max + 1):
        for sg in (1, -1):
            for lam in grid:
                for mu in grid:
                    entries.append(SingularityType("D_even", p, sg, lam, mu))
    for p in range(2, p_max + 1):
        for lam in grid:
            entries.append(SingularityType("D_odd", p, lam=lam))
    if p_max >= 2:
        entries.append(SingularityType("E6", 1))
        for lam in grid:
            entries.append(SingularityType("E7", 1, lam=lam))
        entries.append(SingularityType("E8", 1))
    return entries


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[tuple[str, str, dict], ...]  # (name, params, status counts)

    @property
    def failed(self) -> bool:
        return any(counts["fail"] for _, _, counts in self.rows)

    def to_json(self) -> dict:
        return {
            "rows": [
                {"type": name, "params": params, "counts": counts}
                for name, params, counts in self.rows
            ],
            "failed": self.failed,
        }


def catalog_sweep(p_max: int, grid=_GRID) -> SweepReport:
    rows = []
    for t in catalog_entries(p_max, grid):
        report = verify(t)
        rows.append((t.name, str(t.params()), report.counts()))
    return SweepReport(tuple(rows))
