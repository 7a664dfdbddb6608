"""Exact sparse bivariate polynomials over Q, weighted gradings, exact linear algebra.

Everything downstream (vector fields, cohomology classes, structure
constants) reduces to the two primitives here: Poly arithmetic and exact
rational Gaussian elimination.  All values are immutable after
construction and every routine is deterministic, so results reproduce
bit for bit across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction

# A monomial x^a * y^b is stored as the exponent pair (a, b).
Monomial = tuple[int, int]

_ZERO = Fraction(0)


class PolyParseError(ValueError):
    """Malformed polynomial expression; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Poly:
    """Sparse bivariate polynomial with exact rational coefficients.

    Terms map exponent pairs (a, b) to nonzero Fractions.  Zero
    coefficients are never stored, so equality is plain term-by-term
    dict equality.  Instances are immutable by convention: every
    operation returns a fresh Poly.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mon, coeff in terms.items():
                a, b = mon
                if a < 0 or b < 0:
                    raise ValueError(f"negative exponent in monomial {mon}")
                c = Fraction(coeff)
                if c:
                    clean[(int(a), int(b))] = c
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "Poly":
        return cls({(a, b): Fraction(coeff)})

    # -- inspection ------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        """Copy of the term mapping (the internal dict is never exposed)."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), _ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({render_poly(self)!r})"

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self._terms)
        for mon, c in other._terms.items():
            s = out.get(mon, _ZERO) + c
            if s:
                out[mon] = s
            else:
                out.pop(mon, None)
        return _raw(out)

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self._terms)
        for mon, c in other._terms.items():
            s = out.get(mon, _ZERO) - c
            if s:
                out[mon] = s
            else:
                out.pop(mon, None)
        return _raw(out)

    def __neg__(self) -> "Poly":
        return _raw({mon: -c for mon, c in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            out: dict[Monomial, Fraction] = {}
            for (a1, b1), c1 in self._terms.items():
                for (a2, b2), c2 in other._terms.items():
                    mon = (a1 + a2, b1 + b2)
                    s = out.get(mon, _ZERO) + c1 * c2
                    if s:
                        out[mon] = s
                    else:
                        out.pop(mon, None)
            return _raw(out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly()
        return _raw({mon: c * v for mon, v in self._terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out = Poly.one()
        for _ in range(n):
            out = out * self
        return out

    # -- calculus --------------------------------------------------------

    def partial_x(self) -> "Poly":
        out = {}
        for (a, b), c in self._terms.items():
            if a:
                out[(a - 1, b)] = c * a
        return _raw(out)

    def partial_y(self) -> "Poly":
        out = {}
        for (a, b), c in self._terms.items():
            if b:
                out[(a, b - 1)] = c * b
        return _raw(out)


def _raw(terms: dict[Monomial, Fraction]) -> Poly:
    # Internal fast path: terms are already clean (no zeros, valid exponents).
    p = Poly.__new__(Poly)
    p._terms = terms
    p._hash = None
    return p


X = Poly.monomial(1, 0)
Y = Poly.monomial(0, 1)
ONE = Poly.one()


# -- weighted grading ------------------------------------------------------


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights (w1 for x, w2 for y) of the scaling action."""

    w1: int
    w2: int

    def __post_init__(self):
        if not (isinstance(self.w1, int) and isinstance(self.w2, int)):
            raise ValueError("weights must be integers")
        if self.w1 <= 0 or self.w2 <= 0:
            raise ValueError("weights must be strictly positive")

    def degree(self, mon: Monomial) -> int:
        return self.w1 * mon[0] + self.w2 * mon[1]


class _HomogeneityMarker:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


#: weighted_degree of the zero polynomial (homogeneous of every degree)
EVERY_DEGREE = _HomogeneityMarker("EVERY_DEGREE")
#: weighted_degree of a polynomial whose terms have mixed weighted degrees
NOT_HOMOGENEOUS = _HomogeneityMarker("NOT_HOMOGENEOUS")


def weighted_degree(p: Poly, w: WeightSystem):
    """Common weighted degree of all terms of ``p``.

    Returns an int when p is weight-homogeneous, EVERY_DEGREE for the
    zero polynomial, NOT_HOMOGENEOUS otherwise.
    """
    degree = None
    for mon in p._terms:
        d = w.degree(mon)
        if degree is None:
            degree = d
        elif d != degree:
            return NOT_HOMOGENEOUS
    return EVERY_DEGREE if degree is None else degree


def homogeneous_components(p: Poly, w: WeightSystem) -> dict[int, Poly]:
    """Split ``p`` into weight-homogeneous pieces, keyed by weighted degree."""
    buckets: dict[int, dict[Monomial, Fraction]] = {}
    for mon, c in p._terms.items():
        buckets.setdefault(w.degree(mon), {})[mon] = c
    return {d: _raw(buckets[d]) for d in sorted(buckets)}


@dataclass(frozen=True)
class GradedBasis:
    """All monomials of one weighted degree, in (a, b)-lex order."""

    degree: int
    monomials: tuple[Monomial, ...]


def monomials_of_degree(w: WeightSystem, degree: int) -> GradedBasis:
    """Exhaustive lex-ordered list of solutions of w1*a + w2*b = degree."""
    found = []
    if degree >= 0:
        for a in range(degree // w.w1 + 1):
            rest = degree - a * w.w1
            if rest % w.w2 == 0:
                found.append((a, rest // w.w2))
    return GradedBasis(degree, tuple(found))


# -- expression grammar ----------------------------------------------------
#
# expr   := ['-'] term (('+'|'-') term)*
# term   := coeff ('*' factor)* | factor ('*' factor)*
# factor := 'x' ['^' uint] | 'y' ['^' uint]
# coeff  := uint ['/' uint]
# Whitespace is insignificant.  A leading '-' before a bare factor term is
# accepted (read as coefficient -1).


def parse_poly(text: str) -> Poly:
    parser = _Parser(text.replace("−", "-"))
    return parser.parse()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> Poly:
        result = Poly.zero()
        sign = 1
        if self._peek() == "-":
            self.pos += 1
            sign = -1
        result = result + self._term().scale(sign)
        while True:
            ch = self._peek()
            if ch is None:
                return result
            if ch == "+":
                self.pos += 1
                result = result + self._term()
            elif ch == "-":
                self.pos += 1
                result = result - self._term()
            else:
                self._fail("expected '+' or '-'")

    def _term(self) -> Poly:
        ch = self._peek()
        if ch is None:
            self._fail("expected a term")
        if ch.isdigit():
            p = Poly.constant(self._coeff())
        elif ch in "xy":
            p = self._factor()
        else:
            self._fail("expected a coefficient, 'x' or 'y'")
        while self._peek() == "*":
            self.pos += 1
            p = p * self._factor()
        return p

    def _factor(self) -> Poly:
        ch = self._peek()
        if ch not in ("x", "y"):
            self._fail("expected 'x' or 'y'")
        self.pos += 1
        exp = 1
        if self._peek() == "^":
            self.pos += 1
            nxt = self._peek()
            if nxt == "-":
                self._fail("negative exponent")
            exp = self._uint()
        return Poly.monomial(exp if ch == "x" else 0, exp if ch == "y" else 0)

    def _coeff(self) -> Fraction:
        num = self._uint()
        if self._peek() == "/":
            self.pos += 1
            den = self._uint()
            if den == 0:
                self._fail("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def _uint(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self._fail("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def _peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def _fail(self, message: str):
        raise PolyParseError(message, self.pos)


def render_monomial(mon: Monomial) -> str:
    a, b = mon
    if a == 0 and b == 0:
        return "1"
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


def render_poly(p: Poly) -> str:
    """Canonical string form; round-trips through parse_poly."""
    if p.is_zero():
        return "0"
    chunks = []
    for mon, c in p.items():
        neg = c < 0
        mag = -c if neg else c
        if mon == (0, 0):
            body = str(mag)
        elif mag == 1:
            body = render_monomial(mon)
        else:
            body = f"{mag}*{render_monomial(mon)}"
        if not chunks:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(chunks)


# -- exact dense linear algebra ---------------------------------------------


@dataclass
class LinearSolution:
    """Result of an exact solve: rank, consistency, one particular solution
    (free variables set to zero), and a nullspace basis."""

    rank: int
    consistent: bool
    particular: list[Fraction] | None
    nullspace: list[list[Fraction]]


def solve_linear_exact(
    matrix: Sequence[Sequence[Rational]],
    rhs: Sequence[Rational] | None = None,
) -> LinearSolution:
    """Gauss-Jordan elimination with full fraction arithmetic.

    Pivot choice is deterministic: columns are scanned left to right and
    the first remaining row with a nonzero entry is the pivot.  Returns
    exact results; an inconsistent system is flagged, never approximated.
    """
    rows = [[Fraction(v) for v in row] for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    for row in rows:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    b = [Fraction(v) for v in rhs] if rhs is not None else None
    if b is not None and len(b) != nrows:
        raise ValueError("rhs length mismatch")

    pivot_cols: list[int] = []
    piv_row = 0
    for col in range(ncols):
        found = None
        for r in range(piv_row, nrows):
            if rows[r][col]:
                found = r
                break
        if found is None:
            continue
        if found != piv_row:
            rows[piv_row], rows[found] = rows[found], rows[piv_row]
            if b is not None:
                b[piv_row], b[found] = b[found], b[piv_row]
        inv = 1 / rows[piv_row][col]
        rows[piv_row] = [v * inv for v in rows[piv_row]]
        if b is not None:
            b[piv_row] *= inv
        for r in range(nrows):
            if r != piv_row and rows[r][col]:
                f = rows[r][col]
                prow = rows[piv_row]
                rows[r] = [v - f * pv for v, pv in zip(rows[r], prow)]
                if b is not None:
                    b[r] -= f * b[piv_row]
        pivot_cols.append(col)
        piv_row += 1
        if piv_row == nrows:
            break

    rank = len(pivot_cols)
    consistent = True
    particular = None
    if b is not None:
        for r in range(rank, nrows):
            if b[r]:
                consistent = False
                break
        if consistent:
            particular = [Fraction(0)] * ncols
            for i, col in enumerate(pivot_cols):
                particular[col] = b[i]

    pivot_set = set(pivot_cols)
    nullspace = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, col in enumerate(pivot_cols):
            vec[col] = -rows[i][free]
        nullspace.append(vec)

    return LinearSolution(rank, consistent, particular, nullspace)


# -- exact sparse elimination ------------------------------------------------
#
# The jet-space solves and the brute-force oracle produce very sparse,
# nearly banded systems with a few hundred columns.  Dense elimination is
# quadratic overkill there; this echelon form keeps rows as dicts,
# processes columns in the caller-supplied order and records the row
# operations so any number of right-hand sides can be solved afterwards.


class SparseEchelon:
    """Row echelon form of a sparse column set with replayable row ops."""

    def __init__(self, columns: Sequence[tuple[object, dict]], record_ops: bool = True):
        rows: dict[object, dict] = {}
        col_rows: dict[object, set] = {}
        order = []
        for colkey, colvec in columns:
            order.append(colkey)
            for rowkey, val in colvec.items():
                if val:
                    rows.setdefault(rowkey, {})[colkey] = Fraction(val)
                    col_rows.setdefault(colkey, set()).add(rowkey)

        used: set = set()
        pivots: list[tuple[object, object]] = []
        ops: list[tuple[object, object, Fraction]] = []
        for colkey in order:
            support = col_rows.get(colkey)
            if not support:
                continue
            candidates = [rk for rk in support if rk not in used]
            if not candidates:
                continue
            pk = min(candidates, key=lambda rk: (len(rows[rk]), rk))
            used.add(pk)
            pivots.append((colkey, pk))
            prow = rows[pk]
            pval = prow[colkey]
            for rk in candidates:
                if rk == pk:
                    continue
                row = rows[rk]
                factor = row[colkey] / pval
                if record_ops:
                    ops.append((rk, pk, factor))
                for ck2, av in prow.items():
                    new = row.get(ck2, _ZERO) - factor * av
                    if new:
                        row[ck2] = new
                        col_rows.setdefault(ck2, set()).add(rk)
                    else:
                        if ck2 in row:
                            del row[ck2]
                        col_rows[ck2].discard(rk)

        self._rows = rows
        self._pivots = pivots
        self._pivot_rows = {rk: ck for ck, rk in pivots}
        self._ops = ops if record_ops else None

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def solve(self, rhs: Mapping[object, Rational]) -> dict | None:
        """One exact solution (free variables zero), or None if inconsistent."""
        if self._ops is None:
            raise RuntimeError("echelon was built without recorded row operations")
        vec = {rk: Fraction(v) for rk, v in rhs.items() if v}
        for target, src, factor in self._ops:
            sv = vec.get(src)
            if sv:
                new = vec.get(target, _ZERO) - factor * sv
                if new:
                    vec[target] = new
                else:
                    vec.pop(target, None)
        for rk, val in vec.items():
            if val and rk not in self._pivot_rows:
                return None
        solution: dict = {}
        for colkey, rk in reversed(self._pivots):
            row = self._rows[rk]
            val = vec.get(rk, _ZERO)
            for ck2, av in row.items():
                if ck2 == colkey:
                    continue
                xv = solution.get(ck2)
                if xv:
                    val -= av * xv
            val /= row[colkey]
            if val:
                solution[colkey] = val
        return solution


def sparse_rank(columns: Sequence[tuple[object, dict]]) -> int:
    return SparseEchelon(columns, record_ops=False).rank
