"""Exact Poisson cohomology of plane Poisson structures f*(1+h) dx^dy.

Computes HP^0..HP^2 with explicit bases, normalizes cocycles to those
bases, produces the full Gerstenhaber structure (wedge and bracket
tables, generators-and-relations presentation), and verifies everything
against a brute-force linear-algebra oracle and the ADE catalog.
"""

from .polyring import (
    EVERY_DEGREE,
    NOT_HOMOGENEOUS,
    GradedBasis,
    Monomial,
    Poly,
    PolyParseError,
    Rational,
    WeightSystem,
    homogeneous_components,
    monomials_of_degree,
    parse_poly,
    render_poly,
    solve_linear_exact,
    weighted_degree,
)
from .polyvector import (
    Bivector,
    VectorField,
    WedgeDegreeError,
    apply,
    divergence,
    euler,
    hamiltonian,
    poisson_differential,
    sn_bracket,
    wedge,
)
from .milnor import (
    JacobianDecomposition,
    MilnorBasis,
    NotFiniteCodimensionError,
    NotWeightHomogeneousError,
    PSpaceBasis,
    jacobian_decompose,
    milnor_basis,
    p_space,
)
from .cohomology import (
    HP1Class,
    HP2Class,
    JetOrderError,
    NotACocycleError,
    PoissonStructure,
    StructureError,
    hp_dimensions,
    is_coboundary_hp2,
    lemma31,
    make_structure,
    normalize_hp1,
    normalize_hp2_pi,
    normalize_hp2_pi0,
)
from .oracle import DimensionReport, graded_dims, jet_dims, oracle_bracket_check

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
