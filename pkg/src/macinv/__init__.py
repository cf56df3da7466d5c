"""Macaulay inverse systems and Artinian Gorenstein algebras of socle degree three."""

from ._backend import BACKEND
from .cubics import (
    BinaryCubicClass,
    TernaryCubicClass,
    TernaryType,
    aronhold_invariants,
    classify_binary_cubic,
    classify_ternary_cubic,
    discriminant,
    j_invariant,
    jacobian_scheme_profile,
    legendre_cubic,
    model_table,
)
from .errors import DomainError
from .grammar import ParseError, parse_dual, parse_jet, parse_poly
from .invsys import (
    AlgebraPresentation,
    IdealDescription,
    annihilator,
    derivative_span,
    hilbert_function,
    ideal_equal,
    ideal_from_generators,
    is_gorenstein,
    is_stable_subspace,
    perp,
    symmetric_hf_criterion,
    top_form_quotient,
)
from .linalg import InconsistentSystemError, Subspace
from .poly import DualPoly, Jet, contract, monomial_basis, pairing
from .socle3 import (
    AutMap,
    IsoDecision,
    IsoStatus,
    IsoWitness,
    NormalForm,
    aut_matrix,
    canonical_grading_witness,
    delta_matrix,
    grading_system,
    is_nondegenerate,
    iso_socle3,
    normalize_socle3,
    reduce_to_F2F3,
    unit_matrix,
    verify_iso,
    verify_iso_matrices,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
