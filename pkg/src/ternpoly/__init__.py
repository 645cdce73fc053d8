"""Heights and diameters of ternary inclusion-exclusion polynomials."""

from .errors import (
    DegreeCapExceeded,
    EngineFault,
    InvalidTripleError,
    NotConformingError,
    NotInvertibleError,
    OutOfDomainError,
    SearchCapExceeded,
    TernpolyError,
)
from .triple import Triple
from .modmath import crt_decompose, is_prime, lnr, mod_inverse, next_prime_in_progression
from .oracle import CoeffVector, HeightProfile, profile_from_coeffs, q_poly_coeffs
from .engine import ChiContext, chi, chi_via_delta, coeff_array, coeff_stream, profile_stream
from .theorem3 import CaseClassification, check_conforming, classify_case, derive_params, predict_profile
from .solvers import (
    Witness,
    achievable_diameters,
    find_p_for_odd_diameter,
    solve_diameter_for_p,
    solve_height,
    verify_witness,
)
from .audit import AuditReport, SumSpec, audit_lemma, check_L1, count_window_multiples, s_sum

__version__ = "0.1.0"
