"""Exact divided-difference calculus on quadratic and q-quadratic lattices.

Everything in this package is computed over exact rationals: lattices and
their derived sequences, the divided-difference and averaging operators,
polynomial solutions of the associated Sturm-Liouville type equations,
the named families (Wilson, continuous dual Hahn, Askey-Wilson and its
subfamilies), and the structure-relation coefficient windows that
characterize them.  Identities are verified to literal zero, never to a
numerical tolerance.
"""

from .bochner import (
    AuxPolynomial,
    ClassifiedFamily,
    FamilyTag,
    SLData,
    build_solution,
    classify,
    lambda_for,
    sigma_aux,
    solve_dk,
    solve_symmetric,
    verify_sl,
)
from .divdiff import OperatorContext, apply_D, apply_D_pow, apply_M, apply_S
from .errors import (
    ClassificationScopeError,
    DegenerateParameterError,
    ExpansionError,
    InvalidLatticeError,
    NormalFormError,
    QLatticeError,
)
from .families import (
    FamilySpec,
    al_salam_chihara,
    askey_wilson,
    aw_C,
    classical_monic_family,
    continuous_big_q_hermite,
    continuous_dual_hahn,
    continuous_dual_q_hahn,
    continuous_q_hermite,
    lattice_for,
    monic_family,
    sl_data_for,
    ttrr_coeffs,
    verify_contiguous,
    wilson,
    wilson_A,
    wilson_C,
)
from .lattice import Lattice, LatticeConstants
from .poly import (
    NewtonBasisSpec,
    Polynomial,
    expand_in_sequence,
    interpolate,
    k_basis_poly,
    newton_basis_poly,
    pochhammer,
    q_pochhammer,
)
from .structure import (
    CoefficientReport,
    SurrogateReport,
    aw_second_closed_form,
    derivative_ttrr_surrogate,
    first_structure,
    pi_poly,
    second_structure,
    verify_m_operator,
    wilson_first_closed_form,
    wilson_second_closed_form,
)

__version__ = "0.1.0"
