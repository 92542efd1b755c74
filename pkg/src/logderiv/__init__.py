"""Exact computation of logarithmic derivation modules of hyperplane
arrangements: membership quotients, graded pieces, Saito's criterion,
canonical equation systems with their generator sets, contact-value
constraints, and critical-point machinery.  All arithmetic is rational and
exact; nothing here ever rounds.
"""

from .arrangement import (
    Arrangement,
    ArrangementError,
    ChangeOfBasis,
    Circuit,
    DuplicateHyperplaneError,
    Flat,
    FormatError,
    LinearForm,
    NonEssentialError,
    circuits,
    defining_polynomial,
    intersection_lattice,
    is_canonical,
    load_arrangement,
    point_in_complement,
    render_arrangement,
    subset_rank,
    to_canonical,
    verify_lattice_bijection,
)
from .constraints import (
    AssociatedField,
    ConstraintRow,
    ConstraintSpace,
    ContactTable,
    CriticalPointCheck,
    CriticalSearchResult,
    MonomialDecomposition,
    TransportResult,
    associated_field,
    constraint_space,
    contact_table,
    exterior_constraints,
    hidden_constraint,
    interior_constraints,
    monomial_decomposition,
    search_critical_points,
    transport_derivation,
    verify_critical_point,
)
from .derivations import (
    Derivation,
    FreenessReport,
    GradedBasis,
    KTuple,
    NotLogarithmicError,
    SaitoResult,
    apply_derivation,
    basis_shift,
    euler_derivation,
    euler_multiple_dimension,
    find_free_basis,
    graded_component,
    is_logarithmic,
    k_vector,
    load_derivation,
    render_derivation,
    saito_check,
    zero_derivation,
)
from .poly import Polynomial, monomials_of_degree, reduce_mod_linear
from .syzygy import (
    GeneratorSet,
    NonCanonicalError,
    SolutionTuple,
    SyzygySystem,
    build_system,
    canonical_generators,
    complete_solution,
    derivation_from_k,
    split_wrt_hyperplane,
    verify_solution,
)
from .ziegler import (
    ZieglerFixtureError,
    emit_ziegler_fixture,
    ziegler_arrangement,
    ziegler_derivation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
