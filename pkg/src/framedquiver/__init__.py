"""Exact invariants of framed quiver moduli, with finite-field oracles and Hall algebras."""
from .chow import ChowClass, ChowRing, FormalSeries, delta_quotient_expand, delta_schur, lr_coefficient, series_invert
from .errors import (
    CyclicQuiver,
    EmptyModuli,
    FramedQuiverError,
    NonDivisibleCount,
    NonUnitConstantTerm,
    NotASubrepresentation,
    SearchSpaceTooLarge,
    UnknownIsoClass,
    ValidationError,
)
from .ffrep import (
    FramedPair,
    GradedSubspace,
    Rep,
    an_orbit_count,
    build_injective_sum,
    count_moduli_points,
    gr_subrep_count,
    is_projective,
    is_stable,
    is_stable_slope,
    iso_classes,
)
from .hall import HallAlgebra, ModifiedHallElement, SqrtQScalar, XnSpace, eta, kernel_basis, modified_product
from .moduli import ModuliSpec, betti_numbers, chow_basis, dimension, is_nonempty, poincare_polynomial, tower
from .qpoly import IntPoly, qbinomial
from .quiver import Quiver, euler_form, kronecker_quiver, linear_quiver, path_counts, sym_form, validate

__version__ = "0.1.0"
