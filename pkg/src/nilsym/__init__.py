"""Exact symplectic-structure decisions for nilpotent Lie algebras."""

from .algebra import (
    CharSeq,
    LieAlgebra,
    Subspace,
    ValidationReport,
    center,
    change_basis,
    characteristic_sequence,
    derived_algebra,
    direct_sum,
    generators_count,
    is_nilpotent,
    lower_central_series,
    nilindex,
    split_abelian_factor,
    upper_central_series,
    validate,
)
from .errors import (
    InvalidAlgebraError,
    MalformedInputError,
    NilsymError,
    NoLimitError,
    NotNilpotentError,
    SizeLimitError,
    StructureError,
)
from .exterior import (
    PForm,
    cartan_class,
    ce_differential,
    cohomology_dims,
    d_matrix,
    gram,
    is_nondegenerate,
    pfaffian,
    wedge,
)
from .poly import ParamPoly
from .symplectic import (
    SymplecticCertificate,
    central_series_obstruction,
    closed_two_forms,
    decide_symplectic,
    exact_symplectic_scan,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
