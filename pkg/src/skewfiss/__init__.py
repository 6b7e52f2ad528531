"""Exact-arithmetic toolkit for 4-class skew-symmetric association schemes."""

from .exactnum import (
    ComplexSurd,
    Rational,
    SurdSum,
    as_integer,
    squarefree_part,
    surd_sign,
    surd_sqrt,
)
from .scheme_core import (
    AssociationScheme,
    AxiomReport,
    IntersectionTensor,
    SchemeError,
    SchemeParseError,
    FusionError,
    fuse,
    imprimitive_blocks,
    intersection_tensor,
    is_skew_symmetric,
    load_scheme,
    save_scheme,
    symmetrize,
    verify_axioms,
)
from .spectra import (
    TYPE_I,
    TYPE_II,
    TYPE_III,
    CharacterTable,
    ConferenceEntry,
    ConsistencyError,
    FissionCandidate,
    InfeasibleError,
    KreinTensor,
    SrgParams,
    character_table,
    check_orthogonality,
    conference_table,
    corollary_filters,
    intersection_matrices_closed_form,
    make_candidate,
    p_from_table,
    q_from_table,
    srg_derive,
    type3_auxiliary,
)
from .constructions import (
    Cyc4ClosedForm,
    FiniteField,
    TwoSquares,
    conference_params,
    cyc4_closed_form,
    cyc_skew_predicate,
    cyclotomic_number,
    cyclotomic_scheme,
    field_build,
    johnson2_params,
    johnson2_scheme,
    two_squares,
    wreath,
)
from .feasibility import (
    Classification,
    ClassificationError,
    ScanRecord,
    classify_scheme,
    conference_scan,
    fission_scan,
    imprimitive_scan,
    johnson_scan,
    scan_srg,
    srg_candidates,
)

__version__ = "0.1.0"
