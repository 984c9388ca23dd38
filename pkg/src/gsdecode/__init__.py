"""Guruswami-Sudan list decoding of Reed-Solomon codes over GF(2^m).

Finite-field and polynomial arithmetic, Groebner bases of interpolation
modules, interpolation by randomized ideal multiplication with optional
re-encoding, an end-to-end list decoder, and a benchmark CLI.
"""

from .field import DEFAULT_PRIMITIVE_POLY, DegreeOutOfRange, GF2m, NotPrimitive
from .unipoly import DuplicateAbscissa, UniPoly, uni_mul
from .bipoly import (
    BiPoly,
    Monomial,
    TermOrder,
    ZeroPolynomial,
    bi_add_scaled,
    bi_mul,
    bi_mul_uni,
)
from .modulebasis import (
    InterpPoints,
    NotGroebnerShape,
    PolyBasis,
    PreconditionViolated,
    VerifyResult,
    iia,
    lee_osullivan,
    reduce_extend,
    verify_ideal_basis,
    verify_module_basis,
)
from .interpolation import (
    FallbackExhausted,
    InexactDivision,
    InterpolationStats,
    MergeStats,
    RngStream,
    back_substitute,
    initial_product_basis,
    interpolate,
    merge,
    prune,
    reencode_interpolate,
    reencode_threshold,
)
from .decoder import (
    ALGORITHMS,
    CodeSpec,
    DecodeResult,
    DegreeTooHigh,
    GsParams,
    agreement,
    encode,
    gs_params,
    list_decode,
    y_roots,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BiPoly",
    "CodeSpec",
    "DEFAULT_PRIMITIVE_POLY",
    "DecodeResult",
    "DegreeOutOfRange",
    "DegreeTooHigh",
    "DuplicateAbscissa",
    "FallbackExhausted",
    "GF2m",
    "GsParams",
    "InexactDivision",
    "InterpPoints",
    "InterpolationStats",
    "MergeStats",
    "Monomial",
    "NotGroebnerShape",
    "NotPrimitive",
    "PolyBasis",
    "PreconditionViolated",
    "RngStream",
    "TermOrder",
    "UniPoly",
    "VerifyResult",
    "ZeroPolynomial",
    "agreement",
    "back_substitute",
    "bi_add_scaled",
    "bi_mul",
    "bi_mul_uni",
    "encode",
    "gs_params",
    "iia",
    "initial_product_basis",
    "interpolate",
    "lee_osullivan",
    "list_decode",
    "merge",
    "prune",
    "reduce_extend",
    "reencode_interpolate",
    "reencode_threshold",
    "uni_mul",
    "verify_ideal_basis",
    "verify_module_basis",
    "y_roots",
]
