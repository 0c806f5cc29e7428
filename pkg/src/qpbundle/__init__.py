"""Exact symbolic kernel for circle-graded *-algebra bundles.

The package represents q-commutation *-algebras with deterministic
normal forms, integer gradings standing in for circle coactions,
balanced tensor subalgebras of two compatibly graded factors, and
strong connection forms together with the verification machinery for
their axioms, composition, and closed-form expansions.
"""

from .scalar import LaurentScalar, ONE, ZERO, binomial, render_scalar
from .skewalg import (
    AlgebraElement,
    AlgebraPresentation,
    ConfluenceReport,
    PresentationError,
    check_local_confluence,
    monomial_key,
    render_element,
    tensor_presentation,
)
from .comodule import (
    CoactionSpec,
    GroupCoalgebraElement,
    ShapeError,
    TensorElement,
    alg_slot,
    antipode,
    check_bicomodule,
    coalg_slot,
    comultiply,
    coseparability_retraction,
    counit,
    left_coact,
    render_tensor,
    right_coact,
    tensor_apply,
    tensor_concat,
    tensor_mul,
    tensor_of,
)
from .cotensor import (
    CotensorAlgebra,
    EntwiningMap,
    canonical_entwining,
    check_entwined_module,
    check_entwining_axioms,
    coinvariants_basis,
    entwine,
    entwine_at,
    entwine_inverse,
    multiply_adjacent,
)
from .connection import (
    ConnectionForm,
    balance_split_holds,
    balance_total_holds,
    check_h_balance,
    compose_connection,
    composed_closed_form,
    composed_generator_form,
    inverse_canonical_representative,
    lifted_canonical_map,
    matsumoto_connection,
    mixed_cotensor_generators,
    verify_strong_connection,
    verify_translation_identities,
)
from .report import CheckResult, Report

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AlgebraPresentation",
    "CheckResult",
    "CoactionSpec",
    "ConfluenceReport",
    "ConnectionForm",
    "CotensorAlgebra",
    "EntwiningMap",
    "GroupCoalgebraElement",
    "LaurentScalar",
    "ONE",
    "PresentationError",
    "Report",
    "ShapeError",
    "TensorElement",
    "ZERO",
    "alg_slot",
    "antipode",
    "balance_split_holds",
    "balance_total_holds",
    "binomial",
    "canonical_entwining",
    "check_bicomodule",
    "check_entwined_module",
    "check_entwining_axioms",
    "check_h_balance",
    "check_local_confluence",
    "coalg_slot",
    "coinvariants_basis",
    "compose_connection",
    "composed_closed_form",
    "composed_generator_form",
    "comultiply",
    "coseparability_retraction",
    "counit",
    "entwine",
    "entwine_at",
    "entwine_inverse",
    "inverse_canonical_representative",
    "left_coact",
    "lifted_canonical_map",
    "matsumoto_connection",
    "mixed_cotensor_generators",
    "monomial_key",
    "multiply_adjacent",
    "render_element",
    "render_scalar",
    "render_tensor",
    "right_coact",
    "tensor_apply",
    "tensor_concat",
    "tensor_mul",
    "tensor_of",
    "tensor_presentation",
    "verify_strong_connection",
    "verify_translation_identities",
]
