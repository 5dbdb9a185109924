"""Finite profunctor calculus with monoidal, traced, autonomous and
*-autonomous structure, checked exhaustively on small categories."""

from .fincat import (
    Elem, FiniteCategory, Functor, Idempotent, Mor, Ob, StructuralError, ValidationReport,
    Violation, all_functors, cauchy_report, idempotents, identity_functor, is_full_and_faithful,
    karoubi_envelope, op_category, product_category, splitting, validate_category,
    validate_functor,
)
from .profcalc import (
    AdjunctionWitness, CoendPresentation, CoherenceError, NotRepresentable, Profunctor,
    Representation, TwoCell, check_adjunction, check_profunctor, check_two_cell, compose,
    compose_profunctors, embed_functor, find_representation, find_right_adjoint,
    hom_profunctor, identity_cell, induced_cell, invert, module_profunctor, natural_maps,
    structural_iso, vcompose, whisker_left, whisker_right,
)
from .monoidal import (
    MonoidalStructure, PseudomonoidInProf, check_pseudomonoid_laws, strict_structure,
    tensor_from_functions, to_pseudomonoid_in_prof, validate_balanced, validate_braided,
    validate_monoidal,
)
from .traced import (
    AxiomUniverse, TraceStructure, build_loop_coend, cat_level_verdict,
    check_traced_pseudomonoid, loop_coend, trace_from_function, trace_two_cell,
    validate_trace_axioms,
)
from .duality import (
    DualityStructure, check_gamma_invertible, check_nearly_tracing_axioms, compare_with_textbook,
    derive_trace, gamma_cells, nearly_trace, search_dualities, textbook_trace, twisted_trace,
    validate_autonomous,
)
from .staraut import (
    FrobeniusStageError, PreconditionError, RotationalTrace, StarAutonomousStructure,
    check_delta_invertible, check_left_par_trace, from_compact, rotate_trace, unrotate_trace,
    validate_star_autonomous, white_frobenius,
)
from .spec import SpecDocument, SpecError, build, generate_example, parse_spec, serialize
from .cli import RenderedReport, render_report, run_command

__version__ = "0.1.0"
