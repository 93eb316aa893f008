"""Exact computations with Rota-Baxter systems over the rationals.

Algebras are given by structure constants; every scalar is a Fraction, so all
checks are exact.
"""
from .algebra import Algebra, Bimodule, canonical_bimodule, jackson_example, validate_model
from .cohomology import Cochain, cohomology_dimensions, derived_bracket, mc_defect
from .deformation import DeformationSeries, extend_step, obstruction_cocycle
from .errors import (HypothesisError, InputError, ModelParseError, ModelSemanticError,
                     NotRotaBaxterError, RBSError, TruncationError)
from .model import ModelDocument, emit_model, parse_model, parse_text
from .rbs import RBSPair, graph_subalgebra_check, grbs_defect, nijenhuis_lift_check

__version__ = "0.1.0"

__all__ = [
    "Algebra", "Bimodule", "canonical_bimodule", "jackson_example", "validate_model",
    "Cochain", "cohomology_dimensions", "derived_bracket", "mc_defect",
    "DeformationSeries", "extend_step", "obstruction_cocycle",
    "HypothesisError", "InputError", "ModelParseError", "ModelSemanticError",
    "NotRotaBaxterError", "RBSError", "TruncationError",
    "ModelDocument", "emit_model", "parse_model", "parse_text",
    "RBSPair", "graph_subalgebra_check", "grbs_defect", "nijenhuis_lift_check",
]
