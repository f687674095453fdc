"""Floating-point holonomy laboratory.

Integrates the variational system along explicit loops in the punctured
w-line, computes holonomy jets and the iterated loop integrals, and
cross-validates the closed-form coefficient formulas of the exact half.
"""

from .loops import Arc, Line, Loop, LoopSystem, build_loops, concat
from .jets import HolonomyJet, commutator, compose, identity_jet, invert, jet_distance
from .holonomy import FloatModel, QuadratureBundle, float_model, integrate_quadratures, integrate_variations
from .checks import run_numeric_verification, verify_integral_lemmas, verify_variation_formulas

__all__ = [
    "Line",
    "Arc",
    "Loop",
    "LoopSystem",
    "build_loops",
    "concat",
    "HolonomyJet",
    "identity_jet",
    "compose",
    "invert",
    "commutator",
    "jet_distance",
    "FloatModel",
    "float_model",
    "QuadratureBundle",
    "integrate_variations",
    "integrate_quadratures",
    "verify_variation_formulas",
    "verify_integral_lemmas",
    "run_numeric_verification",
]
