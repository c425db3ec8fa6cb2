"""Random model generation, the definitional oracle and theorem checks."""

from .generator import RNG_NAME, GeneratorConfig, random_model
from .theorems import THEOREMS, TheoremReport, check_theorem, replay

__all__ = ["RNG_NAME", "GeneratorConfig", "random_model", "THEOREMS", "TheoremReport",
           "check_theorem", "replay"]
