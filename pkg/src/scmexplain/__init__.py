"""Finite-domain structural causal models with sufficient and counterfactual
explanations, actual causation and path-specific fairness."""

from .budget import DEFAULT_BUDGET, Budget
from .causation import (actual_cause, can_replace, direct_cause, enumerate_actual_causes,
                        optimal_cause)
from .errors import (BudgetExceeded, Diagnostic, DomainError, ModelError, ParseError,
                     QueryError, SCMError)
from .explanations import (counterfactually_depends, good_counterfactual_explanations,
                           good_sufficient_explanations, is_sufficient_explanation)
from .fairness import is_fair, standardly_counterfactually_fair
from .lang import load_fixture, parse_formula, parse_model, serialize_model
from .model import (AutoDomain, CausalFormula, CausalModel, evaluate, holds_universally,
                    intervene, solve)
from .results import Refutation
from .sufficiency import directly_sufficient, strongly_sufficient, weakly_sufficient

__version__ = "0.1.0"
