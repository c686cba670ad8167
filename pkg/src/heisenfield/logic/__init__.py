"""Existential formulas, their evaluation in finite structures, and parameter removal."""

from .engine import Evaluator, NaiveEvaluator, evaluate, evaluator, solutions
from .library import builtin_formulas
from .structure import FinStructure, from_group
from .syntax import (And, App, Const, Eq, Exists, Formula, Not, Or, Rel, Var, expand,
                     format_library, free_vars, is_sigma1, parse, parse_library)

eval = evaluate
