"""Fields recovered from their Heisenberg groups, with exhaustive checks.

Build H(F) for a finite field or the rationals, treat it as a black-box
group, recover F from a non-commuting pair of parameters, move between the
copies recovered from different pairs, and glue them into one
parameter-free interpretation of F.
"""

__version__ = "0.1.0"

from .errors import (AbelianGroupError, BudgetExhausted, CommutingPairError, ContextMismatch,
                     CopyIsoError, FieldError, FormulaError, HeisenfieldError,
                     HypothesisViolation, InterpretationError, NotAGroupError, NotCentralError,
                     SizeBoundError)
from .fields import FieldCtx, FieldElem, field_make, parse_field_spec
from .heisenberg import HElem, HGroup, commutator, delta, h, is_central, theta
from .bbox import (CopyIso, LazyGroup, TableGroup, first_noncommuting_pair, from_json, load,
                   relabel, wrap)
from .maltsev import RecoveredField, g_iso, mal_mul, phi, recover
from .transfer import FieldFamily, check_functorial, check_psi_laws, f_transfer, psi
from .interp import (InterpTriple, Interpretation, QuotientField, biinterp_k, domain_d,
                     heisenberg_in_field, not_odot, not_oplus, not_sim, odot, oplus, quotient,
                     sim)
from .autos import (Automorphism, enumerate_autos, fixed_tuples, invariance_violations,
                    rigidity_report, swap_map)
