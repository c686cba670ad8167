# %% [markdown]
# # Removing parameters
#
# Given formulas with parameters plus a formula for their orbit and for the
# isomorphisms between copies, build the parameter-free version and check
# every hypothesis it needs.

# %%
from heisenfield import HGroup, HypothesisViolation, field_make, wrap
from heisenfield.bbox import first_noncommuting_pair, noncommuting_pairs
from heisenfield.logic import from_group, parse
from heisenfield.logic.params import broken_psi_datum, maltsev_datum, remove_parameters

G = wrap(HGroup(field_make("prime", 2)))
res = remove_parameters(from_group(G), maltsev_datum(first_noncommuting_pair(G)))
print(res.report)
print("classes:", [sorted(c)[:2] for c in res.partition()])

# %%
# A psi that is the identity on a copy but inversion between copies breaks
# composition once three copies are in play and inversion moves the center.
G3 = wrap(HGroup(field_make("prime", 3)))
pairs = noncommuting_pairs(G3)[:3]
bad = broken_psi_datum(pairs[0])
bad.orbit = parse("(lambda (u v) (or " + " ".join(
    f"(and (= u #{a}) (= v #{b}))" for a, b in pairs) + "))")
try:
    remove_parameters(from_group(G3), bad)
except HypothesisViolation as exc:
    print("rejected:", exc.condition, exc.violations[0])
