# %% [markdown]
# # Existential formulas over the group language
#
# Everything above can be written as existential formulas in the language
# of groups. Here they are evaluated directly on a multiplication table.

# %%
from heisenfield import HGroup, field_make, wrap
from heisenfield.bbox import first_noncommuting_pair
from heisenfield.logic import builtin_formulas, evaluate, from_group, parse, solutions
from heisenfield.logic.oracle import oracle_check

G = wrap(HGroup(field_make("prime", 3)))
S = from_group(G)
lib = builtin_formulas()
print(sorted(lib))

# %%
f = parse("(lambda (x) (exists (w) (= (mul x w) (e))))")
print("every element has an inverse:", len(solutions(S, f)) == G.order)

# %%
u, v = first_noncommuting_pair(G)
print("u, v commute?", not evaluate(S, lib["noncomm"], [u, v], defs=lib))
center = solutions(S, lib["center"], {"u": u, "v": v}, defs=lib)
print("center seen through (u, v):", [str(G.label(x)) for (x,) in sorted(center)])

# %%
# Compare each formula with the hand-coded operation on a small host.
rep = oracle_check(wrap(HGroup(field_make("prime", 2))), names=["noncomm", "center", "otimes", "D"])
for name, r in rep.items():
    print(f"{name:8s} tuples {r['tuples']:6d}/{r['total']:<6d} mismatches {len(r['mismatches'])}")
