# %% [markdown]
# # Recovering a field from its Heisenberg group
#
# Build H(GF(5)), scramble its element ids, then get GF(5) back from the
# scrambled multiplication table alone.

# %%
from heisenfield import HGroup, field_make, phi, relabel, wrap

F = field_make("prime", 5)
G = wrap(HGroup(F))
print(G, "order", G.order)

# %%
# A seeded relabelling: same group, ids permuted. Nothing downstream looks at labels.
copy, iso = relabel(G, seed=7)
print("first row of the scrambled table:", copy.table[0][:10].tolist(), "...")

# %%
# phi picks the first non-commuting pair (u, v) and reads a field off the center.
rf = phi(copy)
print("parameters:", rf.params, " zero:", rf.zero, " one:", rf.one)
print("field elements (ids in the copy):", rf.elements)

# %%
# Its multiplication comes from commutator witnesses, not from any labels.
for row in rf.table:
    print(row)

# %%
print("axiom violations:", rf.axiom_violations())
k = rf.isomorphism_from(F)
print("isomorphism GF(5) -> recovered:", {str(a): x for a, x in k.items()})
