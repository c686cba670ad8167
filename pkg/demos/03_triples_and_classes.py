# %% [markdown]
# # A field without parameters
#
# Instead of fixing a pair, take all triples (u, v, x) with u, v not commuting
# and x central, glue them with the transfer maps, and read off the classes.

# %%
from heisenfield import HGroup, biinterp_k, domain_d, field_make, quotient, sim, wrap

G = wrap(HGroup(field_make("prime", 2)))
D = domain_d(G)
print("|D| =", len(D))

# %%
t = D[0]
same = [s for s in D if sim(G, t, s)]
print("class of", t, "has", len(same), "members")

# %%
q = quotient(G, exhaustive=True)
print("classes:", q.order, " sizes:", q.class_sizes)
print("checks:", {k: v for k, v in q.checks.items() if k != "violations"})
print("isomorphic to GF(2):", q.isomorphism_from(field_make("prime", 2)) is not None)

# %%
# Going the other way: GF(5) -> H(GF(5)) -> classes of triples, and the map k.
r = biinterp_k(field_make("prime", 5))
print("k:", {str(a): c for a, c in r.k.items()}, " ok:", r.ok)

# %%
# Over the rationals the check runs on a finite sample.
r = biinterp_k(field_make("rationals"), sample=32)
print("Q sample:", r.checked, " ok:", r.ok)
a = list(r.k)[-1]
print(f"k({a}) =", r.k[a])
