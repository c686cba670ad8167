# %% [markdown]
# # Automorphisms and fixed points
#
# A parameter-free definition is preserved by every automorphism, so it is
# worth seeing which elements every automorphism fixes.

# %%
from heisenfield import HGroup, enumerate_autos, field_make, fixed_tuples, swap_map, wrap
from heisenfield.autos import is_automorphism

for p in (2, 3):
    G = wrap(HGroup(field_make("prime", p)))
    autos = enumerate_autos(G)
    fixed = fixed_tuples(G, autos, 1)
    print(f"GF({p}): |Aut| = {len(autos)}, fixed elements:",
          [str(G.label(x)) for (x,) in sorted(fixed)])

# %% [markdown]
# Over GF(2) the central element h(0,0,1) is the only non-trivial central
# element, so every automorphism fixes it. Over GF(3) only the identity survives.

# %%
G = wrap(HGroup(field_make("prime", 3)))
s = swap_map(G)
print("h(a,b,c) -> h(b,a,ab-c) is an automorphism:", is_automorphism(G, s))
