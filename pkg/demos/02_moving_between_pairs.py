# %% [markdown]
# # One field per parameter pair, and the maps between them
#
# Every non-commuting pair gives its own field on the same center. The
# transfer map sends x to x * [u', v'] computed in the first field.

# %%
from heisenfield import CopyIso, FieldFamily, HGroup, check_functorial, field_make, psi
from heisenfield import relabel, wrap
from heisenfield.bbox import noncommuting_pairs

G = wrap(HGroup(field_make("prime", 3)))
pairs = noncommuting_pairs(G)
print(len(pairs), "non-commuting pairs")

# %%
fam = FieldFamily(G)
s, d = pairs[0], pairs[100]
print("units:", fam.field(*s).one, fam.field(*d).one)
for x in fam.field(*s).elements:
    print(G.label(x), "->", G.label(fam.transfer(s, d, x)))

# %%
# Identity and composition laws over a handful of pairs.
rep = check_functorial(G, pairs[::40])
print({k: rep[k] for k in ("pairs", "checked", "ok")})

# %%
# An isomorphism between two relabelled copies induces one between their fields.
g1, a = relabel(G, 1)
g2, b = relabel(G, 2)
p = a.inverse().compose(b)
q = psi(g1, p, g2)
print("induced field map:", q)

# %%
# A map that is not a homomorphism is refused.
bad = p.array.copy()
bad[[1, 2]] = bad[[2, 1]]
try:
    psi(g1, CopyIso(g1, g2, bad), g2)
except Exception as exc:
    print(type(exc).__name__, exc)
